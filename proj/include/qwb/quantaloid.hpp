// Copyright 2026 The qwb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QWB_QUANTALOID_HPP_
#define QWB_QUANTALOID_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qwb/lattice.hpp"
#include "qwb/parallel.hpp"

namespace qwb {

using ObjId = int;

/// One failed law with a concrete witness.
struct LawViolation {
  std::string law;
  std::string witness;
};

struct ValidationReport {
  std::vector<LawViolation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// A finite monoid given by a multiplication table; the seed of a free
/// quantale.
struct Monoid {
  std::vector<std::string> elements;
  int unit = 0;
  std::vector<int> table;  // row-major: table[i*n+j] = i*j

  int size() const { return static_cast<int>(elements.size()); }
  int mul(int i, int j) const { return table[static_cast<size_t>(i) * elements.size() + static_cast<size_t>(j)]; }
  /// input_error when the table is not associative or the unit is wrong.
  void validate() const;
};

/// An arrow of a quantaloid: an element of the hom-lattice hom(dom, cod).
struct QArrow {
  ObjId dom = 0;
  ObjId cod = 0;
  Elt elt = 0;

  bool operator==(const QArrow&) const = default;
};

/// A finite Sup-enriched category: a complete hom-lattice per ordered object
/// pair and a composition that preserves joins in each argument separately.
///
/// Composition is stored as an explicit table for generic quantaloids but
/// computed on demand for the constructed families (2^N and Rel(S,S)), whose
/// tables would be quadratic in the hom size. Both paths must agree on
/// shared instances, which the tests check by materializing tables.
class Quantaloid {
 public:
  using ComposeFn =
      std::function<Elt(ObjId a, ObjId b, ObjId c, Elt g, Elt f)>;

  /// Explicit-table constructor. `homs` is row-major (dom*n + cod);
  /// `compose` maps (a, b, c) -> matrix [g][f] with g in hom(b,c), f in
  /// hom(a,b), value in hom(a,c).
  static Quantaloid from_tables(
      std::vector<std::string> objects, std::vector<LatticePtr> homs,
      std::vector<std::vector<std::vector<Elt>>> compose,
      std::vector<Elt> identities);

  /// Computed-composition constructor, used by the constructed families
  /// (and by Q_si, which delegates to its parent).
  static Quantaloid from_parts(std::vector<std::string> objects,
                               std::vector<LatticePtr> homs,
                               std::vector<Elt> identities, ComposeFn compose);

  /// One-object suspension of a monoid (X, /\, top). No distributivity
  /// check here: an invalid suspension (e.g. of M3) is deliberately
  /// constructible so that validate_quantaloid can exhibit the failure.
  static Quantaloid suspension(LatticePtr lattice);

  /// The two-element chain as a quantale.
  static Quantaloid two_chain();

  /// Free quantale 2^N on a finite monoid, carrier the powerset with
  /// pointwise product, unit {1}.
  static Quantaloid free_quantale(const Monoid& monoid);

  /// Rel(S,S): one object, hom 2^(S x S) ordered by inclusion, with
  /// composition r o s = {(x,z) | exists y: (x,y) in r and (y,z) in s}.
  /// That order of arguments is what makes the entailment translation of
  /// rel-enriched categories come out as displayed.
  static Quantaloid rel(std::vector<std::string> points);

  int object_count() const { return static_cast<int>(objects_.size()); }
  const std::string& object_name(ObjId a) const { return objects_[static_cast<size_t>(a)]; }
  ObjId object_index(std::string_view name) const;

  const FiniteLattice& hom(ObjId a, ObjId b) const {
    return *homs_[static_cast<size_t>(a) * objects_.size() + static_cast<size_t>(b)];
  }
  const LatticePtr& hom_ptr(ObjId a, ObjId b) const {
    return homs_[static_cast<size_t>(a) * objects_.size() + static_cast<size_t>(b)];
  }

  Elt identity_elt(ObjId a) const { return identities_[static_cast<size_t>(a)]; }
  QArrow identity(ObjId a) const { return QArrow{a, a, identity_elt(a)}; }

  Elt compose_elt(ObjId a, ObjId b, ObjId c, Elt g, Elt f) const {
    return compose_(a, b, c, g, f);
  }
  /// g after f; input_error if f.cod != g.dom.
  QArrow compose(const QArrow& g, const QArrow& f) const;

  bool leq(const QArrow& f, const QArrow& g) const;
  QArrow bottom(ObjId a, ObjId b) const { return QArrow{a, b, hom(a, b).bottom()}; }
  QArrow top(ObjId a, ObjId b) const { return QArrow{a, b, hom(a, b).top()}; }
  QArrow join(const QArrow& f, const QArrow& g) const;

  /// [f,g] = join{h | f o h <= g}; needs cod f = cod g. The unit half of
  /// the residuation law holds by construction; the counit half
  /// (f o [f,g] <= g) is re-checked on every call and can only fail on an
  /// invalid quantaloid.
  QArrow lifting(const QArrow& f, const QArrow& g) const;
  /// {f,g} = join{h | h o f <= g}; needs dom f = dom g.
  QArrow extension(const QArrow& f, const QArrow& g) const;

  /// 1_X <= g o f and f o g <= 1_Y for f: X -> Y, g: Y -> X.
  bool is_adjoint_pair(const QArrow& f, const QArrow& g) const;
  /// Canonical candidate [f, 1_Y], returned iff the pair test passes.
  std::optional<QArrow> right_adjoint_arrow(const QArrow& f) const;

  std::vector<Elt> idempotents(ObjId a) const;

  std::string arrow_name(const QArrow& f) const;

  bool operator==(const Quantaloid& other) const;

 private:
  std::vector<std::string> objects_;
  std::vector<LatticePtr> homs_;
  std::vector<Elt> identities_;
  ComposeFn compose_;
};

using QuantaloidPtr = std::shared_ptr<const Quantaloid>;

inline QuantaloidPtr make_quantaloid(Quantaloid q) {
  return std::make_shared<const Quantaloid>(std::move(q));
}

/// Checks associativity on all triples, identity neutrality, and
/// sup-bilinearity in each argument separately. Bilinearity over all joins
/// reduces to the empty join (bottom annihilates) plus binary joins, the
/// usual finite-lattice fold argument. Every failure carries a witness.
ValidationReport validate_quantaloid(const Quantaloid& q,
                                     Exec ex = Exec::parallel);

/// Materializes the composition tables of `q` (used to cross-check computed
/// composition against the explicit-table path).
std::vector<std::vector<std::vector<Elt>>> materialize_compose(const Quantaloid& q);

/// The split-idempotent completion Q_si: objects are the idempotent arrows
/// e of Q, hom(e -> f) is the sub-lattice {g | g o e = g = f o g},
/// composition is inherited and the identity on e is e itself. Hom
/// sub-lattices are re-validated as complete lattices on construction.
struct SplitIdempotentCompletion {
  QuantaloidPtr base;        // the original Q
  QuantaloidPtr completion;  // Q_si
  /// Per Q_si object: the pair (A, e) it came from.
  std::vector<std::pair<ObjId, Elt>> object_source;
  /// Per Q_si hom (row-major si_a * n + si_b): ascending parent elt indices.
  std::vector<std::vector<Elt>> hom_members;
  /// Per Q object A: the Q_si object 1_A (the inclusion j on objects).
  std::vector<ObjId> j_object;

  ObjId object_of(ObjId a, Elt idempotent) const;
  Elt to_completion(ObjId si_a, ObjId si_b, Elt parent_elt) const;
  Elt to_parent(ObjId si_a, ObjId si_b, Elt si_elt) const;
};

SplitIdempotentCompletion split_idempotent_completion(QuantaloidPtr q);

/// Named constructors for the paper's example quantales, with input
/// validation and a full law check on the result.
/// kinds: two_chain | locale_suspension | free_quantale | rel.
struct StandardSpec {
  std::string kind;
  LatticePtr lattice;               // locale_suspension
  std::optional<Monoid> monoid;     // free_quantale
  std::vector<std::string> points;  // rel
};

Quantaloid construct_standard(const StandardSpec& spec);

}  // namespace qwb

#endif  // QWB_QUANTALOID_HPP_
