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

#ifndef QWB_LATTICE_HPP_
#define QWB_LATTICE_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qwb/errors.hpp"

namespace qwb {

/// Index of an element within some FiniteLattice (or hom-lattice).
using Elt = int;

/// Elements past this count only get a load-time warning; everything still
/// works, just slower.
inline constexpr int kLatticeSoftLimit = 64;

/// A finite partially ordered set carrying all joins and meets, stored by its
/// explicit order relation. Joins and meets are computed by scanning bounds;
/// there is no Hasse-diagram machinery, on purpose.
///
/// Element identifiers are opaque strings and equality is identifier
/// equality. The degenerate one-element lattice (bottom = top) is legal
/// everywhere.
class FiniteLattice {
 public:
  FiniteLattice() = default;

  /// Builds a lattice from a list of (x, y) pairs meaning x <= y. The
  /// reflexive-transitive closure is applied first; antisymmetry and
  /// completeness (bottom, top, and all binary bounds; see note below) are
  /// then validated, throwing input_error with a witness on failure.
  static FiniteLattice from_order(
      std::vector<std::string> elements,
      const std::vector<std::pair<std::string, std::string>>& leq_pairs,
      std::vector<std::string>* warnings = nullptr);

  /// Same, but from an already reflexive-transitive n*n relation matrix.
  static FiniteLattice from_leq_matrix(std::vector<std::string> elements,
                                       std::vector<std::uint8_t> leq,
                                       std::vector<std::string>* warnings = nullptr);

  /// Chain 0 < 1 < ... < n-1 with the given element names.
  static FiniteLattice chain(std::vector<std::string> elements);

  /// Powerset of `atoms` ordered by inclusion; element index i is the subset
  /// with bitmask i, so joins are bitwise or. Names are "{a,b}" style.
  static FiniteLattice powerset(const std::vector<std::string>& atoms);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(Elt x) const { return names_[static_cast<size_t>(x)]; }
  const std::vector<std::string>& names() const { return names_; }

  /// Index of a named element; input_error if unknown.
  Elt index(std::string_view element) const;
  std::optional<Elt> find(std::string_view element) const;

  bool leq(Elt x, Elt y) const {
    return leq_[static_cast<size_t>(x) * names_.size() + static_cast<size_t>(y)] != 0;
  }

  Elt bottom() const { return bottom_; }
  Elt top() const { return top_; }

  Elt join(Elt x, Elt y) const { return join_[static_cast<size_t>(x) * names_.size() + static_cast<size_t>(y)]; }
  Elt meet(Elt x, Elt y) const { return meet_[static_cast<size_t>(x) * names_.size() + static_cast<size_t>(y)]; }

  /// Least upper bound of a subset; the empty join is bottom. In a finite
  /// lattice every join is a fold of binary joins over the bottom, which is
  /// why validating bottom + binary bounds suffices for completeness.
  Elt join(std::span<const Elt> subset) const;
  /// Greatest lower bound of a subset; the empty meet is top.
  Elt meet(std::span<const Elt> subset) const;

  /// x covers nothing special here: plain order-theoretic distributivity,
  /// checked on all triples (finite distributivity is enough for a finite
  /// lattice to be a frame).
  bool is_distributive() const;

  /// join{w | w /\ u <= v}; satisfies w /\ u <= v iff w <= (u => v).
  /// precondition_error when the lattice is not distributive, since the
  /// residuation law can fail there.
  Elt heyting_implication(Elt u, Elt v) const;

  /// Elements that are not a join of strictly smaller ones (bottom excluded).
  std::vector<Elt> join_irreducibles() const;

  /// Elements c (never bottom) such that c <= join(S) forces c <= s for some
  /// s in S, for every subset S. Quantifying over subsets reduces to "c is
  /// not bottom and c <= x v y implies c <= x or c <= y": downclosing a
  /// subset does not change its join, and for downclosed S the subset
  /// criterion is membership, so both match the down-set definition; the
  /// binary form then follows by induction on |S|. The test suite keeps the
  /// exhaustive down-set scan as an independent oracle.
  std::vector<Elt> totally_compact_elements() const;

  /// True iff every x equals the join of the totally compact elements below
  /// it (bottom is the empty join).
  bool is_totally_algebraic() const;

  std::vector<Elt> down_set(Elt x) const;
  std::vector<Elt> up_set(Elt x) const;

  bool operator==(const FiniteLattice& other) const {
    return names_ == other.names_ && leq_ == other.leq_;
  }

 private:
  void finish_construction(std::vector<std::string>* warnings);

  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;  // row-major: leq_[x*n+y] <=> x <= y
  std::vector<Elt> join_;
  std::vector<Elt> meet_;
  Elt bottom_ = 0;
  Elt top_ = 0;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

inline LatticePtr make_lattice(FiniteLattice lattice) {
  return std::make_shared<const FiniteLattice>(std::move(lattice));
}

/// A down-closed subset of a lattice; the test sets for total compactness.
struct DownSet {
  std::vector<Elt> members;  // sorted ascending
};

bool is_down_closed(const FiniteLattice& lattice, std::span<const Elt> members);
DownSet down_closure(const FiniteLattice& lattice, std::span<const Elt> members);
/// All down-closed subsets (2^n worst case; intended for small oracles).
std::vector<DownSet> all_down_sets(const FiniteLattice& lattice);

/// A total order-preserving map between two lattices. Monotonicity is
/// validated at construction; sup-morphisms are validated MonotoneMaps (see
/// is_sup_morphism).
class MonotoneMap {
 public:
  MonotoneMap(LatticePtr dom, LatticePtr cod, std::vector<Elt> graph);

  static MonotoneMap identity(LatticePtr lattice);
  static MonotoneMap constant(LatticePtr dom, LatticePtr cod, Elt value);

  const FiniteLattice& dom() const { return *dom_; }
  const FiniteLattice& cod() const { return *cod_; }
  const LatticePtr& dom_ptr() const { return dom_; }
  const LatticePtr& cod_ptr() const { return cod_; }

  Elt operator()(Elt x) const { return graph_[static_cast<size_t>(x)]; }
  const std::vector<Elt>& graph() const { return graph_; }

  bool operator==(const MonotoneMap& other) const {
    return *dom_ == other.dom() && *cod_ == other.cod() && graph_ == other.graph_;
  }

 private:
  LatticePtr dom_;
  LatticePtr cod_;
  std::vector<Elt> graph_;
};

/// (f after g)(x) = f(g(x)); input_error if the middle lattices differ.
MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g);

/// True iff f preserves all joins. For a finite lattice it is enough to
/// check the empty join (bottom) and all binary joins: every join is a fold
/// of those, and monotone maps preserve folds of preserved joins.
bool is_sup_morphism(const MonotoneMap& f);

enum class AdjointSide { left, right };

/// Galois-connection candidate: for side=right, g(y) = join{x | f(x) <= y},
/// returned iff f(x) <= y <=> x <= g(y) holds for all pairs; dually for
/// side=left with meets (g(y) = meet{x | y <= f(x)}, test y <= f(x) <=>
/// g(y) <= x). Absence is a value, not an error.
std::optional<MonotoneMap> adjoint_of_monotone(const MonotoneMap& f,
                                               AdjointSide side);

/// A sub-lattice presented by a subset of parent elements (must be closed
/// under all parent joins, including the empty one). Order is inherited;
/// meets are recomputed inside the subset, so they may disagree with the
/// parent's.
struct Sublattice {
  LatticePtr lattice;
  std::vector<Elt> to_parent;  // ascending parent indices

  Elt from_parent(Elt parent) const;  // input_error if not a member
};

/// Restriction of `parent` to `members`; re-validates the result as a
/// complete lattice.
Sublattice restrict_lattice(const FiniteLattice& parent,
                            std::vector<Elt> members);

/// Splitting of a sup-endomorphism e with e o e = e through its fixed-point
/// lattice L_e = {x | e(x) = x}: projection o inclusion = identity and
/// inclusion o projection = e, asserted pointwise at construction.
struct SupSplitting {
  Sublattice fixed;
  MonotoneMap inclusion;   // L_e -> L
  MonotoneMap projection;  // L -> L_e
};

/// precondition_error if e is not an idempotent sup-endomorphism.
SupSplitting split_idempotent_sup(const MonotoneMap& e);

}  // namespace qwb

#endif  // QWB_LATTICE_HPP_
