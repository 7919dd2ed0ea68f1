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

#ifndef QWB_MODULE_HPP_
#define QWB_MODULE_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "qwb/category.hpp"
#include "qwb/quantaloid.hpp"

namespace qwb {

/// A contravariant sup-lattice-valued functor on a quantaloid: a fiber
/// lattice F(X) per object and, per arrow f: X -> Y, a sup-morphism
/// act(f): F(Y) -> F(X) with act(1) = id, act(g o f) = act(f) o act(g),
/// and f |-> act(f) preserving joins of arrows pointwise (the bottom arrow
/// acts as constant bottom).
class QModule {
 public:
  /// act[X*n+Y][f][m] = act(f)(m) for f in hom(X,Y), m in F(Y).
  using ActTables = std::vector<std::vector<std::vector<Elt>>>;

  QModule(QuantaloidPtr base, std::vector<LatticePtr> fibers, ActTables act);

  const QuantaloidPtr& base_ptr() const { return base_; }
  const Quantaloid& base() const { return *base_; }
  const FiniteLattice& fiber(ObjId x) const { return *fibers_[static_cast<size_t>(x)]; }
  const LatticePtr& fiber_ptr(ObjId x) const { return fibers_[static_cast<size_t>(x)]; }

  /// F(f)(m) for f: X -> Y and m in F(Y); the result lives in F(X).
  Elt act(ObjId x, ObjId y, Elt f, Elt m) const {
    return act_[static_cast<size_t>(x) * fibers_.size() + static_cast<size_t>(y)]
               [static_cast<size_t>(f)][static_cast<size_t>(m)];
  }

  bool operator==(const QModule& other) const;

 private:
  QuantaloidPtr base_;
  std::vector<LatticePtr> fibers_;
  ActTables act_;
};

ValidationReport validate_module(const QModule& f, Exec ex = Exec::serial);

/// A natural family of sup-morphisms between modules; both laws are
/// validated at construction (input_error with a witness).
class QModuleMorphism {
 public:
  QModuleMorphism(QModule dom, QModule cod, std::vector<std::vector<Elt>> components);

  static QModuleMorphism identity(const QModule& f);
  static QModuleMorphism bottom(const QModule& dom, const QModule& cod);

  const QModule& dom() const { return dom_; }
  const QModule& cod() const { return cod_; }
  Elt apply(ObjId x, Elt m) const {
    return components_[static_cast<size_t>(x)][static_cast<size_t>(m)];
  }
  const std::vector<std::vector<Elt>>& components() const { return components_; }

  bool operator==(const QModuleMorphism& other) const {
    return dom_ == other.dom_ && cod_ == other.cod_ && components_ == other.components_;
  }
  bool leq(const QModuleMorphism& other) const;

 private:
  QModule dom_;
  QModule cod_;
  std::vector<std::vector<Elt>> components_;
};

/// Like the constructor, but reporting violations instead of throwing.
ValidationReport validate_module_morphism_data(
    const QModule& dom, const QModule& cod,
    const std::vector<std::vector<Elt>>& components);

QModuleMorphism compose(const QModuleMorphism& f, const QModuleMorphism& g);
/// Componentwise join, re-validated as a module morphism.
QModuleMorphism join_morphisms(const QModule& dom, const QModule& cod,
                               const std::vector<QModuleMorphism>& parts);

/// The representable module Q(-, a): fibers hom(X, a), action by
/// precomposition.
QModule representable_module(QuantaloidPtr q, ObjId a);

/// A finite lattice as a module over the two-element quantale: act(1) = id,
/// act(0) = constant bottom.
QModule two_module(QuantaloidPtr two_chain, LatticePtr lattice);

/// The cocomplete category A_F of a module: objects are the disjoint union
/// of the fibers, t(x) = X for x in F(X), and
/// hom(y, x) = join{f | act(f)(y) <= x}. The result is asserted cocomplete
/// with tensors x (x) f = act(f)(x).
struct ModuleCategory {
  QCategoryPtr cat;
  std::vector<int> offset;  // object of (X, m) is offset[X] + m

  int object_of(ObjId x, Elt m) const { return offset[static_cast<size_t>(x)] + m; }
  std::pair<ObjId, Elt> element_of(int obj) const;
};
ModuleCategory module_to_category(const QModule& f);

/// Morphism transport x |-> alpha_{tx}(x); cocontinuous by construction.
QFunctor functor_of_morphism(const QModuleMorphism& alpha,
                             const ModuleCategory& dom_cat,
                             const ModuleCategory& cod_cat);

/// Fibers (C_X, <=) with action by tensor. The input is skeletonized first
/// (isomorphism classes collapse onto their least index; the biequivalence
/// only holds up to isomorphism and we need functions). The roundtrip
/// through module_to_category is asserted to reproduce the skeleton's homs.
QModule category_to_module(const QCategoryPtr& c);

/// The Yoneda morphism tau_a: Q(-, A) => F of an element a in F(A);
/// component at X sends q to act(q)(a).
QModuleMorphism tau(const QModule& f, ObjId a_obj, Elt a);

/// The arrow A_F(y, x) = join{f: tx -> ty | act(f)(y) <= x}; it represents
/// the right lifting [tau_y, tau_x] in Mod(Q), which is asserted by checking
/// act(g)(y) <= x and that every h with act(h)(y) <= x satisfies h <= g.
Elt represented_lifting(const QModule& f, ObjId y_obj, Elt y, ObjId x_obj, Elt x);

/// Componentwise order right adjoints, returned iff the family is strictly
/// natural and each component preserves joins (otherwise the adjoint exists
/// only laxly and the morphism is not a left adjoint in Mod(Q)).
std::optional<QModuleMorphism> morphism_right_adjoint(const QModuleMorphism& alpha);

/// Elements a with tau_a a left adjoint.
std::vector<std::pair<ObjId, Elt>> principal_elements(const QModule& f);

/// Decides principal generation twice: pointwise via represented liftings
/// (x = join of act([a,x])(a) over principal a) and morphism-level
/// (id = join of tau_a o tau_a*); the two routes are asserted equal.
bool is_principally_generated(const QModule& f);

/// The fixpoint module F_e of an idempotent e: A -> A: fibers
/// {q in hom(X, A) | e o q = q} with action by precomposition, the
/// inclusion sigma_e and projection pi_e (q |-> e o q), with
/// pi o sigma = id and sigma o pi = Q(-, e) asserted.
struct FixpointModule {
  QModule mod;
  QModuleMorphism inclusion;   // sigma_e: F_e => Q(-, A)
  QModuleMorphism projection;  // pi_e: Q(-, A) => F_e
  QArrow idempotent;
  std::vector<std::vector<Elt>> fiber_members;  // per object: parent hom elts
};
FixpointModule fixpoint_module(QuantaloidPtr q, const QArrow& e);

struct LocallyPrincipal {
  ObjId obj = 0;       // A, with a in F(A) and e: A -> A
  Elt element = 0;     // a
  Elt idempotent = 0;  // e

  bool operator==(const LocallyPrincipal&) const = default;
  auto operator<=>(const LocallyPrincipal&) const = default;
};

/// Pairs (a, e) with act(e)(a) = a and tau_a o sigma_e a left adjoint.
std::vector<LocallyPrincipal> locally_principal_elements(const QModule& f);

/// Decides local principal generation twice (pointwise and via
/// id = join of zeta o zeta* over all left adjoints from fixpoint modules)
/// and asserts agreement.
bool is_locally_principally_generated(const QModule& f);

/// Fiber-wise product with injections and projections satisfying
/// p_j o s_i = delta_{i,j}.
struct DirectSum {
  QModule sum;
  std::vector<QModuleMorphism> injections;
  std::vector<QModuleMorphism> projections;
};
DirectSum direct_sum(QuantaloidPtr base, const std::vector<QModule>& summands);

enum class RetractMode { pg, lpg };

/// The factorization of the canonical left-adjoint family into the direct
/// sum of representables (pg) or fixpoint modules (lpg):
/// from = join_i (f_i o p_i): sum => F and into = join_i (s_i o f_i*):
/// F => sum. Always into o from >= id on the sum and
/// from o into = join_i (f_i o f_i*); the retract property
/// (from o into = id) holds exactly when the matching generation decider
/// does, which is asserted.
struct RetractConstruction {
  DirectSum sum;
  QModuleMorphism from;  // sum => F, built from the left adjoints
  QModuleMorphism into;  // F => sum, built from the right adjoints
  bool unit_holds = false;          // into o from >= id_sum
  bool counit_is_identity = false;  // from o into = id_F
};
RetractConstruction retract_construction(const QModule& f, RetractMode mode);

/// Present iff (from, into) exhibit F as an adjoint retract of the sum.
std::optional<RetractConstruction> adjoint_retract_witness(const QModule& f,
                                                           RetractMode mode);

/// Transfer along Q -> Q_si: F_si(e) = F(A) restricted to the fixed points
/// of act(e), action inherited. Asserts the element correspondence
/// (principal elements of F_si at e are exactly the locally principal
/// elements of F at e) and the instance-level generation transfer
/// (F_si principally generated iff F locally principally generated).
QModule module_si(const QModule& f, const SplitIdempotentCompletion& sic);

/// Restriction of a Q_si-module along j (fibers at the identity
/// idempotents); recovers a module isomorphic to the original.
QModule restrict_along_j(const QModule& f_si, const SplitIdempotentCompletion& sic);

/// Fibers, orders and action tables coincide under identity indexing
/// (names ignored).
bool module_iso_by_index(const QModule& f, const QModule& g);

/// A split-idempotent diagram for the lifting-transport identity
/// q2 o [b,a] o i = [b o j, a o i]: p o i = 1, q2 o j = 1, e = i o p,
/// f = j o q2, a o e = a, b o f = b.
struct Lemma17Instance {
  QArrow i, p, j, q2, a, b;
};
bool lemma17_check(const Quantaloid& q, const Lemma17Instance& inst);
/// All valid instances (splitting pairs with compatible a, b), capped.
std::vector<Lemma17Instance> enumerate_lemma17_instances(const Quantaloid& q,
                                                         std::size_t limit);

/// The two-condition principality test available over a one-object base
/// whose hom-lattice is totally algebraic: a is principal iff every
/// act(d)(a) with d totally compact is totally compact in the fiber, and
/// act(d)(a) <= act(c)(x) implies some totally compact k has
/// act(k)(a) <= x and d <= k o c.
std::vector<std::pair<ObjId, Elt>> principal_elements_via_compactness(const QModule& f);

/// Compact objects of A_F, translated back to module elements (Prop-11
/// bridge data for tests and reports).
std::vector<std::pair<ObjId, Elt>> compact_elements_of_module_category(
    const QModule& f, std::size_t budget = kDefaultBudget, Exec ex = Exec::parallel);

}  // namespace qwb

#endif  // QWB_MODULE_HPP_
