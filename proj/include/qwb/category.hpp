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

#ifndef QWB_CATEGORY_HPP_
#define QWB_CATEGORY_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwb/quantaloid.hpp"

namespace qwb {

/// Default cap on enumeration work (candidate count); override per call or
/// via the CLI --budget / QWB_BUDGET.
inline constexpr std::size_t kDefaultBudget = 1'000'000;

class QCategory;
using QCategoryPtr = std::shared_ptr<const QCategory>;

/// A category enriched in a quantaloid: typed objects and a hom-arrow
/// hom(y, x): t(x) -> t(y) per object pair, with
/// hom(z, y) o hom(y, x) <= hom(z, x) and 1_{t(x)} <= hom(x, x).
///
/// The underlying order is x <= y iff the types agree and
/// 1 <= hom(x, y); isomorphic objects (mutually below) are allowed.
class QCategory {
 public:
  QCategory(QuantaloidPtr base, std::vector<std::string> objects,
            std::vector<ObjId> types, std::vector<Elt> hom);

  const QuantaloidPtr& base_ptr() const { return base_; }
  const Quantaloid& base() const { return *base_; }
  int size() const { return static_cast<int>(objects_.size()); }
  const std::string& name(int a) const { return objects_[static_cast<size_t>(a)]; }
  int object_index(std::string_view name) const;
  ObjId type_of(int a) const { return types_[static_cast<size_t>(a)]; }

  /// hom(y, x), an element of base.hom(t(x), t(y)).
  Elt hom(int y, int x) const {
    return hom_[static_cast<size_t>(y) * objects_.size() + static_cast<size_t>(x)];
  }
  QArrow hom_arrow(int y, int x) const {
    return QArrow{type_of(x), type_of(y), hom(y, x)};
  }

  ValidationReport validate(Exec ex = Exec::serial) const;

  bool leq(int a, int b) const;
  bool iso(int a, int b) const { return leq(a, b) && leq(b, a); }

  std::vector<int> fiber(ObjId type) const;
  /// Least upper bound of `objs` within the fiber of `type` (all objs must
  /// have that type); least-index representative; absent when none exists.
  std::optional<int> fiber_join(ObjId type, std::span<const int> objs) const;
  std::optional<int> fiber_meet(ObjId type, std::span<const int> objs) const;

  bool operator==(const QCategory& other) const;

 private:
  QuantaloidPtr base_;
  std::vector<std::string> objects_;
  std::vector<ObjId> types_;
  std::vector<Elt> hom_;
};

inline QCategoryPtr make_category(QCategory c) {
  return std::make_shared<const QCategory>(std::move(c));
}

/// The one-object category *_X with hom 1_X.
QCategory star_category(QuantaloidPtr base, ObjId type);

/// A type-preserving, hom-increasing object map.
class QFunctor {
 public:
  QFunctor(QCategoryPtr dom, QCategoryPtr cod, std::vector<int> graph);

  static QFunctor identity(QCategoryPtr cat);

  const QCategory& dom() const { return *dom_; }
  const QCategory& cod() const { return *cod_; }
  const QCategoryPtr& dom_ptr() const { return dom_; }
  const QCategoryPtr& cod_ptr() const { return cod_; }
  int operator()(int a) const { return graph_[static_cast<size_t>(a)]; }
  const std::vector<int>& graph() const { return graph_; }

  /// Graph equality (the spec's notion of functor equality).
  bool operator==(const QFunctor& other) const {
    return *dom_ == other.dom() && *cod_ == other.cod() && graph_ == other.graph_;
  }

 private:
  QCategoryPtr dom_;
  QCategoryPtr cod_;
  std::vector<int> graph_;
};

QFunctor compose(const QFunctor& f, const QFunctor& g);
bool functor_leq(const QFunctor& f, const QFunctor& g);

/// A distributor A -|-> B: a matrix of arrows mat(b, a): t(a) -> t(b)
/// satisfying B(b,b') o mat(b',a) <= mat(b,a) and
/// mat(b,a') o A(a',a) <= mat(b,a).
class QDistributor {
 public:
  QDistributor(QCategoryPtr dom, QCategoryPtr cod, std::vector<Elt> mat);

  const QCategory& dom() const { return *dom_; }
  const QCategory& cod() const { return *cod_; }
  const QCategoryPtr& dom_ptr() const { return dom_; }
  const QCategoryPtr& cod_ptr() const { return cod_; }

  Elt at(int b, int a) const {
    return mat_[static_cast<size_t>(b) * dom_->size() + static_cast<size_t>(a)];
  }
  QArrow arrow_at(int b, int a) const {
    return QArrow{dom_->type_of(a), cod_->type_of(b), at(b, a)};
  }
  const std::vector<Elt>& matrix() const { return mat_; }

  bool operator==(const QDistributor& other) const {
    return *dom_ == other.dom() && *cod_ == other.cod() && mat_ == other.mat_;
  }
  bool leq(const QDistributor& other) const;

 private:
  QCategoryPtr dom_;
  QCategoryPtr cod_;
  std::vector<Elt> mat_;
};

QDistributor identity_distributor(QCategoryPtr cat);
QDistributor bottom_distributor(QCategoryPtr dom, QCategoryPtr cod);

/// (Psi (x) Phi)(c, a) = join_b Psi(c, b) o Phi(b, a); input_error if the
/// middle categories differ.
QDistributor compose_distributors(const QDistributor& psi, const QDistributor& phi);

/// Right lifting [Phi, Xi] through Phi; Phi: A -|-> B and Xi: C -|-> B must
/// share their codomain. Pointwise: [Phi,Xi](a, c) = meet_b [Phi(b,a), Xi(b,c)]
/// with the lifting taken in the base. The counit
/// Phi (x) [Phi,Xi] <= Xi is checked on every call; the full residuation law
/// is a property test.
QDistributor dist_lifting(const QDistributor& phi, const QDistributor& xi);
/// Right extension {Phi, Xi}; Phi: A -|-> B and Xi: A -|-> C share domains;
/// {Phi,Xi}(c, b) = meet_a {Phi(b,a), Xi(c,a)}.
QDistributor dist_extension(const QDistributor& phi, const QDistributor& xi);

struct GraphPair {
  QDistributor left;   // B(-, F-): A -|-> B
  QDistributor right;  // B(F-, -): B -|-> A
};
/// The adjoint pair of distributors represented by a functor; adjointness is
/// asserted on construction.
GraphPair functor_graph(const QFunctor& f);

/// Cauchy test: candidate right adjoint [Phi, B]; present iff
/// A <= Psi (x) Phi and Phi (x) Psi <= B.
std::optional<QDistributor> is_left_adjoint_dist(const QDistributor& phi);

/// A contravariant presheaf of type X on `target`: values phi(a): X -> t(a)
/// with A(a,a') o phi(a') <= phi(a). Equivalently a distributor from *_X.
struct Presheaf {
  QCategoryPtr target;
  ObjId type = 0;
  std::vector<Elt> values;

  Elt at(int a) const { return values[static_cast<size_t>(a)]; }
  QArrow arrow_at(int a) const { return QArrow{type, target->type_of(a), at(a)}; }
  void validate() const;  // input_error with witness
  QDistributor as_distributor() const;
  bool leq(const Presheaf& other) const;
  bool operator==(const Presheaf& other) const {
    return type == other.type && values == other.values && *target == *other.target;
  }
};

/// The free cocompletion PA: all presheaves of all types, with hom(psi, phi)
/// given by lifting. Presheaves are enumerated (generate value families,
/// filter by the action law) and ordered by (type, value tuple), so the
/// result is deterministic; enumeration beyond `budget` candidates throws
/// resource_error.
struct PresheafCategory {
  QCategoryPtr cat;
  std::vector<Presheaf> presheaves;  // presheaves[i] is object i of cat
  QFunctor yoneda;                   // a |-> A(-, a); fully faithful (asserted)

  std::optional<int> find(const Presheaf& phi) const;
};

PresheafCategory presheaf_category(const QCategoryPtr& a,
                                   std::size_t budget = kDefaultBudget,
                                   Exec ex = Exec::parallel);

/// Enumerates the presheaves of every type on `a` without building PA.
std::vector<Presheaf> enumerate_presheaves(const QCategoryPtr& a,
                                           std::size_t budget = kDefaultBudget,
                                           Exec ex = Exec::parallel);

/// Tensor c (x) f for f: A -> t(c): the least-index object b of type A with
/// C(b, x) = [f, C(c, x)] for all x; tensors are unique up to isomorphism
/// and downstream checks are isomorphism-invariant.
std::optional<int> tensor(const QCategory& c, int obj, const QArrow& f);
/// Cotensor for f: t(c) -> B: least-index d of type B with
/// C(x, d) = {f, C(x, c)} for all x.
std::optional<int> cotensor(const QCategory& c, int obj, const QArrow& f);

/// Order-cocomplete (each fiber a complete lattice; for finite fibers,
/// bottom plus binary joins suffice) and all tensors and cotensors exist.
bool is_cocomplete(const QCategory& c);

/// colim(Phi, F)(a) = join_b F(b) (x) Phi(b, a), then verified against the
/// defining equation C(K-,-) = [Phi, C(F-,-)]; a verification failure is an
/// internal consistency error and must never fire.
QFunctor weighted_colimit(const QDistributor& phi, const QFunctor& f);

/// sup_C(phi) = colim(phi, 1_C), computed pointwise.
int sup_object(const QCategory& c, const Presheaf& phi);

/// The four compactness criteria of a cocomplete category:
///   presheaf: phi(a) = C(a, sup phi) for every presheaf phi,
///   theta:    1 <= Theta(a,a) with Theta(x,y) = meet_phi {C(y, sup phi), phi(x)},
///   homming:  x |-> C(a, x) is cocontinuous into P(*_{ta}),
///   tensoring:f |-> a (x) f is cocontinuous and has a cocontinuous right
///             adjoint (the homming functor).
/// totally_compact_objects returns the agreed presheaf/theta value and
/// throws internal_error if those two disagree.
struct CompactnessAnalysis {
  std::vector<int> via_presheaf;
  std::vector<int> via_theta;
  std::vector<int> via_homming;
  std::vector<int> via_tensoring;
  std::vector<int> compacts;  // = via_presheaf = via_theta
  bool all_agree() const;
};

CompactnessAnalysis compactness_analysis(const QCategoryPtr& c,
                                         std::size_t budget = kDefaultBudget,
                                         Exec ex = Exec::parallel);
std::vector<int> totally_compact_objects(const QCategoryPtr& c,
                                         std::size_t budget = kDefaultBudget,
                                         Exec ex = Exec::parallel);

/// x = join over compacts a of a (x) C(a, x), for every x.
bool is_totally_algebraic_cat(const QCategoryPtr& c,
                              std::size_t budget = kDefaultBudget,
                              Exec ex = Exec::parallel);

/// Cocontinuity of a functor between cocomplete categories, checked as
/// preservation of fiber joins (empty + binary) and of all tensors; a
/// weighted colimit is a fiber join of tensors, so this is equivalent to
/// preserving all of them.
bool is_cocontinuous(const QFunctor& f);

bool is_fully_faithful(const QFunctor& f);
bool is_essentially_surjective(const QFunctor& f);
bool is_equivalence(const QFunctor& f);

/// The full subcategory of Cauchy presheaves of PA, with the corestricted
/// Yoneda embedding (always fully faithful, Lemma-style assertion built in).
struct CauchyCompletion {
  QCategoryPtr cat;
  std::vector<Presheaf> presheaves;
  QFunctor corestricted_yoneda;
};

CauchyCompletion cauchy_completion(const QCategoryPtr& a,
                                   std::size_t budget = kDefaultBudget,
                                   Exec ex = Exec::parallel);
/// True iff the corestricted Yoneda embedding is an equivalence (it is
/// always fully faithful; essential surjectivity is what is tested).
bool is_cauchy_complete(const QCategoryPtr& a,
                        std::size_t budget = kDefaultBudget,
                        Exec ex = Exec::parallel);

/// Skeletonization: collapses isomorphism classes onto the least object
/// index per class.
struct Skeleton {
  QCategoryPtr cat;
  std::vector<int> old_to_new;
  std::vector<int> representatives;
};
Skeleton skeletonize(const QCategoryPtr& c);

/// The full subcategory of totally compact objects with its inclusion.
struct CompactSubcategory {
  QCategoryPtr cat;
  std::vector<int> objects;  // indices in the ambient category
  QFunctor inclusion;
};
CompactSubcategory compact_subcategory(const QCategoryPtr& c,
                                       std::size_t budget = kDefaultBudget,
                                       Exec ex = Exec::parallel);

/// For a left adjoint (= cocontinuous) functor between cocomplete
/// categories: asserts compacts map to compacts and returns the restriction
/// A_c -> B_c.
QFunctor restrict_to_compacts(const QFunctor& f,
                              std::size_t budget = kDefaultBudget,
                              Exec ex = Exec::parallel);

/// R_A: P(A_c) -> A, phi |-> colim(phi, i_A): always fully faithful
/// (asserted), an equivalence iff A is totally algebraic.
struct RestrictionFunctor {
  PresheafCategory presheaves_on_compacts;
  CompactSubcategory compacts;
  std::vector<int> object_map;  // per object of P(A_c): its image in A
  bool fully_faithful = false;
  bool equivalence = false;
};
RestrictionFunctor r_functor(const QCategoryPtr& a,
                             std::size_t budget = kDefaultBudget,
                             Exec ex = Exec::parallel);

/// All functors C -> D (budget-guarded), in lexicographic graph order.
std::vector<QFunctor> functors_between(const QCategoryPtr& c, const QCategoryPtr& d,
                                       std::size_t budget = kDefaultBudget);

/// The hom map F |-> R_A o P(F) from functors C -> A_c to cocontinuous
/// functors PC -> A, checked to be an order-isomorphism by exhaustive
/// enumeration of both sides.
struct HomEquivalenceResult {
  std::size_t functor_count = 0;       // |Cat(Q)(C, A_c)|
  std::size_t cocontinuous_count = 0;  // |Map(Cocont(Q))(PC, A)|
  bool bijective = false;
  bool order_isomorphism = false;
};
HomEquivalenceResult hom_equivalence_check(const QCategoryPtr& c,
                                           const QCategoryPtr& a,
                                           std::size_t budget = kDefaultBudget,
                                           Exec ex = Exec::parallel);

/// The entailment order on A_0 x S of a category enriched in Rel(S,S):
/// (a,s) <= (b,t) iff (s,t) in A(a,b), together with the three
/// skeletal-cocompleteness conditions: (x1) skeletality, (x2) joins, (x3)
/// tensor elements.
struct EntailmentAnalysis {
  int points = 0;
  std::size_t width = 0;            // = object count * points
  std::vector<std::uint8_t> order;  // width x width, row (a*points+s)
  bool x1 = false;
  bool x2 = false;
  bool x3 = false;
  std::string witness_x1;
  std::string witness_x2;
  std::string witness_x3;

  bool rel(int a, int s, int b, int t) const;
};
/// input_error unless the base is Rel(S,S) with |S| = points.
EntailmentAnalysis entailment_order(const QCategoryPtr& c, int points,
                                    Exec ex = Exec::parallel);

}  // namespace qwb

#endif  // QWB_CATEGORY_HPP_
