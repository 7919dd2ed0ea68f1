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

#include "qwb/category.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace qwb {

namespace {

bool same_base(const QCategory& a, const QCategory& b) {
  return a.base_ptr().get() == b.base_ptr().get() || a.base() == b.base();
}

std::string obj_label(const QCategory& c, int a) {
  return c.name(a) + " (of type " + c.base().object_name(c.type_of(a)) + ")";
}

}  // namespace

QCategory::QCategory(QuantaloidPtr base, std::vector<std::string> objects,
                     std::vector<ObjId> types, std::vector<Elt> hom)
    : base_(std::move(base)),
      objects_(std::move(objects)),
      types_(std::move(types)),
      hom_(std::move(hom)) {
  if (!base_) throw input_error("category needs a base quantaloid");
  const size_t n = objects_.size();
  if (types_.size() != n) throw input_error("category needs a type per object");
  if (hom_.size() != n * n) throw input_error("category needs a hom matrix entry per object pair");
  for (ObjId t : types_) {
    if (t < 0 || t >= base_->object_count()) throw input_error("object type out of range");
  }
  for (size_t y = 0; y < n; ++y) {
    for (size_t x = 0; x < n; ++x) {
      const FiniteLattice& h = base_->hom(types_[x], types_[y]);
      const Elt v = hom_[y * n + x];
      if (v < 0 || v >= h.size()) throw input_error("hom matrix entry out of range");
    }
  }
}

int QCategory::object_index(std::string_view name) const {
  for (size_t i = 0; i < objects_.size(); ++i) {
    if (objects_[i] == name) return static_cast<int>(i);
  }
  throw input_error("unknown category object '" + std::string(name) + "'");
}

ValidationReport QCategory::validate(Exec ex) const {
  ValidationReport report;
  const int n = size();
  for (int x = 0; x < n; ++x) {
    const QArrow id = base_->identity(type_of(x));
    if (!base_->leq(id, hom_arrow(x, x))) {
      report.violations.push_back(
          {"unit", "1 <= hom(x,x) fails for x = " + obj_label(*this, x)});
    }
  }
  const size_t nn = static_cast<size_t>(n);
  auto bad = par_failures(nn * nn * nn, ex, [&](size_t i) {
    const int x = static_cast<int>(i % nn);
    const int y = static_cast<int>((i / nn) % nn);
    const int z = static_cast<int>(i / (nn * nn));
    return base_->leq(base_->compose(hom_arrow(z, y), hom_arrow(y, x)), hom_arrow(z, x));
  });
  for (size_t i : bad) {
    const int x = static_cast<int>(i % nn);
    const int y = static_cast<int>((i / nn) % nn);
    const int z = static_cast<int>(i / (nn * nn));
    report.violations.push_back(
        {"composition", "hom(z,y) o hom(y,x) <= hom(z,x) fails for x = " + name(x) +
                            ", y = " + name(y) + ", z = " + name(z)});
  }
  return report;
}

bool QCategory::leq(int a, int b) const {
  if (type_of(a) != type_of(b)) return false;
  return base_->leq(base_->identity(type_of(a)), hom_arrow(a, b));
}

std::vector<int> QCategory::fiber(ObjId type) const {
  std::vector<int> out;
  for (int a = 0; a < size(); ++a) {
    if (type_of(a) == type) out.push_back(a);
  }
  return out;
}

std::optional<int> QCategory::fiber_join(ObjId type, std::span<const int> objs) const {
  std::vector<int> uppers;
  for (int c : fiber(type)) {
    bool upper = true;
    for (int s : objs) upper = upper && leq(s, c);
    if (upper) uppers.push_back(c);
  }
  for (int c : uppers) {
    bool least = true;
    for (int d : uppers) least = least && leq(c, d);
    if (least) return c;
  }
  return std::nullopt;
}

std::optional<int> QCategory::fiber_meet(ObjId type, std::span<const int> objs) const {
  std::vector<int> lowers;
  for (int c : fiber(type)) {
    bool lower = true;
    for (int s : objs) lower = lower && leq(c, s);
    if (lower) lowers.push_back(c);
  }
  for (int c : lowers) {
    bool greatest = true;
    for (int d : lowers) greatest = greatest && leq(d, c);
    if (greatest) return c;
  }
  return std::nullopt;
}

bool QCategory::operator==(const QCategory& other) const {
  if (objects_ != other.objects_ || types_ != other.types_ || hom_ != other.hom_) return false;
  return base_.get() == other.base_.get() || *base_ == *other.base_;
}

QCategory star_category(QuantaloidPtr base, ObjId type) {
  const Elt id = base->identity_elt(type);
  return QCategory(std::move(base), {"*"}, {type}, {id});
}

QFunctor::QFunctor(QCategoryPtr dom, QCategoryPtr cod, std::vector<int> graph)
    : dom_(std::move(dom)), cod_(std::move(cod)), graph_(std::move(graph)) {
  if (!dom_ || !cod_) throw input_error("functor needs both categories");
  if (!same_base(*dom_, *cod_)) throw input_error("functor needs a common base quantaloid");
  if (graph_.size() != static_cast<size_t>(dom_->size())) {
    throw input_error("functor graph has wrong size");
  }
  for (int a = 0; a < dom_->size(); ++a) {
    const int fa = graph_[static_cast<size_t>(a)];
    if (fa < 0 || fa >= cod_->size()) throw input_error("functor value out of range");
    if (dom_->type_of(a) != cod_->type_of(fa)) {
      throw input_error("functor does not preserve the type of " + obj_label(*dom_, a));
    }
  }
  const Quantaloid& q = dom_->base();
  for (int a2 = 0; a2 < dom_->size(); ++a2) {
    for (int a = 0; a < dom_->size(); ++a) {
      const QArrow lhs = dom_->hom_arrow(a2, a);
      const QArrow rhs = cod_->hom_arrow(graph_[static_cast<size_t>(a2)], graph_[static_cast<size_t>(a)]);
      if (!q.leq(lhs, rhs)) {
        throw input_error("functor not hom-increasing at (" + dom_->name(a2) + ", " +
                          dom_->name(a) + ")");
      }
    }
  }
}

QFunctor QFunctor::identity(QCategoryPtr cat) {
  std::vector<int> graph(static_cast<size_t>(cat->size()));
  for (int a = 0; a < cat->size(); ++a) graph[static_cast<size_t>(a)] = a;
  QCategoryPtr copy = cat;
  return QFunctor(std::move(cat), std::move(copy), std::move(graph));
}

QFunctor compose(const QFunctor& f, const QFunctor& g) {
  if (!(g.cod() == f.dom())) throw input_error("functors not composable");
  std::vector<int> graph(static_cast<size_t>(g.dom().size()));
  for (int a = 0; a < g.dom().size(); ++a) graph[static_cast<size_t>(a)] = f(g(a));
  return QFunctor(g.dom_ptr(), f.cod_ptr(), std::move(graph));
}

bool functor_leq(const QFunctor& f, const QFunctor& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) {
    throw input_error("cannot compare functors with different endpoints");
  }
  for (int a = 0; a < f.dom().size(); ++a) {
    if (!f.cod().leq(f(a), g(a))) return false;
  }
  return true;
}

QDistributor::QDistributor(QCategoryPtr dom, QCategoryPtr cod, std::vector<Elt> mat)
    : dom_(std::move(dom)), cod_(std::move(cod)), mat_(std::move(mat)) {
  if (!dom_ || !cod_) throw input_error("distributor needs both categories");
  if (!same_base(*dom_, *cod_)) throw input_error("distributor needs a common base quantaloid");
  const size_t na = static_cast<size_t>(dom_->size());
  const size_t nb = static_cast<size_t>(cod_->size());
  if (mat_.size() != na * nb) throw input_error("distributor matrix has wrong size");
  const Quantaloid& q = dom_->base();
  for (int b = 0; b < cod_->size(); ++b) {
    for (int a = 0; a < dom_->size(); ++a) {
      const FiniteLattice& h = q.hom(dom_->type_of(a), cod_->type_of(b));
      if (at(b, a) < 0 || at(b, a) >= h.size()) {
        throw input_error("distributor entry out of range");
      }
    }
  }
  for (int b = 0; b < cod_->size(); ++b) {
    for (int b2 = 0; b2 < cod_->size(); ++b2) {
      for (int a = 0; a < dom_->size(); ++a) {
        if (!q.leq(q.compose(cod_->hom_arrow(b, b2), arrow_at(b2, a)), arrow_at(b, a))) {
          throw input_error("distributor law B(b,b') o m(b',a) <= m(b,a) fails at b = " +
                            cod_->name(b) + ", b' = " + cod_->name(b2) + ", a = " + dom_->name(a));
        }
      }
    }
  }
  for (int b = 0; b < cod_->size(); ++b) {
    for (int a2 = 0; a2 < dom_->size(); ++a2) {
      for (int a = 0; a < dom_->size(); ++a) {
        if (!q.leq(q.compose(arrow_at(b, a2), dom_->hom_arrow(a2, a)), arrow_at(b, a))) {
          throw input_error("distributor law m(b,a') o A(a',a) <= m(b,a) fails at b = " +
                            cod_->name(b) + ", a' = " + dom_->name(a2) + ", a = " + dom_->name(a));
        }
      }
    }
  }
}

bool QDistributor::leq(const QDistributor& other) const {
  if (!(*dom_ == other.dom()) || !(*cod_ == other.cod())) {
    throw input_error("cannot compare distributors with different endpoints");
  }
  const Quantaloid& q = dom_->base();
  for (int b = 0; b < cod_->size(); ++b) {
    for (int a = 0; a < dom_->size(); ++a) {
      if (!q.leq(arrow_at(b, a), other.arrow_at(b, a))) return false;
    }
  }
  return true;
}

QDistributor identity_distributor(QCategoryPtr cat) {
  const int n = cat->size();
  std::vector<Elt> mat(static_cast<size_t>(n) * n);
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) mat[static_cast<size_t>(b) * n + a] = cat->hom(b, a);
  }
  QCategoryPtr copy = cat;
  return QDistributor(std::move(cat), std::move(copy), std::move(mat));
}

QDistributor bottom_distributor(QCategoryPtr dom, QCategoryPtr cod) {
  std::vector<Elt> mat(static_cast<size_t>(dom->size()) * cod->size());
  const Quantaloid& q = dom->base();
  for (int b = 0; b < cod->size(); ++b) {
    for (int a = 0; a < dom->size(); ++a) {
      mat[static_cast<size_t>(b) * dom->size() + a] =
          q.hom(dom->type_of(a), cod->type_of(b)).bottom();
    }
  }
  return QDistributor(std::move(dom), std::move(cod), std::move(mat));
}

QDistributor compose_distributors(const QDistributor& psi, const QDistributor& phi) {
  if (!(psi.dom() == phi.cod())) {
    throw input_error("distributors not composable: middle categories differ");
  }
  const QCategory& a = phi.dom();
  const QCategory& b = psi.dom();
  const QCategory& c = psi.cod();
  const Quantaloid& q = a.base();
  std::vector<Elt> mat(static_cast<size_t>(a.size()) * c.size());
  for (int cc = 0; cc < c.size(); ++cc) {
    for (int aa = 0; aa < a.size(); ++aa) {
      const FiniteLattice& h = q.hom(a.type_of(aa), c.type_of(cc));
      Elt acc = h.bottom();
      for (int bb = 0; bb < b.size(); ++bb) {
        acc = h.join(acc, q.compose(psi.arrow_at(cc, bb), phi.arrow_at(bb, aa)).elt);
      }
      mat[static_cast<size_t>(cc) * a.size() + aa] = acc;
    }
  }
  return QDistributor(phi.dom_ptr(), psi.cod_ptr(), std::move(mat));
}

QDistributor dist_lifting(const QDistributor& phi, const QDistributor& xi) {
  if (!(phi.cod() == xi.cod())) {
    throw input_error("distributor lifting needs matching codomain categories");
  }
  const QCategory& a = phi.dom();
  const QCategory& b = phi.cod();
  const QCategory& c = xi.dom();
  const Quantaloid& q = a.base();
  std::vector<Elt> mat(static_cast<size_t>(c.size()) * a.size());
  for (int aa = 0; aa < a.size(); ++aa) {
    for (int cc = 0; cc < c.size(); ++cc) {
      const FiniteLattice& h = q.hom(c.type_of(cc), a.type_of(aa));
      Elt acc = h.top();
      for (int bb = 0; bb < b.size(); ++bb) {
        acc = h.meet(acc, q.lifting(phi.arrow_at(bb, aa), xi.arrow_at(bb, cc)).elt);
      }
      mat[static_cast<size_t>(aa) * c.size() + cc] = acc;
    }
  }
  QDistributor out(xi.dom_ptr(), phi.dom_ptr(), std::move(mat));
  if (!compose_distributors(phi, out).leq(xi)) {
    throw internal_error("residuation counit failed for distributor lifting");
  }
  return out;
}

QDistributor dist_extension(const QDistributor& phi, const QDistributor& xi) {
  if (!(phi.dom() == xi.dom())) {
    throw input_error("distributor extension needs matching domain categories");
  }
  const QCategory& a = phi.dom();
  const QCategory& b = phi.cod();
  const QCategory& c = xi.cod();
  const Quantaloid& q = a.base();
  std::vector<Elt> mat(static_cast<size_t>(b.size()) * c.size());
  for (int cc = 0; cc < c.size(); ++cc) {
    for (int bb = 0; bb < b.size(); ++bb) {
      const FiniteLattice& h = q.hom(b.type_of(bb), c.type_of(cc));
      Elt acc = h.top();
      for (int aa = 0; aa < a.size(); ++aa) {
        acc = h.meet(acc, q.extension(phi.arrow_at(bb, aa), xi.arrow_at(cc, aa)).elt);
      }
      mat[static_cast<size_t>(cc) * b.size() + bb] = acc;
    }
  }
  QDistributor out(phi.cod_ptr(), xi.cod_ptr(), std::move(mat));
  if (!compose_distributors(out, phi).leq(xi)) {
    throw internal_error("residuation counit failed for distributor extension");
  }
  return out;
}

GraphPair functor_graph(const QFunctor& f) {
  const QCategory& a = f.dom();
  const QCategory& b = f.cod();
  std::vector<Elt> left(static_cast<size_t>(a.size()) * b.size());
  std::vector<Elt> right(static_cast<size_t>(b.size()) * a.size());
  for (int bb = 0; bb < b.size(); ++bb) {
    for (int aa = 0; aa < a.size(); ++aa) {
      left[static_cast<size_t>(bb) * a.size() + aa] = b.hom(bb, f(aa));
      right[static_cast<size_t>(aa) * b.size() + bb] = b.hom(f(aa), bb);
    }
  }
  GraphPair out{QDistributor(f.dom_ptr(), f.cod_ptr(), std::move(left)),
                QDistributor(f.cod_ptr(), f.dom_ptr(), std::move(right))};
  const QDistributor unit = compose_distributors(out.right, out.left);
  const QDistributor counit = compose_distributors(out.left, out.right);
  if (!identity_distributor(f.dom_ptr()).leq(unit) ||
      !counit.leq(identity_distributor(f.cod_ptr()))) {
    throw internal_error("functor graphs failed the adjoint pair test");
  }
  return out;
}

std::optional<QDistributor> is_left_adjoint_dist(const QDistributor& phi) {
  const QDistributor candidate = dist_lifting(phi, identity_distributor(phi.cod_ptr()));
  const QDistributor unit = compose_distributors(candidate, phi);
  if (!identity_distributor(phi.dom_ptr()).leq(unit)) return std::nullopt;
  const QDistributor counit = compose_distributors(phi, candidate);
  if (!counit.leq(identity_distributor(phi.cod_ptr()))) return std::nullopt;
  return candidate;
}

void Presheaf::validate() const {
  if (!target) throw input_error("presheaf needs a target category");
  if (type < 0 || type >= target->base().object_count()) {
    throw input_error("presheaf type out of range");
  }
  if (values.size() != static_cast<size_t>(target->size())) {
    throw input_error("presheaf needs a value per object");
  }
  const Quantaloid& q = target->base();
  for (int a = 0; a < target->size(); ++a) {
    const FiniteLattice& h = q.hom(type, target->type_of(a));
    if (at(a) < 0 || at(a) >= h.size()) throw input_error("presheaf value out of range");
  }
  for (int a = 0; a < target->size(); ++a) {
    for (int a2 = 0; a2 < target->size(); ++a2) {
      if (!q.leq(q.compose(target->hom_arrow(a, a2), arrow_at(a2)), arrow_at(a))) {
        throw input_error("presheaf action law fails at (" + target->name(a) + ", " +
                          target->name(a2) + ")");
      }
    }
  }
}

QDistributor Presheaf::as_distributor() const {
  QCategoryPtr star = make_category(star_category(target->base_ptr(), type));
  return QDistributor(star, target, values);
}

bool Presheaf::leq(const Presheaf& other) const {
  if (type != other.type || !(*target == *other.target)) {
    throw input_error("cannot compare presheaves of different types");
  }
  const Quantaloid& q = target->base();
  for (int a = 0; a < target->size(); ++a) {
    if (!q.leq(arrow_at(a), other.arrow_at(a))) return false;
  }
  return true;
}

std::vector<Presheaf> enumerate_presheaves(const QCategoryPtr& a,
                                           std::size_t budget, Exec ex) {
  const QCategory& cat = *a;
  const Quantaloid& q = cat.base();
  const int n = cat.size();
  std::vector<Presheaf> out;

  for (ObjId type = 0; type < q.object_count(); ++type) {
    if (n == 0) {
      out.push_back(Presheaf{a, type, {}});
      continue;
    }
    // Depth-first over value families in index order, pruning by the action
    // law against already-assigned objects; budget counts visited nodes.
    std::vector<Elt> values(static_cast<size_t>(n), 0);
    std::size_t visited = 0;
    std::vector<Presheaf> found;

    auto law_pair = [&](int i, int j) {
      // C(i,j) o phi(j) <= phi(i)
      const QArrow lhs = q.compose(cat.hom_arrow(i, j),
                                   QArrow{type, cat.type_of(j), values[static_cast<size_t>(j)]});
      return q.leq(lhs, QArrow{type, cat.type_of(i), values[static_cast<size_t>(i)]});
    };

    auto dfs = [&](auto&& self, int depth) -> void {
      if (depth == n) {
        found.push_back(Presheaf{a, type, values});
        return;
      }
      const FiniteLattice& h = q.hom(type, cat.type_of(depth));
      for (Elt v = 0; v < h.size(); ++v) {
        if (++visited > budget) {
          throw resource_error("presheaf enumeration exceeded budget of " +
                               std::to_string(budget) + " candidates");
        }
        values[static_cast<size_t>(depth)] = v;
        bool ok = true;
        for (int i = 0; i <= depth && ok; ++i) {
          ok = law_pair(i, depth) && law_pair(depth, i);
        }
        if (ok) self(self, depth + 1);
      }
    };

    if (ex == Exec::parallel && n > 0) {
      // Split on the first object's value; each branch runs the same DFS.
      const FiniteLattice& h0 = q.hom(type, cat.type_of(0));
      std::vector<std::vector<Presheaf>> branch(static_cast<size_t>(h0.size()));
      std::vector<std::size_t> counts(static_cast<size_t>(h0.size()), 0);
      par_for(static_cast<size_t>(h0.size()), ex, [&](size_t v0) {
        std::vector<Elt> vals(static_cast<size_t>(n), 0);
        std::size_t local_visited = 0;
        vals[0] = static_cast<Elt>(v0);
        auto pair_ok = [&](int i, int j) {
          const QArrow lhs = q.compose(cat.hom_arrow(i, j),
                                       QArrow{type, cat.type_of(j), vals[static_cast<size_t>(j)]});
          return q.leq(lhs, QArrow{type, cat.type_of(i), vals[static_cast<size_t>(i)]});
        };
        bool root_ok = pair_ok(0, 0);
        auto walk = [&](auto&& self, int depth) -> void {
          if (depth == n) {
            branch[v0].push_back(Presheaf{a, type, vals});
            return;
          }
          const FiniteLattice& h = q.hom(type, cat.type_of(depth));
          for (Elt v = 0; v < h.size(); ++v) {
            ++local_visited;
            if (local_visited > budget) return;  // reported after the join
            vals[static_cast<size_t>(depth)] = v;
            bool ok = true;
            for (int i = 0; i <= depth && ok; ++i) ok = pair_ok(i, depth) && pair_ok(depth, i);
            if (ok) self(self, depth + 1);
          }
        };
        if (root_ok) walk(walk, 1);
        counts[v0] = local_visited + 1;
      });
      std::size_t total = 0;
      for (std::size_t c : counts) total += c;
      if (total > budget) {
        throw resource_error("presheaf enumeration exceeded budget of " +
                             std::to_string(budget) + " candidates");
      }
      for (auto& b : branch) {
        out.insert(out.end(), b.begin(), b.end());
      }
    } else {
      dfs(dfs, 0);
      out.insert(out.end(), found.begin(), found.end());
    }
  }
  std::sort(out.begin(), out.end(), [](const Presheaf& x, const Presheaf& y) {
    if (x.type != y.type) return x.type < y.type;
    return x.values < y.values;
  });
  return out;
}

namespace {

std::string presheaf_name(const QCategory& target, const Presheaf& p) {
  const Quantaloid& q = target.base();
  std::string s = "ph:" + q.object_name(p.type) + "(";
  for (int a = 0; a < target.size(); ++a) {
    if (a > 0) s += ",";
    s += q.hom(p.type, target.type_of(a)).name(p.at(a));
  }
  s += ")";
  return s;
}

}  // namespace

PresheafCategory presheaf_category(const QCategoryPtr& a, std::size_t budget,
                                   Exec ex) {
  const QCategory& cat = *a;
  const Quantaloid& q = cat.base();
  std::vector<Presheaf> presheaves = enumerate_presheaves(a, budget, ex);
  const int m = static_cast<int>(presheaves.size());

  std::vector<std::string> names(static_cast<size_t>(m));
  std::vector<ObjId> types(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    names[static_cast<size_t>(i)] = presheaf_name(cat, presheaves[static_cast<size_t>(i)]);
    types[static_cast<size_t>(i)] = presheaves[static_cast<size_t>(i)].type;
  }
  // hom(psi, phi) = [psi, phi] = meet_a [psi(a), phi(a)], an arrow
  // t(phi) -> t(psi).
  std::vector<Elt> hom(static_cast<size_t>(m) * static_cast<size_t>(m));
  par_for(static_cast<size_t>(m) * static_cast<size_t>(m), ex, [&](size_t idx) {
    const int i = static_cast<int>(idx / static_cast<size_t>(m));
    const int j = static_cast<int>(idx % static_cast<size_t>(m));
    const Presheaf& psi = presheaves[static_cast<size_t>(i)];
    const Presheaf& phi = presheaves[static_cast<size_t>(j)];
    const FiniteLattice& h = q.hom(phi.type, psi.type);
    Elt acc = h.top();
    for (int x = 0; x < cat.size(); ++x) {
      acc = h.meet(acc, q.lifting(psi.arrow_at(x), phi.arrow_at(x)).elt);
    }
    hom[idx] = acc;
  });
  QCategoryPtr pa = make_category(
      QCategory(cat.base_ptr(), std::move(names), std::move(types), std::move(hom)));

  PresheafCategory out{pa, std::move(presheaves), QFunctor::identity(pa)};
  // Yoneda embedding a |-> A(-, a).
  std::vector<int> graph(static_cast<size_t>(cat.size()), -1);
  for (int obj = 0; obj < cat.size(); ++obj) {
    Presheaf rep{a, cat.type_of(obj), {}};
    rep.values.resize(static_cast<size_t>(cat.size()));
    for (int x = 0; x < cat.size(); ++x) rep.values[static_cast<size_t>(x)] = cat.hom(x, obj);
    auto idx = out.find(rep);
    if (!idx) throw internal_error("representable presheaf missing from PA enumeration");
    graph[static_cast<size_t>(obj)] = *idx;
  }
  out.yoneda = QFunctor(a, pa, std::move(graph));
  if (!is_fully_faithful(out.yoneda)) {
    throw internal_error("Yoneda embedding is not fully faithful");
  }
  return out;
}

std::optional<int> PresheafCategory::find(const Presheaf& phi) const {
  auto it = std::lower_bound(
      presheaves.begin(), presheaves.end(), phi,
      [](const Presheaf& x, const Presheaf& y) {
        if (x.type != y.type) return x.type < y.type;
        return x.values < y.values;
      });
  if (it == presheaves.end() || it->type != phi.type || it->values != phi.values) {
    return std::nullopt;
  }
  return static_cast<int>(it - presheaves.begin());
}

std::optional<int> tensor(const QCategory& c, int obj, const QArrow& f) {
  if (f.cod != c.type_of(obj)) {
    throw input_error("tensor needs cod f = t(c)");
  }
  const Quantaloid& q = c.base();
  // Precompute [f, C(obj, x)] per x, then scan candidates of type dom f.
  std::vector<Elt> want(static_cast<size_t>(c.size()));
  for (int x = 0; x < c.size(); ++x) {
    want[static_cast<size_t>(x)] = q.lifting(f, c.hom_arrow(obj, x)).elt;
  }
  for (int b : c.fiber(f.dom)) {
    bool match = true;
    for (int x = 0; x < c.size() && match; ++x) {
      match = c.hom(b, x) == want[static_cast<size_t>(x)];
    }
    if (match) return b;
  }
  return std::nullopt;
}

std::optional<int> cotensor(const QCategory& c, int obj, const QArrow& f) {
  if (f.dom != c.type_of(obj)) {
    throw input_error("cotensor needs dom f = t(c)");
  }
  const Quantaloid& q = c.base();
  std::vector<Elt> want(static_cast<size_t>(c.size()));
  for (int x = 0; x < c.size(); ++x) {
    want[static_cast<size_t>(x)] = q.extension(f, c.hom_arrow(x, obj)).elt;
  }
  for (int d : c.fiber(f.cod)) {
    bool match = true;
    for (int x = 0; x < c.size() && match; ++x) {
      match = c.hom(x, d) == want[static_cast<size_t>(x)];
    }
    if (match) return d;
  }
  return std::nullopt;
}

bool is_cocomplete(const QCategory& c) {
  const Quantaloid& q = c.base();
  // Order-cocomplete: each fiber is a complete lattice. Finite fibers have
  // all joins iff they have a bottom and binary joins (and then all meets
  // exist automatically).
  for (ObjId t = 0; t < q.object_count(); ++t) {
    const std::vector<int> fib = c.fiber(t);
    if (!c.fiber_join(t, std::span<const int>{}).has_value()) return false;
    for (size_t i = 0; i < fib.size(); ++i) {
      for (size_t j = i; j < fib.size(); ++j) {
        const int pair[2] = {fib[i], fib[j]};
        if (!c.fiber_join(t, pair).has_value()) return false;
      }
    }
  }
  for (int obj = 0; obj < c.size(); ++obj) {
    for (ObjId t = 0; t < q.object_count(); ++t) {
      const FiniteLattice& into = q.hom(t, c.type_of(obj));
      for (Elt f = 0; f < into.size(); ++f) {
        if (!tensor(c, obj, QArrow{t, c.type_of(obj), f}).has_value()) return false;
      }
      const FiniteLattice& outof = q.hom(c.type_of(obj), t);
      for (Elt f = 0; f < outof.size(); ++f) {
        if (!cotensor(c, obj, QArrow{c.type_of(obj), t, f}).has_value()) return false;
      }
    }
  }
  return true;
}

QFunctor weighted_colimit(const QDistributor& phi, const QFunctor& f) {
  if (!(phi.cod() == f.dom())) {
    throw input_error("weight and diagram do not share their category");
  }
  const QCategory& a = phi.dom();
  const QCategory& b = phi.cod();
  const QCategoryPtr& c = f.cod_ptr();
  const Quantaloid& q = a.base();
  std::vector<int> graph(static_cast<size_t>(a.size()));
  for (int aa = 0; aa < a.size(); ++aa) {
    std::vector<int> parts;
    for (int bb = 0; bb < b.size(); ++bb) {
      auto t = tensor(*c, f(bb), phi.arrow_at(bb, aa));
      if (!t) {
        throw precondition_error("weighted colimit needs a cocomplete codomain: tensor of " +
                                 c->name(f(bb)) + " missing");
      }
      parts.push_back(*t);
    }
    auto k = c->fiber_join(a.type_of(aa), parts);
    if (!k) {
      throw precondition_error("weighted colimit needs a cocomplete codomain: fiber join missing");
    }
    graph[static_cast<size_t>(aa)] = *k;
  }
  QFunctor out(phi.dom_ptr(), c, std::move(graph));
  // Defining equation C(K-,-) = [Phi, C(F-,-)], checked entrywise.
  for (int aa = 0; aa < a.size(); ++aa) {
    for (int x = 0; x < c->size(); ++x) {
      const FiniteLattice& h = q.hom(c->type_of(x), a.type_of(aa));
      Elt want = h.top();
      for (int bb = 0; bb < b.size(); ++bb) {
        want = h.meet(want, q.lifting(phi.arrow_at(bb, aa), c->hom_arrow(f(bb), x)).elt);
      }
      if (c->hom(out(aa), x) != want) {
        throw internal_error("weighted colimit failed its defining equation at (" +
                             a.name(aa) + ", " + c->name(x) + ")");
      }
    }
  }
  return out;
}

int sup_object(const QCategory& c, const Presheaf& phi) {
  if (!(*phi.target == c)) throw input_error("presheaf lives on a different category");
  std::vector<int> parts;
  for (int x = 0; x < c.size(); ++x) {
    auto t = tensor(c, x, phi.arrow_at(x));
    if (!t) throw precondition_error("sup needs a cocomplete category: tensor missing");
    parts.push_back(*t);
  }
  auto s = c.fiber_join(phi.type, parts);
  if (!s) throw precondition_error("sup needs a cocomplete category: fiber join missing");
  return *s;
}

namespace {

/// All tensors of a category, computed once: tensors[c][A][f].
struct TensorCache {
  std::vector<std::vector<std::vector<std::optional<int>>>> table;

  explicit TensorCache(const QCategory& c, Exec ex) {
    const Quantaloid& q = c.base();
    table.resize(static_cast<size_t>(c.size()));
    par_for(static_cast<size_t>(c.size()), ex, [&](size_t obj) {
      auto& per_type = table[obj];
      per_type.resize(static_cast<size_t>(q.object_count()));
      for (ObjId t = 0; t < q.object_count(); ++t) {
        const FiniteLattice& h = q.hom(t, c.type_of(static_cast<int>(obj)));
        auto& row = per_type[static_cast<size_t>(t)];
        row.resize(static_cast<size_t>(h.size()));
        for (Elt f = 0; f < h.size(); ++f) {
          row[static_cast<size_t>(f)] =
              tensor(c, static_cast<int>(obj), QArrow{t, c.type_of(static_cast<int>(obj)), f});
        }
      }
    });
  }

  int get(int obj, ObjId type, Elt f) const {
    auto v = table[static_cast<size_t>(obj)][static_cast<size_t>(type)][static_cast<size_t>(f)];
    if (!v) throw precondition_error("tensor missing in a category assumed cocomplete");
    return *v;
  }
};

int cached_sup(const QCategory& c, const TensorCache& cache, const Presheaf& phi) {
  std::vector<int> parts(static_cast<size_t>(c.size()));
  for (int x = 0; x < c.size(); ++x) {
    parts[static_cast<size_t>(x)] = cache.get(x, phi.type, phi.at(x));
  }
  auto s = c.fiber_join(phi.type, parts);
  if (!s) throw precondition_error("sup needs a cocomplete category: fiber join missing");
  return *s;
}

bool is_cocontinuous_unchecked(const QFunctor& f);

}  // namespace

CompactnessAnalysis compactness_analysis(const QCategoryPtr& c, std::size_t budget,
                                         Exec ex) {
  const QCategory& cat = *c;
  const Quantaloid& q = cat.base();
  if (!is_cocomplete(cat)) {
    throw precondition_error("compactness analysis needs a cocomplete category");
  }
  CompactnessAnalysis out;
  const TensorCache cache(cat, ex);
  const std::vector<Presheaf> pc = enumerate_presheaves(c, budget, ex);
  std::vector<int> sups = par_map<int>(pc.size(), ex, [&](size_t i) {
    return cached_sup(cat, cache, pc[i]);
  });

  // Criterion (2): phi(a) = C(a, sup phi) for all phi.
  for (int a = 0; a < cat.size(); ++a) {
    const bool compact = par_all(pc.size(), ex, [&](size_t i) {
      return pc[i].at(a) == cat.hom(a, sups[i]);
    });
    if (compact) out.via_presheaf.push_back(a);
  }

  // Criterion (1): 1 <= Theta(a,a), Theta(a,a) = meet_phi {C(a, sup phi), phi(a)}.
  for (int a = 0; a < cat.size(); ++a) {
    const ObjId ta = cat.type_of(a);
    const FiniteLattice& h = q.hom(ta, ta);
    Elt theta = h.top();
    for (size_t i = 0; i < pc.size(); ++i) {
      const QArrow f{pc[i].type, ta, cat.hom(a, sups[i])};
      const QArrow g = pc[i].arrow_at(a);
      theta = h.meet(theta, q.extension(f, g).elt);
    }
    if (h.leq(q.identity_elt(ta), theta)) out.via_theta.push_back(a);
  }

  // Criteria (3) and (4) via the homming / tensoring functors into and out
  // of P(*_A).
  std::map<ObjId, PresheafCategory> stars;
  for (int a = 0; a < cat.size(); ++a) {
    const ObjId ta = cat.type_of(a);
    if (!stars.count(ta)) {
      stars.emplace(ta, presheaf_category(make_category(star_category(cat.base_ptr(), ta)),
                                          budget, ex));
    }
    const PresheafCategory& pstar = stars.at(ta);

    auto find_single = [&](ObjId type, Elt value) {
      Presheaf p{pstar.presheaves.front().target, type, {value}};
      auto idx = pstar.find(p);
      if (!idx) throw internal_error("arrow presheaf missing from P(*)");
      return *idx;
    };

    // Homming with a: x |-> C(a, x).
    std::vector<int> hom_graph(static_cast<size_t>(cat.size()));
    for (int x = 0; x < cat.size(); ++x) {
      hom_graph[static_cast<size_t>(x)] = find_single(cat.type_of(x), cat.hom(a, x));
    }
    const QFunctor homming(c, pstar.cat, std::move(hom_graph));
    const bool crit3 = is_cocontinuous_unchecked(homming);
    if (crit3) out.via_homming.push_back(a);

    // Tensoring with a: f |-> a (x) f, left adjoint to homming.
    std::vector<int> ten_graph(static_cast<size_t>(pstar.cat->size()));
    for (int g = 0; g < pstar.cat->size(); ++g) {
      const Presheaf& ph = pstar.presheaves[static_cast<size_t>(g)];
      ten_graph[static_cast<size_t>(g)] = cache.get(a, ph.type, ph.at(0));
    }
    const QFunctor tensoring(pstar.cat, c, std::move(ten_graph));
    bool crit4 = is_cocontinuous_unchecked(tensoring);
    // adjunction T_a -| H_a, objectwise
    for (int g = 0; g < pstar.cat->size() && crit4; ++g) {
      crit4 = pstar.cat->leq(g, homming(tensoring(g)));
    }
    for (int x = 0; x < cat.size() && crit4; ++x) {
      crit4 = cat.leq(tensoring(homming(x)), x);
    }
    crit4 = crit4 && crit3;  // the right adjoint must itself be cocontinuous
    if (crit4) out.via_tensoring.push_back(a);
  }

  if (out.via_presheaf != out.via_theta) {
    throw internal_error(
        "compactness criteria (1) and (2) disagree; this must never happen");
  }
  out.compacts = out.via_presheaf;
  return out;
}

bool CompactnessAnalysis::all_agree() const {
  return via_presheaf == via_theta && via_presheaf == via_homming &&
         via_presheaf == via_tensoring;
}

std::vector<int> totally_compact_objects(const QCategoryPtr& c, std::size_t budget,
                                         Exec ex) {
  return compactness_analysis(c, budget, ex).compacts;
}

bool is_totally_algebraic_cat(const QCategoryPtr& c, std::size_t budget, Exec ex) {
  const QCategory& cat = *c;
  const std::vector<int> compacts = totally_compact_objects(c, budget, ex);
  for (int x = 0; x < cat.size(); ++x) {
    std::vector<int> parts;
    for (int a : compacts) {
      auto t = tensor(cat, a, cat.hom_arrow(a, x));
      if (!t) throw internal_error("tensor of a compact missing in a cocomplete category");
      parts.push_back(*t);
    }
    auto j = cat.fiber_join(cat.type_of(x), parts);
    if (!j || !cat.iso(*j, x)) return false;
  }
  return true;
}

namespace {

bool is_cocontinuous_unchecked(const QFunctor& f) {
  const QCategory& d = f.dom();
  const QCategory& c = f.cod();
  const Quantaloid& q = d.base();
  // Preserves fiber bottoms and binary joins.
  for (ObjId t = 0; t < q.object_count(); ++t) {
    const std::vector<int> fib = d.fiber(t);
    auto bot = d.fiber_join(t, std::span<const int>{});
    auto cbot = c.fiber_join(t, std::span<const int>{});
    if (!bot || !cbot) return false;
    if (!c.iso(f(*bot), *cbot)) return false;
    for (size_t i = 0; i < fib.size(); ++i) {
      for (size_t j = i; j < fib.size(); ++j) {
        const int pair[2] = {fib[i], fib[j]};
        auto join_d = d.fiber_join(t, pair);
        const int mapped[2] = {f(fib[i]), f(fib[j])};
        auto join_c = c.fiber_join(t, mapped);
        if (!join_d || !join_c) return false;
        if (!c.iso(f(*join_d), *join_c)) return false;
      }
    }
  }
  // Preserves tensors.
  for (int obj = 0; obj < d.size(); ++obj) {
    for (ObjId t = 0; t < q.object_count(); ++t) {
      const FiniteLattice& h = q.hom(t, d.type_of(obj));
      for (Elt arrow = 0; arrow < h.size(); ++arrow) {
        const QArrow fa{t, d.type_of(obj), arrow};
        auto td = tensor(d, obj, fa);
        auto tc = tensor(c, f(obj), fa);
        if (!td || !tc) return false;
        if (!c.iso(f(*td), *tc)) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_cocontinuous(const QFunctor& f) {
  if (!is_cocomplete(f.dom()) || !is_cocomplete(f.cod())) {
    throw precondition_error("cocontinuity test needs cocomplete categories");
  }
  return is_cocontinuous_unchecked(f);
}

bool is_fully_faithful(const QFunctor& f) {
  for (int a2 = 0; a2 < f.dom().size(); ++a2) {
    for (int a = 0; a < f.dom().size(); ++a) {
      if (f.dom().hom(a2, a) != f.cod().hom(f(a2), f(a))) return false;
    }
  }
  return true;
}

bool is_essentially_surjective(const QFunctor& f) {
  for (int d = 0; d < f.cod().size(); ++d) {
    bool hit = false;
    for (int a = 0; a < f.dom().size() && !hit; ++a) {
      hit = f.cod().iso(f(a), d);
    }
    if (!hit) return false;
  }
  return true;
}

bool is_equivalence(const QFunctor& f) {
  return is_fully_faithful(f) && is_essentially_surjective(f);
}

CauchyCompletion cauchy_completion(const QCategoryPtr& a, std::size_t budget,
                                   Exec ex) {
  PresheafCategory pa = presheaf_category(a, budget, ex);
  std::vector<int> keep;
  std::vector<std::uint8_t> cauchy = par_map<std::uint8_t>(
      pa.presheaves.size(), ex, [&](size_t i) -> std::uint8_t {
        return is_left_adjoint_dist(pa.presheaves[i].as_distributor()).has_value() ? 1 : 0;
      });
  for (size_t i = 0; i < pa.presheaves.size(); ++i) {
    if (cauchy[i]) keep.push_back(static_cast<int>(i));
  }
  const int m = static_cast<int>(keep.size());
  std::vector<std::string> names(static_cast<size_t>(m));
  std::vector<ObjId> types(static_cast<size_t>(m));
  std::vector<Elt> hom(static_cast<size_t>(m) * static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    names[static_cast<size_t>(i)] = pa.cat->name(keep[static_cast<size_t>(i)]);
    types[static_cast<size_t>(i)] = pa.cat->type_of(keep[static_cast<size_t>(i)]);
    for (int j = 0; j < m; ++j) {
      hom[static_cast<size_t>(i) * m + j] =
          pa.cat->hom(keep[static_cast<size_t>(i)], keep[static_cast<size_t>(j)]);
    }
  }
  QCategoryPtr cc = make_category(
      QCategory(a->base_ptr(), std::move(names), std::move(types), std::move(hom)));
  std::vector<Presheaf> kept;
  for (int i : keep) kept.push_back(pa.presheaves[static_cast<size_t>(i)]);

  std::vector<int> graph(static_cast<size_t>(a->size()));
  for (int obj = 0; obj < a->size(); ++obj) {
    const int rep = pa.yoneda(obj);
    auto it = std::lower_bound(keep.begin(), keep.end(), rep);
    if (it == keep.end() || *it != rep) {
      throw internal_error("representable presheaf is not Cauchy");
    }
    graph[static_cast<size_t>(obj)] = static_cast<int>(it - keep.begin());
  }
  QFunctor corestricted(a, cc, std::move(graph));
  if (!is_fully_faithful(corestricted)) {
    throw internal_error("corestricted Yoneda embedding is not fully faithful");
  }
  return CauchyCompletion{cc, std::move(kept), std::move(corestricted)};
}

bool is_cauchy_complete(const QCategoryPtr& a, std::size_t budget, Exec ex) {
  CauchyCompletion cc = cauchy_completion(a, budget, ex);
  return is_essentially_surjective(cc.corestricted_yoneda);
}

Skeleton skeletonize(const QCategoryPtr& c) {
  const QCategory& cat = *c;
  const int n = cat.size();
  Skeleton out;
  out.old_to_new.assign(static_cast<size_t>(n), -1);
  std::vector<int> rep_of(static_cast<size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    int rep = a;
    for (int b = 0; b < a; ++b) {
      if (cat.iso(a, b)) {
        rep = rep_of[static_cast<size_t>(b)];
        break;
      }
    }
    rep_of[static_cast<size_t>(a)] = rep;
    if (rep == a) out.representatives.push_back(a);
  }
  const int m = static_cast<int>(out.representatives.size());
  std::vector<std::string> names(static_cast<size_t>(m));
  std::vector<ObjId> types(static_cast<size_t>(m));
  std::vector<Elt> hom(static_cast<size_t>(m) * static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const int a = out.representatives[static_cast<size_t>(i)];
    names[static_cast<size_t>(i)] = cat.name(a);
    types[static_cast<size_t>(i)] = cat.type_of(a);
    for (int j = 0; j < m; ++j) {
      hom[static_cast<size_t>(i) * m + j] = cat.hom(a, out.representatives[static_cast<size_t>(j)]);
    }
  }
  for (int a = 0; a < n; ++a) {
    const int rep = rep_of[static_cast<size_t>(a)];
    const auto it = std::lower_bound(out.representatives.begin(), out.representatives.end(), rep);
    out.old_to_new[static_cast<size_t>(a)] = static_cast<int>(it - out.representatives.begin());
  }
  out.cat = make_category(QCategory(cat.base_ptr(), std::move(names), std::move(types), std::move(hom)));
  return out;
}

CompactSubcategory compact_subcategory(const QCategoryPtr& c, std::size_t budget,
                                       Exec ex) {
  const std::vector<int> objs = totally_compact_objects(c, budget, ex);
  const QCategory& cat = *c;
  const int m = static_cast<int>(objs.size());
  std::vector<std::string> names(static_cast<size_t>(m));
  std::vector<ObjId> types(static_cast<size_t>(m));
  std::vector<Elt> hom(static_cast<size_t>(m) * static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    names[static_cast<size_t>(i)] = cat.name(objs[static_cast<size_t>(i)]);
    types[static_cast<size_t>(i)] = cat.type_of(objs[static_cast<size_t>(i)]);
    for (int j = 0; j < m; ++j) {
      hom[static_cast<size_t>(i) * m + j] =
          cat.hom(objs[static_cast<size_t>(i)], objs[static_cast<size_t>(j)]);
    }
  }
  QCategoryPtr sub = make_category(
      QCategory(cat.base_ptr(), std::move(names), std::move(types), std::move(hom)));
  QFunctor inclusion(sub, c, objs);
  return CompactSubcategory{sub, objs, std::move(inclusion)};
}

QFunctor restrict_to_compacts(const QFunctor& f, std::size_t budget, Exec ex) {
  if (!is_cocontinuous(f)) {
    throw precondition_error("restriction to compacts needs a left adjoint functor");
  }
  CompactSubcategory dc = compact_subcategory(f.dom_ptr(), budget, ex);
  CompactSubcategory cc = compact_subcategory(f.cod_ptr(), budget, ex);
  std::vector<int> graph(dc.objects.size());
  for (size_t i = 0; i < dc.objects.size(); ++i) {
    const int image = f(dc.objects[i]);
    auto it = std::lower_bound(cc.objects.begin(), cc.objects.end(), image);
    if (it == cc.objects.end() || *it != image) {
      throw internal_error("left adjoint functor mapped a compact to a non-compact");
    }
    graph[i] = static_cast<int>(it - cc.objects.begin());
  }
  return QFunctor(dc.cat, cc.cat, std::move(graph));
}

RestrictionFunctor r_functor(const QCategoryPtr& a, std::size_t budget, Exec ex) {
  const QCategory& cat = *a;
  CompactSubcategory compacts = compact_subcategory(a, budget, ex);
  PresheafCategory pc = presheaf_category(compacts.cat, budget, ex);
  std::vector<int> object_map(pc.presheaves.size());
  for (size_t i = 0; i < pc.presheaves.size(); ++i) {
    const Presheaf& phi = pc.presheaves[i];
    // colim(phi, i_A) = join_c i(c) (x) phi(c)
    std::vector<int> parts;
    for (int cidx = 0; cidx < compacts.cat->size(); ++cidx) {
      auto t = tensor(cat, compacts.objects[static_cast<size_t>(cidx)], phi.arrow_at(cidx));
      if (!t) throw precondition_error("R functor needs a cocomplete category");
      parts.push_back(*t);
    }
    auto j = cat.fiber_join(phi.type, parts);
    if (!j) throw precondition_error("R functor needs a cocomplete category");
    object_map[i] = *j;
  }
  bool ff = true;
  for (int i = 0; i < pc.cat->size() && ff; ++i) {
    for (int j = 0; j < pc.cat->size() && ff; ++j) {
      ff = pc.cat->hom(i, j) ==
           cat.hom(object_map[static_cast<size_t>(i)], object_map[static_cast<size_t>(j)]);
    }
  }
  if (!ff) throw internal_error("R_A failed to be fully faithful");
  bool surjective = true;
  for (int x = 0; x < cat.size() && surjective; ++x) {
    bool hit = false;
    for (size_t i = 0; i < object_map.size() && !hit; ++i) {
      hit = cat.iso(object_map[i], x);
    }
    surjective = hit;
  }
  return RestrictionFunctor{std::move(pc), std::move(compacts), std::move(object_map),
                            ff, surjective};
}

std::vector<QFunctor> functors_between(const QCategoryPtr& c, const QCategoryPtr& d,
                                       std::size_t budget) {
  const QCategory& dom = *c;
  const QCategory& cod = *d;
  const Quantaloid& q = dom.base();
  std::vector<QFunctor> out;
  std::vector<int> graph(static_cast<size_t>(dom.size()), -1);
  std::size_t visited = 0;

  auto ok_pair = [&](int i, int j) {
    return q.leq(dom.hom_arrow(i, j),
                 cod.hom_arrow(graph[static_cast<size_t>(i)], graph[static_cast<size_t>(j)]));
  };
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == dom.size()) {
      out.emplace_back(c, d, graph);
      return;
    }
    for (int v = 0; v < cod.size(); ++v) {
      if (++visited > budget) {
        throw resource_error("functor enumeration exceeded budget");
      }
      if (cod.type_of(v) != dom.type_of(depth)) continue;
      graph[static_cast<size_t>(depth)] = v;
      bool ok = true;
      for (int i = 0; i <= depth && ok; ++i) ok = ok_pair(i, depth) && ok_pair(depth, i);
      if (ok) self(self, depth + 1);
    }
  };
  dfs(dfs, 0);
  return out;
}

HomEquivalenceResult hom_equivalence_check(const QCategoryPtr& c, const QCategoryPtr& a,
                                           std::size_t budget, Exec ex) {
  const QCategory& acat = *a;
  const Quantaloid& q = acat.base();
  if (!is_cocomplete(acat)) {
    throw precondition_error("hom equivalence check needs a cocomplete target");
  }
  HomEquivalenceResult out;
  CompactSubcategory ac = compact_subcategory(a, budget, ex);
  const std::vector<QFunctor> lhs = functors_between(c, ac.cat, budget);
  out.functor_count = lhs.size();

  PresheafCategory pc = presheaf_category(c, budget, ex);
  std::vector<QFunctor> rhs;
  for (QFunctor& g : functors_between(pc.cat, a, budget)) {
    if (is_cocontinuous_unchecked(g)) rhs.push_back(std::move(g));
  }
  out.cocontinuous_count = rhs.size();

  // F |-> R_A o P(F): P(F)(phi)(cobj) = join_x A_c(cobj, Fx) o phi(x), then
  // colim over the inclusion of compacts.
  std::vector<QFunctor> mapped;
  for (const QFunctor& f : lhs) {
    std::vector<int> graph(pc.presheaves.size());
    for (size_t i = 0; i < pc.presheaves.size(); ++i) {
      const Presheaf& phi = pc.presheaves[i];
      std::vector<int> parts;
      for (int cobj = 0; cobj < ac.cat->size(); ++cobj) {
        const FiniteLattice& h = q.hom(phi.type, ac.cat->type_of(cobj));
        Elt acc = h.bottom();
        for (int x = 0; x < c->size(); ++x) {
          acc = h.join(acc, q.compose(ac.cat->hom_arrow(cobj, f(x)), phi.arrow_at(x)).elt);
        }
        auto t = tensor(acat, ac.objects[static_cast<size_t>(cobj)],
                        QArrow{phi.type, ac.cat->type_of(cobj), acc});
        if (!t) throw precondition_error("hom equivalence needs a cocomplete target");
        parts.push_back(*t);
      }
      auto j = acat.fiber_join(phi.type, parts);
      if (!j) throw precondition_error("hom equivalence needs a cocomplete target");
      graph[i] = *j;
    }
    mapped.emplace_back(pc.cat, a, std::move(graph));
  }

  // Bijectivity on graphs.
  std::vector<std::vector<int>> mapped_graphs;
  for (const auto& g : mapped) mapped_graphs.push_back(g.graph());
  std::vector<std::vector<int>> rhs_graphs;
  for (const auto& g : rhs) rhs_graphs.push_back(g.graph());
  std::sort(mapped_graphs.begin(), mapped_graphs.end());
  std::sort(rhs_graphs.begin(), rhs_graphs.end());
  out.bijective =
      mapped_graphs.size() == rhs_graphs.size() &&
      std::adjacent_find(mapped_graphs.begin(), mapped_graphs.end()) == mapped_graphs.end() &&
      mapped_graphs == rhs_graphs;

  // Order preservation and reflection.
  bool order_iso = out.bijective;
  for (size_t i = 0; i < lhs.size() && order_iso; ++i) {
    for (size_t j = 0; j < lhs.size() && order_iso; ++j) {
      order_iso = functor_leq(lhs[i], lhs[j]) == functor_leq(mapped[i], mapped[j]);
    }
  }
  out.order_isomorphism = order_iso;
  return out;
}

bool EntailmentAnalysis::rel(int a, int s, int b, int t) const {
  const size_t row = static_cast<size_t>(a) * points + static_cast<size_t>(s);
  const size_t col = static_cast<size_t>(b) * points + static_cast<size_t>(t);
  return order[row * width + col] != 0;
}

EntailmentAnalysis entailment_order(const QCategoryPtr& c, int points, Exec ex) {
  const QCategory& cat = *c;
  const Quantaloid& q = cat.base();
  if (q.object_count() != 1 || points <= 0 ||
      q.hom(0, 0).size() != (1 << (points * points))) {
    throw input_error("entailment order needs a Rel(S,S) base with |S| = " +
                      std::to_string(points));
  }
  Elt diag = 0;
  for (int x = 0; x < points; ++x) diag |= Elt{1} << (x * points + x);
  if (q.identity_elt(0) != diag) {
    throw input_error("entailment order needs the diagonal identity of Rel(S,S)");
  }
  EntailmentAnalysis out;
  out.points = points;
  const int n = cat.size();
  const size_t rows = static_cast<size_t>(n) * static_cast<size_t>(points);
  out.width = rows;
  out.order.assign(rows * rows, 0);
  auto set_rel = [&](int a, int s, int b, int t, bool v) {
    out.order[(static_cast<size_t>(a) * points + s) * rows +
              (static_cast<size_t>(b) * points + t)] = v ? 1 : 0;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Elt m = cat.hom(a, b);
      for (int s = 0; s < points; ++s) {
        for (int t = 0; t < points; ++t) {
          set_rel(a, s, b, t, (m >> (s * points + t)) & 1);
        }
      }
    }
  }
  auto rel_at = [&](int a, int s, int b, int t) {
    return out.order[(static_cast<size_t>(a) * points + s) * rows +
                     (static_cast<size_t>(b) * points + t)] != 0;
  };
  auto equiv = [&](int a, int s, int b, int t) {
    return rel_at(a, s, b, t) && rel_at(b, t, a, s);
  };

  // (x1) skeletality.
  out.x1 = true;
  for (int a = 0; a < n && out.x1; ++a) {
    for (int b = 0; b < n && out.x1; ++b) {
      if (a == b) continue;
      for (int s = 0; s < points && out.x1; ++s) {
        if (equiv(a, s, b, s)) {
          out.x1 = false;
          out.witness_x1 = "(" + cat.name(a) + "," + std::to_string(s) + ") ~ (" +
                           cat.name(b) + "," + std::to_string(s) + ") with distinct objects";
        }
      }
    }
  }

  // (x2) joins of arbitrary object families.
  out.x2 = true;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<std::string> x2_witness(subsets);
  const bool x2_ok = par_all(subsets, ex, [&](size_t mask) {
    for (int j = 0; j < n; ++j) {
      bool works = true;
      for (int b = 0; b < n && works; ++b) {
        for (int s = 0; s < points && works; ++s) {
          for (int t = 0; t < points && works; ++t) {
            bool all = true;
            for (int i = 0; i < n && all; ++i) {
              if (mask & (std::uint64_t{1} << i)) all = rel_at(i, s, b, t);
            }
            works = (rel_at(j, s, b, t) == all);
          }
        }
      }
      if (works) return true;
    }
    return false;
  });
  if (!x2_ok) {
    out.x2 = false;
    out.witness_x2 = "some object family has no join behaving as in (x2)";
  }

  // (x3) tensor elements: for all a, s, t there is b with (b,t) ~ (a,s) and
  // (b,u) bottom for u != t.
  out.x3 = true;
  auto is_bottom = [&](int b, int u) {
    for (int x = 0; x < n; ++x) {
      for (int w = 0; w < points; ++w) {
        if (!rel_at(b, u, x, w)) return false;
      }
    }
    return true;
  };
  for (int a = 0; a < n && out.x3; ++a) {
    for (int s = 0; s < points && out.x3; ++s) {
      for (int t = 0; t < points && out.x3; ++t) {
        bool hit = false;
        for (int b = 0; b < n && !hit; ++b) {
          bool good = equiv(b, t, a, s);
          for (int u = 0; u < points && good; ++u) {
            if (u != t) good = is_bottom(b, u);
          }
          hit = good;
        }
        if (!hit) {
          out.x3 = false;
          out.witness_x3 = "no tensor element for (" + cat.name(a) + "," +
                           std::to_string(s) + ") at " + std::to_string(t);
        }
      }
    }
  }
  return out;
}

}  // namespace qwb
