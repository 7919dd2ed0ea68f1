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

#include "qwb/lattice.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace qwb {

namespace {

std::string describe(const FiniteLattice& l, Elt x) { return l.name(x); }

}  // namespace

FiniteLattice FiniteLattice::from_order(
    std::vector<std::string> elements,
    const std::vector<std::pair<std::string, std::string>>& leq_pairs,
    std::vector<std::string>* warnings) {
  const size_t n = elements.size();
  if (n == 0) throw input_error("lattice needs at least one element");
  std::unordered_map<std::string_view, Elt> idx;
  for (size_t i = 0; i < n; ++i) {
    auto [it, fresh] = idx.emplace(elements[i], static_cast<Elt>(i));
    if (!fresh) throw input_error("duplicate element identifier '" + elements[i] + "'");
  }
  std::vector<std::uint8_t> leq(n * n, 0);
  for (size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (const auto& [lo, hi] : leq_pairs) {
    auto a = idx.find(lo);
    auto b = idx.find(hi);
    if (a == idx.end()) throw input_error("unknown element '" + lo + "' in leq pair");
    if (b == idx.end()) throw input_error("unknown element '" + hi + "' in leq pair");
    leq[static_cast<size_t>(a->second) * n + static_cast<size_t>(b->second)] = 1;
  }
  // Warshall transitive closure.
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      if (!leq[i * n + k]) continue;
      for (size_t j = 0; j < n; ++j) {
        if (leq[k * n + j]) leq[i * n + j] = 1;
      }
    }
  }
  return from_leq_matrix(std::move(elements), std::move(leq), warnings);
}

FiniteLattice FiniteLattice::from_leq_matrix(std::vector<std::string> elements,
                                             std::vector<std::uint8_t> leq,
                                             std::vector<std::string>* warnings) {
  FiniteLattice l;
  l.names_ = std::move(elements);
  l.leq_ = std::move(leq);
  const size_t n = l.names_.size();
  if (n == 0) throw input_error("lattice needs at least one element");
  if (l.leq_.size() != n * n) throw input_error("leq matrix has wrong size");
  l.finish_construction(warnings);
  return l;
}

FiniteLattice FiniteLattice::chain(std::vector<std::string> elements) {
  const size_t n = elements.size();
  std::vector<std::uint8_t> leq(n * n, 0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i; j < n; ++j) leq[i * n + j] = 1;
  }
  return from_leq_matrix(std::move(elements), std::move(leq));
}

FiniteLattice FiniteLattice::powerset(const std::vector<std::string>& atoms) {
  if (atoms.size() > 16) throw input_error("powerset lattice limited to 16 atoms");
  const size_t n = size_t{1} << atoms.size();
  std::vector<std::string> names(n);
  for (size_t mask = 0; mask < n; ++mask) {
    std::string s = "{";
    bool first = true;
    for (size_t a = 0; a < atoms.size(); ++a) {
      if (mask & (size_t{1} << a)) {
        if (!first) s += ",";
        s += atoms[a];
        first = false;
      }
    }
    s += "}";
    names[mask] = std::move(s);
  }
  std::vector<std::uint8_t> leq(n * n, 0);
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) leq[x * n + y] = ((x & ~y) == 0) ? 1 : 0;
  }
  return from_leq_matrix(std::move(names), std::move(leq));
}

void FiniteLattice::finish_construction(std::vector<std::string>* warnings) {
  const size_t n = names_.size();
  if (static_cast<int>(n) > kLatticeSoftLimit && warnings != nullptr) {
    warnings->push_back("lattice has " + std::to_string(n) + " elements (> " +
                        std::to_string(kLatticeSoftLimit) +
                        "); scans will be slow");
  }
  // Reflexivity, antisymmetry, transitivity.
  for (size_t x = 0; x < n; ++x) {
    if (!leq_[x * n + x]) throw input_error("order not reflexive at '" + names_[x] + "'");
  }
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) {
      if (x != y && leq_[x * n + y] && leq_[y * n + x]) {
        throw input_error("order not antisymmetric: '" + names_[x] + "' and '" +
                          names_[y] + "' are mutually below each other");
      }
    }
  }
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) {
      if (!leq_[x * n + y]) continue;
      for (size_t z = 0; z < n; ++z) {
        if (leq_[y * n + z] && !leq_[x * n + z]) {
          throw input_error("order not transitive through '" + names_[y] + "'");
        }
      }
    }
  }
  // Bottom and top.
  auto find_extreme = [&](bool want_bottom) -> Elt {
    for (size_t c = 0; c < n; ++c) {
      bool ok = true;
      for (size_t x = 0; x < n && ok; ++x) {
        ok = want_bottom ? leq(static_cast<Elt>(c), static_cast<Elt>(x))
                         : leq(static_cast<Elt>(x), static_cast<Elt>(c));
      }
      if (ok) return static_cast<Elt>(c);
    }
    throw input_error(want_bottom ? "order has no bottom element"
                                  : "order has no top element");
  };
  bottom_ = find_extreme(true);
  top_ = find_extreme(false);
  // Binary joins and meets by scanning bounds.
  join_.assign(n * n, -1);
  meet_.assign(n * n, -1);
  std::vector<Elt> bounds;
  for (size_t x = 0; x < n; ++x) {
    for (size_t y = 0; y < n; ++y) {
      const Elt ex = static_cast<Elt>(x);
      const Elt ey = static_cast<Elt>(y);
      bounds.clear();
      for (Elt c = 0; c < static_cast<Elt>(n); ++c) {
        if (leq(ex, c) && leq(ey, c)) bounds.push_back(c);
      }
      for (Elt c : bounds) {
        bool least = true;
        for (Elt d : bounds) least = least && leq(c, d);
        if (least) {
          join_[x * n + y] = c;
          break;
        }
      }
      if (join_[x * n + y] < 0) {
        throw input_error("elements '" + names_[x] + "' and '" + names_[y] +
                          "' have no least upper bound");
      }
      bounds.clear();
      for (Elt c = 0; c < static_cast<Elt>(n); ++c) {
        if (leq(c, ex) && leq(c, ey)) bounds.push_back(c);
      }
      for (Elt c : bounds) {
        bool greatest = true;
        for (Elt d : bounds) greatest = greatest && leq(d, c);
        if (greatest) {
          meet_[x * n + y] = c;
          break;
        }
      }
      if (meet_[x * n + y] < 0) {
        throw input_error("elements '" + names_[x] + "' and '" + names_[y] +
                          "' have no greatest lower bound");
      }
    }
  }
}

Elt FiniteLattice::index(std::string_view element) const {
  auto found = find(element);
  if (!found) throw input_error("unknown lattice element '" + std::string(element) + "'");
  return *found;
}

std::optional<Elt> FiniteLattice::find(std::string_view element) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == element) return static_cast<Elt>(i);
  }
  return std::nullopt;
}

Elt FiniteLattice::join(std::span<const Elt> subset) const {
  Elt acc = bottom_;
  for (Elt x : subset) {
    if (x < 0 || x >= size()) throw input_error("element index out of range in join");
    acc = join(acc, x);
  }
  return acc;
}

Elt FiniteLattice::meet(std::span<const Elt> subset) const {
  Elt acc = top_;
  for (Elt x : subset) {
    if (x < 0 || x >= size()) throw input_error("element index out of range in meet");
    acc = meet(acc, x);
  }
  return acc;
}

bool FiniteLattice::is_distributive() const {
  const int n = size();
  for (Elt x = 0; x < n; ++x) {
    for (Elt y = 0; y < n; ++y) {
      for (Elt z = 0; z < n; ++z) {
        if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return false;
      }
    }
  }
  return true;
}

Elt FiniteLattice::heyting_implication(Elt u, Elt v) const {
  if (!is_distributive()) {
    throw precondition_error(
        "heyting implication needs a distributive lattice; '" + describe(*this, u) +
        " => " + describe(*this, v) + "' would not residuate");
  }
  Elt acc = bottom_;
  for (Elt w = 0; w < size(); ++w) {
    if (leq(meet(w, u), v)) acc = join(acc, w);
  }
  return acc;
}

std::vector<Elt> FiniteLattice::join_irreducibles() const {
  std::vector<Elt> out;
  for (Elt x = 0; x < size(); ++x) {
    if (x == bottom_) continue;
    bool irreducible = true;
    for (Elt a = 0; a < size() && irreducible; ++a) {
      for (Elt b = 0; b < size() && irreducible; ++b) {
        if (join(a, b) == x && a != x && b != x) irreducible = false;
      }
    }
    if (irreducible) out.push_back(x);
  }
  return out;
}

std::vector<Elt> FiniteLattice::totally_compact_elements() const {
  std::vector<Elt> out;
  for (Elt c = 0; c < size(); ++c) {
    if (c == bottom_) continue;  // the empty down-set is a witness against bottom
    bool prime = true;
    for (Elt x = 0; x < size() && prime; ++x) {
      for (Elt y = 0; y < size() && prime; ++y) {
        if (leq(c, join(x, y)) && !leq(c, x) && !leq(c, y)) prime = false;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

bool FiniteLattice::is_totally_algebraic() const {
  const std::vector<Elt> compacts = totally_compact_elements();
  for (Elt x = 0; x < size(); ++x) {
    Elt acc = bottom_;
    for (Elt c : compacts) {
      if (leq(c, x)) acc = join(acc, c);
    }
    if (acc != x) return false;
  }
  return true;
}

std::vector<Elt> FiniteLattice::down_set(Elt x) const {
  std::vector<Elt> out;
  for (Elt y = 0; y < size(); ++y) {
    if (leq(y, x)) out.push_back(y);
  }
  return out;
}

std::vector<Elt> FiniteLattice::up_set(Elt x) const {
  std::vector<Elt> out;
  for (Elt y = 0; y < size(); ++y) {
    if (leq(x, y)) out.push_back(y);
  }
  return out;
}

bool is_down_closed(const FiniteLattice& lattice, std::span<const Elt> members) {
  std::vector<std::uint8_t> in(static_cast<size_t>(lattice.size()), 0);
  for (Elt x : members) in[static_cast<size_t>(x)] = 1;
  for (Elt x : members) {
    for (Elt y = 0; y < lattice.size(); ++y) {
      if (lattice.leq(y, x) && !in[static_cast<size_t>(y)]) return false;
    }
  }
  return true;
}

DownSet down_closure(const FiniteLattice& lattice, std::span<const Elt> members) {
  std::vector<std::uint8_t> in(static_cast<size_t>(lattice.size()), 0);
  for (Elt x : members) {
    for (Elt y = 0; y < lattice.size(); ++y) {
      if (lattice.leq(y, x)) in[static_cast<size_t>(y)] = 1;
    }
  }
  DownSet d;
  for (Elt y = 0; y < lattice.size(); ++y) {
    if (in[static_cast<size_t>(y)]) d.members.push_back(y);
  }
  return d;
}

std::vector<DownSet> all_down_sets(const FiniteLattice& lattice) {
  const int n = lattice.size();
  if (n > 20) throw resource_error("down-set enumeration limited to 20 elements");
  std::vector<DownSet> out;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<Elt> members;
    for (Elt x = 0; x < n; ++x) {
      if (mask & (std::uint32_t{1} << x)) members.push_back(x);
    }
    if (is_down_closed(lattice, members)) out.push_back(DownSet{std::move(members)});
  }
  return out;
}

MonotoneMap::MonotoneMap(LatticePtr dom, LatticePtr cod, std::vector<Elt> graph)
    : dom_(std::move(dom)), cod_(std::move(cod)), graph_(std::move(graph)) {
  if (!dom_ || !cod_) throw input_error("monotone map needs both lattices");
  if (graph_.size() != static_cast<size_t>(dom_->size())) {
    throw input_error("monotone map graph has wrong size");
  }
  for (Elt v : graph_) {
    if (v < 0 || v >= cod_->size()) throw input_error("monotone map value out of range");
  }
  for (Elt x = 0; x < dom_->size(); ++x) {
    for (Elt y = 0; y < dom_->size(); ++y) {
      if (dom_->leq(x, y) && !cod_->leq(graph_[static_cast<size_t>(x)], graph_[static_cast<size_t>(y)])) {
        throw input_error("map not monotone: " + dom_->name(x) + " <= " + dom_->name(y) +
                          " but images are not ordered");
      }
    }
  }
}

MonotoneMap MonotoneMap::identity(LatticePtr lattice) {
  std::vector<Elt> graph(static_cast<size_t>(lattice->size()));
  for (Elt x = 0; x < lattice->size(); ++x) graph[static_cast<size_t>(x)] = x;
  LatticePtr copy = lattice;
  return MonotoneMap(std::move(lattice), std::move(copy), std::move(graph));
}

MonotoneMap MonotoneMap::constant(LatticePtr dom, LatticePtr cod, Elt value) {
  std::vector<Elt> graph(static_cast<size_t>(dom->size()), value);
  return MonotoneMap(std::move(dom), std::move(cod), std::move(graph));
}

MonotoneMap compose(const MonotoneMap& f, const MonotoneMap& g) {
  if (!(g.cod() == f.dom())) throw input_error("monotone maps not composable");
  std::vector<Elt> graph(static_cast<size_t>(g.dom().size()));
  for (Elt x = 0; x < g.dom().size(); ++x) graph[static_cast<size_t>(x)] = f(g(x));
  return MonotoneMap(g.dom_ptr(), f.cod_ptr(), std::move(graph));
}

bool is_sup_morphism(const MonotoneMap& f) {
  const FiniteLattice& d = f.dom();
  const FiniteLattice& c = f.cod();
  if (f(d.bottom()) != c.bottom()) return false;
  for (Elt x = 0; x < d.size(); ++x) {
    for (Elt y = 0; y < d.size(); ++y) {
      if (f(d.join(x, y)) != c.join(f(x), f(y))) return false;
    }
  }
  return true;
}

std::optional<MonotoneMap> adjoint_of_monotone(const MonotoneMap& f,
                                               AdjointSide side) {
  const FiniteLattice& d = f.dom();
  const FiniteLattice& c = f.cod();
  std::vector<Elt> graph(static_cast<size_t>(c.size()));
  for (Elt y = 0; y < c.size(); ++y) {
    std::vector<Elt> pre;
    for (Elt x = 0; x < d.size(); ++x) {
      const bool keep = side == AdjointSide::right ? c.leq(f(x), y) : c.leq(y, f(x));
      if (keep) pre.push_back(x);
    }
    graph[static_cast<size_t>(y)] =
        side == AdjointSide::right ? d.join(pre) : d.meet(pre);
  }
  // The candidate may fail monotonicity for non-sup/inf-preserving f.
  MonotoneMap g = [&]() -> MonotoneMap {
    return MonotoneMap(f.cod_ptr(), f.dom_ptr(), std::move(graph));
  }();
  for (Elt x = 0; x < d.size(); ++x) {
    for (Elt y = 0; y < c.size(); ++y) {
      const bool lhs = side == AdjointSide::right ? c.leq(f(x), y) : d.leq(g(y), x);
      const bool rhs = side == AdjointSide::right ? d.leq(x, g(y)) : c.leq(y, f(x));
      if (lhs != rhs) return std::nullopt;
    }
  }
  return g;
}

Elt Sublattice::from_parent(Elt parent) const {
  auto it = std::lower_bound(to_parent.begin(), to_parent.end(), parent);
  if (it == to_parent.end() || *it != parent) {
    throw input_error("element '" + std::to_string(parent) + "' is not in the sublattice");
  }
  return static_cast<Elt>(it - to_parent.begin());
}

Sublattice restrict_lattice(const FiniteLattice& parent, std::vector<Elt> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const size_t m = members.size();
  std::vector<std::string> names(m);
  std::vector<std::uint8_t> leq(m * m, 0);
  for (size_t i = 0; i < m; ++i) {
    names[i] = parent.name(members[i]);
    for (size_t j = 0; j < m; ++j) {
      leq[i * m + j] = parent.leq(members[i], members[j]) ? 1 : 0;
    }
  }
  Sublattice sub;
  sub.lattice = make_lattice(FiniteLattice::from_leq_matrix(std::move(names), std::move(leq)));
  sub.to_parent = std::move(members);
  return sub;
}

SupSplitting split_idempotent_sup(const MonotoneMap& e) {
  if (!(e.dom() == e.cod())) {
    throw precondition_error("idempotent splitting needs an endo-map");
  }
  if (!is_sup_morphism(e)) {
    throw precondition_error("idempotent splitting needs a sup-morphism");
  }
  for (Elt x = 0; x < e.dom().size(); ++x) {
    if (e(e(x)) != e(x)) {
      throw precondition_error("map is not idempotent at '" + e.dom().name(x) + "'");
    }
  }
  std::vector<Elt> fixed;
  for (Elt x = 0; x < e.dom().size(); ++x) {
    if (e(x) == x) fixed.push_back(x);
  }
  Sublattice sub = restrict_lattice(e.dom(), std::move(fixed));
  std::vector<Elt> incl(sub.to_parent.begin(), sub.to_parent.end());
  MonotoneMap inclusion(sub.lattice, e.dom_ptr(), std::move(incl));
  std::vector<Elt> proj(static_cast<size_t>(e.dom().size()));
  for (Elt x = 0; x < e.dom().size(); ++x) {
    proj[static_cast<size_t>(x)] = sub.from_parent(e(x));
  }
  MonotoneMap projection(e.dom_ptr(), sub.lattice, std::move(proj));
  // Splitting laws, asserted pointwise.
  for (Elt v = 0; v < sub.lattice->size(); ++v) {
    if (projection(inclusion(v)) != v) {
      throw internal_error("idempotent splitting: projection o inclusion != id");
    }
  }
  for (Elt x = 0; x < e.dom().size(); ++x) {
    if (inclusion(projection(x)) != e(x)) {
      throw internal_error("idempotent splitting: inclusion o projection != e");
    }
  }
  return SupSplitting{std::move(sub), std::move(inclusion), std::move(projection)};
}

}  // namespace qwb
