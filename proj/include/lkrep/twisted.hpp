#pragma once

// Diagram symmetries and the restriction of the representation to the
// subspace they fix.  A symmetry group acts on roots through its action on
// simple roots; the fixed subspace has one basis vector per root orbit, and
// the maps attached to symmetric words descend to it.  The descent is
// computed two independent ways: by restricting the full matrix and checking
// orbit-constancy of its columns, and by assembling the known block shapes
// of the orbit meshes directly.

#include <lkrep/families.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lkrep {

using VertexPerm = std::vector<int>;

namespace detail {

inline bool perm_is_automorphism(const CoxeterGraph& g, const VertexPerm& p) {
  if (static_cast<int>(p.size()) != g.n) return false;
  std::vector<char> hit(g.n, 0);
  for (int v : p) {
    if (v < 0 || v >= g.n || hit[v]) return false;
    hit[v] = 1;
  }
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j)
      if (g.mij(p[i], p[j]) != g.mij(i, j)) return false;
  return true;
}

inline VertexPerm perm_compose(const VertexPerm& a, const VertexPerm& b) {
  VertexPerm r(b.size());
  for (size_t k = 0; k < b.size(); ++k) r[k] = a[b[k]];
  return r;
}

inline VertexPerm perm_identity(int n) {
  VertexPerm p(n);
  for (int k = 0; k < n; ++k) p[k] = k;
  return p;
}

inline void aut_search(const CoxeterGraph& g, int v, VertexPerm& img, std::vector<char>& used,
                       std::vector<VertexPerm>& out) {
  if (v == g.n) {
    out.push_back(img);
    return;
  }
  for (int w = 0; w < g.n; ++w) {
    if (used[w]) continue;
    bool ok = true;
    for (int u = 0; u < v && ok; ++u) ok = g.mij(u, v) == g.mij(img[u], w);
    if (!ok) continue;
    img[v] = w;
    used[w] = 1;
    aut_search(g, v + 1, img, used, out);
    used[w] = 0;
  }
}

}  // namespace detail

// Simple roots permute by p, so a root written in simple-root coordinates
// moves its k-th coordinate to position p[k].
inline Root perm_root(const VertexPerm& p, const Root& r) {
  Root out(r.size(), 0);
  for (size_t k = 0; k < r.size(); ++k) out[p[k]] = r[k];
  return out;
}

inline Word perm_word(const VertexPerm& p, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (int letter : w) out.push_back(p[letter]);
  return out;
}

struct GraphAutGroup {
  CoxeterGraph graph;
  std::vector<VertexPerm> elements;    // sorted, identity first
  std::vector<VertexPerm> generators;  // subset whose closure is `elements`

  size_t order() const { return elements.size(); }
};

// Full symmetry group of the diagram by backtracking over vertex images.
inline GraphAutGroup automorphisms(const CoxeterGraph& g) {
  GraphAutGroup G;
  G.graph = g;
  VertexPerm img(g.n, -1);
  std::vector<char> used(g.n, 0);
  detail::aut_search(g, 0, img, used, G.elements);
  std::sort(G.elements.begin(), G.elements.end());
  for (const VertexPerm& p : G.elements)
    if (p != detail::perm_identity(g.n)) G.generators.push_back(p);
  return G;
}

// Closure of the given permutations, each validated against the diagram.
inline GraphAutGroup generated_subgroup(const CoxeterGraph& g, std::vector<VertexPerm> gens) {
  GraphAutGroup G;
  G.graph = g;
  for (const VertexPerm& p : gens)
    if (!detail::perm_is_automorphism(g, p)) fail(Err::BadInput, "not a diagram symmetry");
  std::set<VertexPerm> closed;
  closed.insert(detail::perm_identity(g.n));
  std::vector<VertexPerm> fresh(closed.begin(), closed.end());
  while (!fresh.empty()) {
    std::vector<VertexPerm> next;
    for (const VertexPerm& p : fresh)
      for (const VertexPerm& q : gens) {
        VertexPerm r = detail::perm_compose(q, p);
        if (closed.insert(r).second) next.push_back(r);
      }
    fresh = std::move(next);
  }
  G.elements.assign(closed.begin(), closed.end());
  G.generators = std::move(gens);
  return G;
}

// Orbit coordinates on a root table.  Root orbits are listed by least member
// index with members ascending, so the ordering is reproducible; the table
// holds every root of a given depth or none, and symmetries preserve depth,
// so orbits never straddle the truncation boundary.
struct OrbitBasis {
  std::shared_ptr<const RootTable> table;
  GraphAutGroup group;
  std::vector<std::vector<uint32_t>> orbits;
  std::vector<uint32_t> orbit_of;
  std::vector<std::vector<int>> vertex_orbits;
  std::vector<int> vertex_orbit_of;

  uint32_t dim() const { return static_cast<uint32_t>(orbits.size()); }
};

inline OrbitBasis orbit_basis(std::shared_ptr<const RootTable> table, const GraphAutGroup& G) {
  const RootTable& t = *table;
  if (t.graph.n != G.graph.n) fail(Err::BadInput, "group and table have different diagrams");
  OrbitBasis B;
  B.table = std::move(table);
  B.group = G;
  B.orbit_of.assign(t.size(), UINT32_MAX);
  for (uint32_t r = 0; r < t.size(); ++r) {
    if (B.orbit_of[r] != UINT32_MAX) continue;
    std::set<uint32_t> members;
    for (const VertexPerm& p : G.elements) {
      auto idx = t.find(perm_root(p, t.roots[r]));
      if (!idx) fail(Err::BadInput, "symmetry image of a stored root is missing");
      members.insert(*idx);
    }
    uint32_t id = B.dim();
    for (uint32_t m : members) B.orbit_of[m] = id;
    B.orbits.emplace_back(members.begin(), members.end());
  }
  B.vertex_orbit_of.assign(t.graph.n, -1);
  for (int v = 0; v < t.graph.n; ++v) {
    if (B.vertex_orbit_of[v] >= 0) continue;
    std::set<int> members;
    for (const VertexPerm& p : G.elements) members.insert(p[v]);
    int id = static_cast<int>(B.vertex_orbits.size());
    for (int m : members) B.vertex_orbit_of[m] = id;
    B.vertex_orbits.emplace_back(members.begin(), members.end());
  }
  return B;
}

// The family is equivariant when its value at (i, r) matches the value at
// the image pair under every symmetry.  Generators suffice: the property is
// closed under composition.
inline bool check_equivariance(const LKFamily& fam, const GraphAutGroup& G) {
  const RootTable& t = *fam.table;
  if (t.graph.n != G.graph.n) fail(Err::BadInput, "group and table have different diagrams");
  for (const VertexPerm& p : G.generators)
    for (uint32_t r = 0; r < t.size(); ++r) {
      auto img = t.find(perm_root(p, t.roots[r]));
      if (!img) fail(Err::BadInput, "symmetry image of a stored root is missing");
      for (int i = 0; i < t.graph.n; ++i)
        if (!(fam.value(i, r) == fam.value(p[i], *img))) return false;
    }
  return true;
}

// Restriction of the word's map to the fixed subspace, in orbit coordinates.
// Requires an equivariant family and a word whose class is stable under
// every symmetry.  On safe columns the restriction must be exact: every
// coefficient vector is constant on orbits, and any violation aborts rather
// than truncating.
inline Endo<LaurentPoly> twisted_endo(const LKFamily& fam, const OrbitBasis& basis, const Word& w,
                                      size_t cap = kDefaultCap) {
  if (fam.table != basis.table) fail(Err::BadInput, "basis built over a different table");
  const RootTable& t = *fam.table;
  if (!check_equivariance(fam, basis.group)) fail(Err::NotEquivariant, "family is not equivariant");
  for (int letter : w)
    if (letter < 0 || letter >= t.graph.n) fail(Err::BadInput, "letter out of range");
  for (const VertexPerm& p : basis.group.generators)
    if (!words_equal(t.graph, w, perm_word(p, w), cap))
      fail(Err::NotFixedWord, "word class moves under the symmetry group");
  Endo<LaurentPoly> U = apply_word(all_psi(fam), w);
  Endo<LaurentPoly> out;
  out.dim = basis.dim();
  out.columns.resize(out.dim);
  out.safe.assign(out.dim, 1);
  for (uint32_t co = 0; co < out.dim; ++co) {
    std::map<uint32_t, LaurentPoly> col;
    bool safe = true;
    for (uint32_t member : basis.orbits[co]) {
      if (!U.safe[member]) {
        safe = false;
        break;
      }
      for (const auto& [row, v] : U.columns[member]) {
        auto it = col.find(row);
        if (it == col.end())
          col.emplace(row, v);
        else {
          it->second += v;
          if (it->second.is_zero()) col.erase(it);
        }
      }
    }
    if (!safe) {
      out.safe[co] = 0;
      continue;
    }
    std::map<uint32_t, uint32_t> hits;
    for (const auto& [row, v] : col) {
      uint32_t o = basis.orbit_of[row];
      auto [it, fresh] = out.columns[co].emplace(o, v);
      if (!fresh && !(it->second == v))
        fail(Err::StabilizationFailure, "column is not constant on an orbit");
      ++hits[o];
    }
    for (const auto& [o, cnt] : hits)
      if (cnt != basis.orbits[o].size())
        fail(Err::StabilizationFailure, "column vanishes on part of an orbit");
  }
  return out;
}

namespace detail {

// Members of the i,j mesh through r, or nothing if the closure leaves the
// table.  Same closure as mesh(), but truncation is reported instead of
// thrown so incomplete classes can be skipped column by column.
inline std::optional<std::vector<uint32_t>> mesh_members(const RootTable& t, uint32_t r, int i,
                                                         int j) {
  std::set<uint32_t> seen{r};
  std::vector<uint32_t> todo{r};
  while (!todo.empty()) {
    uint32_t cur = todo.back();
    todo.pop_back();
    for (int v : {i, j}) {
      int32_t m = t.image(v, cur);
      if (m == kBoundary) return std::nullopt;
      if (m == kNegSimple || m < 0) continue;
      if (seen.insert(static_cast<uint32_t>(m)).second) todo.push_back(static_cast<uint32_t>(m));
    }
  }
  return std::vector<uint32_t>(seen.begin(), seen.end());
}

struct BlockSink {
  Endo<LaurentPoly>& out;
  const OrbitBasis& basis;

  void add(uint32_t row_orbit, uint32_t col_orbit, const LaurentPoly& v) {
    if (v.is_zero()) return;
    auto it = out.columns[col_orbit].find(row_orbit);
    if (it == out.columns[col_orbit].end())
      out.columns[col_orbit].emplace(row_orbit, v);
    else {
      it->second += v;
      if (it->second.is_zero()) out.columns[col_orbit].erase(it);
    }
  }

  void add_at(uint32_t row_orbit, uint32_t col_root, const LaurentPoly& v) {
    add(row_orbit, basis.orbit_of[col_root], v);
  }
};

}  // namespace detail

// The map of the parabolic Garside element of a vertex orbit J on the fixed
// subspace, assembled from the mesh shapes directly instead of by matrix
// products.  Every orbit of i,j meshes contributes a fixed block, and the
// one or two rows indexed by the simple-root orbits pick up the values of
// the restricted forms.  Supports |J| = 1 for any group and |J| = 2 for a
// group of order two; larger orbits are not covered by the block tables.
inline Endo<LaurentPoly> closed_form_delta(const LKFamily& fam, const OrbitBasis& basis,
                                           const std::vector<int>& J) {
  if (fam.table != basis.table) fail(Err::BadInput, "basis built over a different table");
  const RootTable& t = *fam.table;
  const LKParams& P = fam.params;
  std::vector<int> key = J;
  std::sort(key.begin(), key.end());
  bool listed = false;
  for (const auto& vo : basis.vertex_orbits) listed = listed || vo == key;
  if (!listed) fail(Err::BadInput, "J is not a vertex orbit");
  if (key.size() > 2) fail(Err::UnsupportedOrbit, "no block table for orbits of three or more");
  if (!check_equivariance(fam, basis.group)) fail(Err::NotEquivariant, "family is not equivariant");

  Endo<LaurentPoly> out;
  out.dim = basis.dim();
  out.columns.resize(out.dim);
  out.safe.assign(out.dim, 1);
  detail::BlockSink sink{out, basis};

  if (key.size() == 1) {
    // One fixed vertex: loops give d, pairs give the two-by-two ascent
    // block, and the simple-root row adds the plain restricted form.  The
    // orbit-column image is summed over the members first and then read off
    // at one representative per row orbit, which is the fold convention.
    int i = key[0];
    uint32_t rowJ = basis.orbit_of[t.simple_index(i)];
    for (uint32_t co = 0; co < out.dim; ++co) {
      std::map<uint32_t, LaurentPoly> img;
      bool safe = true;
      for (uint32_t r : basis.orbits[co]) {
        int32_t m = t.image(i, r);
        if (m == kNegSimple) continue;
        if (m == kBoundary) {
          safe = false;
          break;
        }
        uint32_t mr = static_cast<uint32_t>(m);
        if (mr == r)
          img[r] += P.d;
        else if (t.depth[mr] > t.depth[r]) {
          img[r] += P.a;
          img[mr] += P.c;
        } else {
          img[mr] += P.b;
        }
      }
      if (!safe) {
        out.safe[co] = 0;
        continue;
      }
      for (const auto& [row, v] : img)
        if (row == basis.orbits[basis.orbit_of[row]].front()) sink.add(basis.orbit_of[row], co, v);
      LaurentPoly fj;
      for (uint32_t member : basis.orbits[co]) fj += fam.value(i, member);
      sink.add(rowJ, co, fj);
    }
    return out;
  }

  if (basis.group.order() != 2)
    fail(Err::UnsupportedOrbit, "two-vertex orbits need a group of order two");
  int i = key[0], j = key[1];
  const VertexPerm& g = basis.group.elements[1];
  int m_ij = t.graph.mij(i, j);
  auto idx_of = [&](const Root& r) {
    auto idx = t.find(r);
    if (!idx) fail(Err::TruncatedTable, "required root is not stored");
    return *idx;
  };
  auto g_index = [&](uint32_t r) { return idx_of(perm_root(g, t.roots[r])); };
  auto up = [&](int v, uint32_t r) {
    int32_t m = t.image(v, r);
    if (m < 0 || basis.table->depth[static_cast<uint32_t>(m)] <= t.depth[r])
      fail(Err::StabilizationFailure, "mesh member does not ascend as the shape requires");
    return static_cast<uint32_t>(m);
  };
  const LaurentPoly &a = P.a, &b = P.b, &c = P.c, &d = P.d;

  // Blocks, one mesh class at a time.
  std::vector<char> visited(t.size(), 0);
  for (uint32_t r = 0; r < t.size(); ++r) {
    if (visited[r]) continue;
    auto members = detail::mesh_members(t, r, i, j);
    if (!members) {
      // Truncated class: every column it touches is unusable.  The partial
      // closure reached from r is enough, its mirror is marked on its own.
      std::set<uint32_t> partial{r};
      std::vector<uint32_t> todo{r};
      while (!todo.empty()) {
        uint32_t cur = todo.back();
        todo.pop_back();
        visited[cur] = 1;
        out.safe[basis.orbit_of[cur]] = 0;
        for (int v : {i, j}) {
          int32_t m = t.image(v, cur);
          if (m < 0) continue;
          if (partial.insert(static_cast<uint32_t>(m)).second)
            todo.push_back(static_cast<uint32_t>(m));
        }
      }
      continue;
    }
    Mesh mesh_info = mesh(t, r, i, j);
    std::vector<uint32_t> mem = *members;
    std::set<uint32_t> mirror;
    for (uint32_t x : mem) mirror.insert(g_index(x));
    bool stable = mirror == std::set<uint32_t>(mem.begin(), mem.end());
    for (uint32_t x : mem) visited[x] = 1;
    for (uint32_t x : mirror) visited[x] = 1;
    std::vector<uint32_t> sorted = mesh_info.members;

    switch (mesh_info.type) {
      case 1:
      case 5:
        // Classes through the simple roots act by zero on their columns.
        break;
      case 2:
      case 6: {
        uint32_t o = basis.orbit_of[sorted[0]];
        sink.add(o, o, mesh_info.type == 2 ? d * d : d * d * d);
        break;
      }
      case 3: {
        if (stable) fail(Err::StabilizationFailure, "a two-chain class cannot be stable");
        uint32_t o1 = basis.orbit_of[sorted[0]], o2 = basis.orbit_of[sorted[1]];
        sink.add(o1, o1, a * d);
        sink.add(o2, o1, c * d);
        sink.add(o1, o2, b * d);
        break;
      }
      case 7: {
        if (stable) fail(Err::StabilizationFailure, "a three-chain class cannot be stable");
        uint32_t o1 = basis.orbit_of[sorted[0]], o2 = basis.orbit_of[sorted[1]],
                 o3 = basis.orbit_of[sorted[2]];
        sink.add(o1, o1, a * d * d);
        sink.add(o2, o1, a * c * d);
        sink.add(o3, o1, c * c * d);
        sink.add(o1, o2, a * b * d);
        sink.add(o2, o2, b * c * d);
        sink.add(o1, o3, b * b * d);
        break;
      }
      case 4: {
        uint32_t bot = sorted[0];
        uint32_t ui = up(i, bot), uj = up(j, bot), top = up(i, uj);
        if (stable) {
          uint32_t o1 = basis.orbit_of[bot], o2 = basis.orbit_of[ui], o4 = basis.orbit_of[top];
          if (basis.orbit_of[uj] != o2)
            fail(Err::StabilizationFailure, "stable square with split middle orbit");
          sink.add(o1, o1, a * a);
          sink.add(o2, o1, a * c);
          sink.add(o4, o1, c * c);
          sink.add(o1, o2, LaurentPoly(2) * a * b);
          sink.add(o2, o2, b * c);
          sink.add(o1, o4, b * b);
        } else {
          uint32_t o1 = basis.orbit_of[bot], o2 = basis.orbit_of[uj], o3 = basis.orbit_of[ui],
                   o4 = basis.orbit_of[top];
          sink.add(o1, o1, a * a);
          sink.add(o2, o1, a * c);
          sink.add(o3, o1, a * c);
          sink.add(o4, o1, c * c);
          sink.add(o1, o2, a * b);
          sink.add(o3, o2, b * c);
          sink.add(o1, o3, a * b);
          sink.add(o2, o3, b * c);
          sink.add(o1, o4, b * b);
        }
        break;
      }
      case 8: {
        uint32_t bot = sorted[0];
        if (stable) {
          uint32_t ga = up(i, bot), be = up(j, ga), top = up(i, be);
          uint32_t o1 = basis.orbit_of[bot], o2 = basis.orbit_of[ga], o3 = basis.orbit_of[be],
                   o4 = basis.orbit_of[top];
          sink.add(o1, o1, a * (a * a + b * c));
          sink.add(o2, o1, a * a * c);
          sink.add(o3, o1, a * c * c);
          sink.add(o4, o1, c * c * c);
          sink.add(o1, o2, LaurentPoly(2) * a * a * b);
          sink.add(o2, o2, LaurentPoly(2) * a * b * c);
          sink.add(o3, o2, b * c * c);
          sink.add(o1, o3, LaurentPoly(2) * a * b * b);
          sink.add(o2, o3, b * b * c);
          sink.add(o1, o4, b * b * b);
        } else {
          uint32_t bot2 = g_index(bot);
          uint32_t ga = up(i, bot), be = up(j, ga), top = up(i, be);
          uint32_t ga2 = up(i, bot2), be2 = up(j, ga2);
          uint32_t o1 = basis.orbit_of[bot], o2 = basis.orbit_of[ga], o3 = basis.orbit_of[ga2],
                   o4 = basis.orbit_of[be], o5 = basis.orbit_of[be2], o6 = basis.orbit_of[top];
          sink.add(o1, o1, a * (a * a + b * c));
          sink.add(o2, o1, a * a * c);
          sink.add(o3, o1, a * a * c);
          sink.add(o4, o1, a * c * c);
          sink.add(o5, o1, a * c * c);
          sink.add(o6, o1, c * c * c);
          sink.add(o1, o2, a * a * b);
          sink.add(o2, o2, a * b * c);
          sink.add(o3, o2, a * b * c);
          sink.add(o5, o2, b * c * c);
          sink.add(o1, o3, a * a * b);
          sink.add(o2, o3, a * b * c);
          sink.add(o3, o3, a * b * c);
          sink.add(o4, o3, b * c * c);
          sink.add(o1, o4, a * b * b);
          sink.add(o3, o4, b * b * c);
          sink.add(o1, o5, a * b * b);
          sink.add(o2, o5, b * b * c);
          sink.add(o1, o6, b * b * b);
        }
        break;
      }
      default:
        fail(Err::BadInput, "unclassified mesh");
    }
  }

  // Form rows.  For a commuting pair only the simple-root orbit row appears,
  // scaled by d; for a braided pair the restricted form and the composite
  // form feed two rows.
  uint32_t rowJ = basis.orbit_of[t.simple_index(i)];
  std::optional<uint32_t> rowJ2;
  if (m_ij == 3) {
    Root both(t.graph.n, 0);
    both[i] = both[j] = 1;
    rowJ2 = basis.orbit_of[idx_of(both)];
  }
  for (uint32_t co = 0; co < out.dim; ++co) {
    if (!out.safe[co]) continue;
    LaurentPoly fj, fprime;
    for (uint32_t member : basis.orbits[co]) {
      fj += fam.value(i, member);
      if (m_ij != 3) continue;
      int32_t m = t.image(j, member);
      if (m == kNegSimple) continue;
      if (m == kBoundary) fail(Err::TruncatedTable, "complete mesh reaches the boundary");
      uint32_t mr = static_cast<uint32_t>(m);
      if (mr == member)
        fprime += d * fam.value(i, member);
      else if (t.depth[mr] > t.depth[member]) {
        fprime += a * fam.value(i, member);
        fprime += c * fam.value(i, mr);
      } else {
        fprime += b * fam.value(i, mr);
      }
    }
    if (m_ij == 2) {
      sink.add(rowJ, co, d * fj);
    } else {
      sink.add(rowJ, co, b * c * fj + a * fprime);
      sink.add(*rowJ2, co, c * fprime);
    }
  }
  for (uint32_t co = 0; co < out.dim; ++co)
    if (!out.safe[co]) out.columns[co].clear();
  return out;
}

// Average of an orbit in simple-root coordinates, exact.
inline std::vector<Rat> alpha_theta(const OrbitBasis& basis, uint32_t orbit) {
  if (orbit >= basis.dim()) fail(Err::BadInput, "orbit index out of range");
  const RootTable& t = *basis.table;
  std::vector<Rat> avg(t.graph.n, Rat(0));
  for (uint32_t member : basis.orbits[orbit])
    for (int k = 0; k < t.graph.n; ++k) avg[k] += Rat(t.roots[member][k]);
  for (Rat& v : avg) v /= Rat(static_cast<long>(basis.orbits[orbit].size()));
  return avg;
}

// Groups of distinct orbits sharing the same average, ordered by first
// member.  Empty means the averages separate the orbits.
inline std::vector<std::vector<uint32_t>> collision_scan(const OrbitBasis& basis) {
  std::map<std::vector<Rat>, std::vector<uint32_t>> by_avg;
  for (uint32_t o = 0; o < basis.dim(); ++o) by_avg[alpha_theta(basis, o)].push_back(o);
  std::vector<std::vector<uint32_t>> groups;
  for (auto& [avg, ids] : by_avg)
    if (ids.size() > 1) groups.push_back(ids);
  std::sort(groups.begin(), groups.end());
  return groups;
}

// The two descended representations attached to the same rank can only be
// equivalent after extending scalars when 2n(p+q) + 2(n^2-3n+1)r vanishes
// for the exponent triple of (b, c, d); a nonzero value certifies
// inequivalence for that choice.
inline bool nonequivalence_condition(long long n, long long p, long long q, long long r) {
  return 2 * n * (p + q) + 2 * (n * n - 3 * n + 1) * r != 0;
}

// Generators of the braid group of type B_n realized on the fixed subspace
// of one of its three simply laced covers, with their determinants.  k
// selects the cover: 1 is the odd path, 2 the even path, 3 the fork.  The
// induced maps are checked against the B_n braid relations, including the
// order-four relation between the last two generators.
struct TypeBSuite {
  int n = 0;
  int k = 0;
  LKFamily family;
  GraphAutGroup group;
  OrbitBasis basis;
  std::vector<std::vector<int>> orbit_sets;
  std::vector<Word> words;
  std::vector<Endo<LaurentPoly>> generators;
  std::vector<LaurentPoly> dets;
  uint32_t degree = 0;
};

inline TypeBSuite typeb_suite(int n, int k, const LKParams& params) {
  if (n < 3) fail(Err::BadRank, "the fixed-subspace model needs rank three or more");
  if (k < 1 || k > 3) fail(Err::BadInput, "cover index must be 1, 2 or 3");
  TypeBSuite S;
  S.n = n;
  S.k = k;
  CoxeterGraph g;
  VertexPerm sigma;
  if (k == 1) {
    g = named_graph("A", 2 * n - 1);
    sigma.resize(g.n);
    for (int v = 0; v < g.n; ++v) sigma[v] = 2 * n - 2 - v;
  } else if (k == 2) {
    g = named_graph("A", 2 * n);
    sigma.resize(g.n);
    for (int v = 0; v < g.n; ++v) sigma[v] = 2 * n - 1 - v;
  } else {
    g = named_graph("D", n + 1);
    sigma = detail::perm_identity(g.n);
    std::swap(sigma[n - 1], sigma[n]);
  }
  S.group = generated_subgroup(g, {sigma});
  S.family = spherical_family(g, params);
  S.basis = orbit_basis(S.family.table, S.group);
  S.degree = S.basis.dim();
  for (int idx = 1; idx <= n; ++idx) {
    std::vector<int> J;
    if (k == 1)
      J = idx < n ? std::vector<int>{idx - 1, 2 * n - 1 - idx} : std::vector<int>{n - 1};
    else if (k == 2)
      J = idx < n ? std::vector<int>{idx - 1, 2 * n - idx} : std::vector<int>{n - 1, n};
    else
      J = idx < n ? std::vector<int>{idx - 1} : std::vector<int>{n - 1, n};
    S.orbit_sets.push_back(J);
    S.words.push_back(garside_word(g, J));
  }
  for (const Word& w : S.words) S.generators.push_back(twisted_endo(S.family, S.basis, w));
  for (int s = 0; s < n; ++s)
    for (int u = s + 1; u < n; ++u) {
      int m = u - s > 1 ? 2 : (u == n - 1 ? 4 : 3);
      Endo<LaurentPoly> lhs = Endo<LaurentPoly>::identity(S.degree);
      Endo<LaurentPoly> rhs = lhs;
      for (int step = 0; step < m; ++step) {
        lhs = compose(lhs, S.generators[step % 2 == 0 ? s : u]);
        rhs = compose(rhs, S.generators[step % 2 == 0 ? u : s]);
      }
      EndoComparison cmp = equal_on_safe(lhs, rhs);
      if (!cmp.agree() || cmp.compared != S.degree)
        fail(Err::InconsistentRelations, "induced generators break a braid relation");
    }
  for (const Endo<LaurentPoly>& e : S.generators) S.dets.push_back(det(e));
  return S;
}

}  // namespace lkrep
