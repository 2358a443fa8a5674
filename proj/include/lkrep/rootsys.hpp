// Positive roots of a small-type Coxeter graph with depth grading, the
// reflection action, dihedral meshes, and the affine decomposition
// Phi+ = Phi0+ u (Phi0 + N delta).
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <vector>

#include "lkrep/coxeter.hpp"

namespace lkrep {

using Root = std::vector<int>;

inline std::string root_str(const Root& r) {
  std::string s;
  for (size_t k = 0; k < r.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(r[k]);
  }
  return s;
}

inline Root parse_root(const std::string& s) {
  Root r;
  size_t i = 0;
  while (i <= s.size()) {
    size_t j = s.find(',', i);
    if (j == std::string::npos) j = s.size();
    r.push_back(std::atoi(s.substr(i, j - i).c_str()));
    i = j + 1;
  }
  return r;
}

// Symmetric pairing with (a_i|a_i) = 2, (a_i|a_j) = -1 on edges, 0 otherwise.
inline long pairing(const CoxeterGraph& g, const Root& a, const Root& b) {
  long s = 0;
  for (int i = 0; i < g.n; ++i) {
    if (a[i] == 0) continue;
    long row = 2L * b[i];
    for (int j : g.neighbors(i)) row -= b[j];
    s += static_cast<long>(a[i]) * row;
  }
  return s;
}

inline Root reflect(const CoxeterGraph& g, int i, const Root& a) {
  Root e(g.n, 0);
  e[i] = 1;
  long p = pairing(g, e, a);
  Root r = a;
  r[i] -= static_cast<int>(p);
  return r;
}

inline bool is_positive_vec(const Root& r) {
  bool nonzero = false;
  for (int c : r) {
    if (c < 0) return false;
    if (c > 0) nonzero = true;
  }
  return nonzero;
}

// reflect index codes for images outside the table.
inline constexpr int32_t kNegSimple = -1;   // s_i(alpha_i) = -alpha_i
inline constexpr int32_t kBoundary = -2;    // beyond the depth bound

struct RootTable {
  CoxeterGraph graph;
  bool complete = false;   // whole Phi+ enumerated
  int depth_bound = 0;     // max enumerated depth
  std::vector<Root> roots; // ordered by (depth, lexicographic coordinates)
  std::vector<int> depth;  // depth[r] of roots[r]
  std::vector<std::vector<int32_t>> reflect_map;  // [i][r]
  std::map<Root, uint32_t> index;

  uint32_t size() const { return static_cast<uint32_t>(roots.size()); }
  uint32_t simple_index(int i) const {
    Root e(graph.n, 0);
    e[i] = 1;
    return index.at(e);
  }
  std::optional<uint32_t> find(const Root& r) const {
    auto it = index.find(r);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  int32_t image(int i, uint32_t r) const { return reflect_map[i][r]; }
};

// Breadth-first enumeration by depth.  One reflection changes depth by
// exactly the sign of the pairing, so BFS levels are depth levels.  For a
// graph whose components are all of shape A, D or E the walk closes up and
// the table is complete regardless of the requested bound.
inline RootTable enumerate_roots(const CoxeterGraph& g, int depth_bound,
                                 size_t cap = kDefaultCap) {
  if (depth_bound < 1) fail(Err::DepthBoundTooSmall, "depth bound must be >= 1");
  bool spherical = is_spherical(g, g.all_vertices());
  RootTable t;
  t.graph = g;
  std::map<Root, int> depth_of;
  std::vector<Root> level;
  for (int i = 0; i < g.n; ++i) {
    Root e(g.n, 0);
    e[i] = 1;
    depth_of[e] = 1;
    level.push_back(e);
  }
  int d = 1;
  while (!level.empty() && (spherical || d < depth_bound)) {
    std::vector<Root> next;
    for (const Root& r : level) {
      for (int i = 0; i < g.n; ++i) {
        Root s = reflect(g, i, r);
        if (!is_positive_vec(s)) continue;
        if (depth_of.emplace(s, d + 1).second) {
          next.push_back(s);
          if (depth_of.size() > cap) fail(Err::CapExceeded, "root enumeration larger than cap");
        }
      }
    }
    level = std::move(next);
    ++d;
  }
  t.complete = spherical || level.empty();
  int maxd = 0;
  for (const auto& [r, dep] : depth_of) maxd = std::max(maxd, dep);
  t.depth_bound = t.complete ? maxd : depth_bound;
  std::vector<std::pair<int, Root>> ordered;
  ordered.reserve(depth_of.size());
  for (const auto& [r, dep] : depth_of) ordered.push_back({dep, r});
  std::sort(ordered.begin(), ordered.end());
  for (uint32_t k = 0; k < ordered.size(); ++k) {
    t.roots.push_back(ordered[k].second);
    t.depth.push_back(ordered[k].first);
    t.index[ordered[k].second] = k;
  }
  t.reflect_map.assign(g.n, std::vector<int32_t>(t.roots.size(), kBoundary));
  for (uint32_t r = 0; r < t.roots.size(); ++r) {
    for (int i = 0; i < g.n; ++i) {
      Root s = reflect(g, i, t.roots[r]);
      if (!is_positive_vec(s)) {
        t.reflect_map[i][r] = kNegSimple;
        continue;
      }
      auto it = t.index.find(s);
      t.reflect_map[i][r] = it == t.index.end() ? kBoundary : static_cast<int32_t>(it->second);
    }
  }
  return t;
}

// Orbit of a root under <s_i, s_j> inside Phi+, classified by shape:
//   m = 2: 1 contains a simple root of the pair, 2 both loops,
//          3 an edge pair, 4 a square;
//   m = 3: 5 the simple mesh {a_i, a_j, a_i+a_j}, 6 both loops,
//          7 a three-chain with loops at the ends, 8 a hexagon.
struct Mesh {
  int i = 0, j = 0;
  int type = 0;
  std::vector<uint32_t> members;  // sorted by (depth, index)
};

inline Mesh mesh(const RootTable& t, uint32_t root, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= t.graph.n || j >= t.graph.n)
    fail(Err::BadInput, "mesh needs two distinct vertices");
  Mesh m;
  m.i = i;
  m.j = j;
  std::set<uint32_t> seen = {root};
  std::vector<uint32_t> queue = {root};
  while (!queue.empty()) {
    uint32_t r = queue.back();
    queue.pop_back();
    for (int k : {i, j}) {
      int32_t img = t.image(k, r);
      if (img == kNegSimple) continue;
      if (img == kBoundary)
        fail(Err::BoundaryTruncated, "mesh of root " + root_str(t.roots[root]) +
                                         " leaves the enumerated depth range");
      if (seen.insert(static_cast<uint32_t>(img)).second)
        queue.push_back(static_cast<uint32_t>(img));
    }
  }
  m.members.assign(seen.begin(), seen.end());
  std::sort(m.members.begin(), m.members.end(),
            [&](uint32_t a, uint32_t b) { return std::pair(t.depth[a], a) < std::pair(t.depth[b], b); });
  bool has_simple = false;
  for (uint32_t r : m.members)
    if (r == t.simple_index(i) || r == t.simple_index(j)) has_simple = true;
  size_t sz = m.members.size();
  if (t.graph.mij(i, j) == 2) {
    if (sz == 1) m.type = has_simple ? 1 : 2;
    else if (sz == 2) m.type = 3;
    else if (sz == 4) m.type = 4;
    else fail(Err::BadInput, "impossible mesh size for m=2");
  } else {
    if (sz == 3 && has_simple) m.type = 5;
    else if (sz == 1) m.type = 6;
    else if (sz == 3) m.type = 7;
    else if (sz == 6) m.type = 8;
    else fail(Err::BadInput, "impossible mesh size for m=3");
  }
  return m;
}

// Primitive positive radical vector of the pairing; exists exactly for the
// affine graphs and spans the radical there.
inline Root delta(const CoxeterGraph& g) {
  // Gram matrix over the rationals; fraction-free elimination.
  int n = g.n;
  std::vector<std::vector<long>> A(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) {
    A[i][i] = 2;
    for (int j : g.neighbors(i)) A[i][j] = -1;
  }
  // Reduce; track kernel via augmented identity on columns.
  std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[i][j] = A[i][j];
  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int p = -1;
    for (int r = row; r < n; ++r)
      if (M[r][col] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(M[p], M[row]);
    Rat inv = Rat(1) / M[row][col];
    for (int j = 0; j < n; ++j) M[row][j] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == row || M[r][col] == 0) continue;
      Rat f = M[r][col];
      for (int j = 0; j < n; ++j) M[r][j] -= f * M[row][j];
    }
    pivot_col.push_back(col);
    ++row;
  }
  int nullity = n - row;
  if (nullity != 1) fail(Err::NotAffine, "radical has dimension " + std::to_string(nullity));
  // Free column: the one not pivotal.
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  int free_col = -1;
  for (int c = 0; c < n; ++c)
    if (!is_pivot[c]) free_col = c;
  std::vector<Rat> v(n, Rat(0));
  v[free_col] = 1;
  for (int r = 0; r < row; ++r) v[pivot_col[r]] = -M[r][free_col];
  // Scale to a primitive integer vector.
  Int lcm = 1;
  for (const Rat& x : v) {
    Int den = boost::multiprecision::denominator(x);
    lcm = boost::multiprecision::lcm(lcm, den);
  }
  Root d(n);
  Int gcd = 0;
  std::vector<Int> w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = boost::multiprecision::numerator(v[i]) * (lcm / boost::multiprecision::denominator(v[i]));
    gcd = boost::multiprecision::gcd(gcd, w[i]);
  }
  for (int i = 0; i < n; ++i) {
    Int c = w[i] / gcd;
    d[i] = static_cast<int>(c);
  }
  bool neg = std::all_of(d.begin(), d.end(), [](int c) { return c <= 0; });
  if (neg)
    for (int& c : d) c = -c;
  for (int c : d)
    if (c <= 0) fail(Err::NotAffine, "radical vector not positive");
  return d;
}

// alpha = p*delta + beta with beta a (possibly negative) root of the
// spherical part on vertices 1..n.  Requires the affine vertex at index 0.
struct AffineDecomposition {
  int p = 0;
  Root beta;          // in full coordinates, entry 0 is zero
  bool beta_positive = false;
};

inline AffineDecomposition affine_decompose(const CoxeterGraph& g, const Root& alpha) {
  Root d = delta(g);
  if (d[0] != 1) fail(Err::NotAffine, "vertex 0 is not the affine vertex");
  AffineDecomposition out;
  // p equals the coordinate at the affine vertex since beta avoids it.
  out.p = alpha[0];
  out.beta.assign(g.n, 0);
  for (int i = 0; i < g.n; ++i) out.beta[i] = alpha[i] - out.p * d[i];
  if (out.beta[0] != 0) fail(Err::NotAffine, "decomposition failed at the affine vertex");
  // Membership in the spherical subsystem, checked directly.
  std::vector<std::vector<int>> sm(g.n - 1, std::vector<int>(g.n - 1));
  for (int i = 1; i < g.n; ++i)
    for (int j = 1; j < g.n; ++j) sm[i - 1][j - 1] = g.mij(i, j);
  CoxeterGraph g0 = build_graph(sm);
  RootTable t0 = enumerate_roots(g0, 1);
  if (!t0.complete) fail(Err::NotAffine, "spherical part is not spherical");
  Root b0(g0.n);
  for (int i = 1; i < g.n; ++i) b0[i - 1] = out.beta[i];
  Root nb0 = b0;
  for (int& c : nb0) c = -c;
  if (t0.find(b0)) {
    out.beta_positive = true;
  } else if (t0.find(nb0)) {
    out.beta_positive = false;
  } else {
    fail(Err::NotAffine, "residue is not a root of the spherical part");
  }
  return out;
}

// Cycle-interval form of a positive root of affine A_n: alpha = p*delta +
// sum of alpha_k over a cyclic interval domain(alpha).  boundary holds the
// interval endpoints (one vertex when the interval is a single vertex).
struct AntildeDomain {
  int p = 0;
  int ell = 0;                 // interval has ell + 1 vertices
  std::vector<int> domain;     // in cyclic order from the start vertex
  std::vector<int> boundary;
  std::vector<int> interior;
};

inline AntildeDomain antilde_domain(const CoxeterGraph& g, const Root& alpha) {
  int n1 = g.n;  // n + 1 vertices
  for (int i = 0; i < n1; ++i) {
    int expect = (i + 1) % n1;
    if (!g.adjacent(i, expect)) fail(Err::NotAtilde, "graph is not the standard cycle");
    if (static_cast<int>(g.neighbors(i).size()) != 2) fail(Err::NotAtilde, "graph is not a cycle");
  }
  if (static_cast<int>(alpha.size()) != n1) fail(Err::BadInput, "coordinate size mismatch");
  int p = *std::min_element(alpha.begin(), alpha.end());
  AntildeDomain out;
  out.p = p;
  std::vector<bool> one(n1, false);
  int ones = 0;
  for (int i = 0; i < n1; ++i) {
    int c = alpha[i] - p;
    if (c != 0 && c != 1) fail(Err::NotAtilde, "not a root: residue has a coordinate > 1");
    if (c == 1) {
      one[i] = true;
      ++ones;
    }
  }
  if (ones == 0 || ones == n1) fail(Err::NotAtilde, "not a root: residue is a multiple of delta");
  // The 1-set must be one cyclic interval: find its start (a 1 whose
  // predecessor is 0) and walk.
  int start = -1;
  for (int i = 0; i < n1; ++i)
    if (one[i] && !one[(i + n1 - 1) % n1]) {
      if (start >= 0) fail(Err::NotAtilde, "not a root: residue support is not an interval");
      start = i;
    }
  for (int k = 0; k < ones; ++k) {
    int v = (start + k) % n1;
    if (!one[v]) fail(Err::NotAtilde, "not a root: residue support is not an interval");
    out.domain.push_back(v);
  }
  out.ell = ones - 1;
  out.boundary.push_back(out.domain.front());
  if (out.ell > 0) out.boundary.push_back(out.domain.back());
  for (int k = 1; k + 1 <= out.ell; ++k) out.interior.push_back(out.domain[k]);
  return out;
}

}  // namespace lkrep
