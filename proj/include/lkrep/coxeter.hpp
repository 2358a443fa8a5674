// Coxeter graphs of small type (m_ij in {1,2,3}), positive braid words, and
// the exact word problem of the associated Artin-Tits monoid.  The defining
// relations are homogeneous, so the full rewriting closure of a word is
// finite and serves as an equality oracle.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "lkrep/laurent.hpp"

namespace lkrep {

inline constexpr size_t kDefaultCap = 1000000;

struct CoxeterGraph {
  int n = 0;
  std::vector<std::vector<int>> m;
  std::string label;

  int mij(int i, int j) const { return m[i][j]; }
  bool adjacent(int i, int j) const { return i != j && m[i][j] == 3; }
  std::vector<int> neighbors(int i) const {
    std::vector<int> r;
    for (int j = 0; j < n; ++j)
      if (adjacent(i, j)) r.push_back(j);
    return r;
  }
  std::vector<int> all_vertices() const {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }
};

inline CoxeterGraph build_graph(std::vector<std::vector<int>> m, std::string label = "") {
  CoxeterGraph g;
  g.n = static_cast<int>(m.size());
  if (g.n == 0) fail(Err::BadInput, "empty graph");
  for (int i = 0; i < g.n; ++i) {
    if (static_cast<int>(m[i].size()) != g.n) fail(Err::NotSymmetric, "matrix not square");
    for (int j = 0; j < g.n; ++j) {
      if (i == j) {
        if (m[i][j] != 1) fail(Err::BadDiagonal, "diagonal entries must be 1");
      } else {
        if (m[i][j] != m[j][i]) fail(Err::NotSymmetric, "m[i][j] != m[j][i]");
        if (m[i][j] != 2 && m[i][j] != 3)
          fail(Err::NonSmallType, "off-diagonal entries must be 2 or 3");
      }
    }
  }
  g.m = std::move(m);
  g.label = std::move(label);
  return g;
}

inline CoxeterGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges,
                                     std::string label = "") {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  for (auto [u, v] : edges) m[u][v] = m[v][u] = 3;
  return build_graph(std::move(m), std::move(label));
}

// Vertex numbering follows the standard plates: a path for A_n; D_n is the
// path 1..n-2 with both n-1 and n attached to n-2; E_n hangs vertex 2 off
// vertex 4 of the path 1,3,4,..,n.  All labels here are 0-based, so the D_4
// branch vertex is index 1 (plate vertex 2).  Affine graphs put the extra
// vertex at index 0 attached as on the plates.
inline CoxeterGraph named_graph(const std::string& label, int rank) {
  auto path_edges = [](int lo, int hi) {
    std::vector<std::pair<int, int>> e;
    for (int i = lo; i < hi; ++i) e.push_back({i, i + 1});
    return e;
  };
  auto e_edges = [&](int n) {
    // 0-based E_n: path 0,2,3,..,n-1 with vertex 1 attached to vertex 3.
    std::vector<std::pair<int, int>> e = {{0, 2}, {1, 3}};
    auto rest = path_edges(2, n - 1);
    e.insert(e.end(), rest.begin(), rest.end());
    return e;
  };
  std::string L = label;
  int r = rank;
  if (L == "E6" || L == "E7" || L == "E8" || L == "Etilde6" || L == "Etilde7" || L == "Etilde8") {
    int want = L.back() - '0';
    if (r != 0 && r != want) fail(Err::BadRank, L + " has fixed rank");
    r = want;
    L = L.substr(0, L.size() - 1);
  }
  if (L == "A") {
    if (r < 1) fail(Err::BadRank, "A_n needs n >= 1");
    return graph_from_edges(r, path_edges(0, r - 1), "A" + std::to_string(r));
  }
  if (L == "D") {
    if (r < 4) fail(Err::BadRank, "D_n needs n >= 4");
    auto e = path_edges(0, r - 3);
    e.push_back({r - 3, r - 2});
    e.push_back({r - 3, r - 1});
    return graph_from_edges(r, e, "D" + std::to_string(r));
  }
  if (L == "E") {
    if (r < 6 || r > 8) fail(Err::BadRank, "E_n needs n in {6,7,8}");
    return graph_from_edges(r, e_edges(r), "E" + std::to_string(r));
  }
  if (L == "Atilde") {
    if (r < 2) fail(Err::BadRank, "affine A_n needs n >= 2");
    auto e = path_edges(0, r);
    e.push_back({r, 0});
    return graph_from_edges(r + 1, e, "Atilde" + std::to_string(r));
  }
  if (L == "Dtilde") {
    if (r < 4) fail(Err::BadRank, "affine D_n needs n >= 4");
    // Spherical part on 1..r as in D_r, extra vertex 0 attached to vertex 2.
    auto e = path_edges(1, r - 2);
    e.push_back({r - 2, r - 1});
    e.push_back({r - 2, r});
    e.push_back({0, 2});
    return graph_from_edges(r + 1, e, "Dtilde" + std::to_string(r));
  }
  if (L == "Etilde") {
    if (r < 6 || r > 8) fail(Err::BadRank, "affine E_n needs n in {6,7,8}");
    std::vector<std::pair<int, int>> e;
    // Spherical part on 1..r, 0-based plate labels shifted up by one.
    e.push_back({1, 3});
    e.push_back({2, 4});
    for (int i = 3; i < r; ++i) e.push_back({i, i + 1});
    if (r == 6) e.push_back({0, 2});
    if (r == 7) e.push_back({0, 1});
    if (r == 8) e.push_back({0, 8});
    return graph_from_edges(r + 1, e, "Etilde" + std::to_string(r));
  }
  fail(Err::UnknownLabel, label);
}

using Word = std::vector<int>;

inline std::string word_str(const Word& w) {
  bool dotted = false;
  for (int v : w)
    if (v >= 10) dotted = true;
  std::string s;
  for (size_t k = 0; k < w.size(); ++k) {
    if (dotted && k) s += '.';
    s += std::to_string(w[k]);
  }
  return s;
}

inline Word parse_word(const std::string& s) {
  Word w;
  if (s.empty() || s == "e") return w;
  if (s.find('.') != std::string::npos) {
    size_t i = 0;
    while (i < s.size()) {
      size_t j = s.find('.', i);
      if (j == std::string::npos) j = s.size();
      if (j == i) fail(Err::BadInput, "empty index in word \"" + s + "\"");
      w.push_back(std::atoi(s.substr(i, j - i).c_str()));
      i = j + 1;
    }
  } else {
    for (char ch : s) {
      if (ch < '0' || ch > '9') fail(Err::BadInput, "bad word \"" + s + "\"");
      w.push_back(ch - '0');
    }
  }
  return w;
}

inline void check_word(const CoxeterGraph& g, const Word& w) {
  for (int v : w)
    if (v < 0 || v >= g.n) fail(Err::BadInput, "letter out of range: " + std::to_string(v));
}

struct WordClass {
  Word representative;             // lexicographically least member
  std::vector<Word> members;       // sorted
  size_t length() const { return representative.size(); }
};

// Saturates {w} under single applications of the defining relations.  The
// class of a positive word is finite because the relations preserve length.
inline WordClass word_class(const CoxeterGraph& g, const Word& w, size_t cap = kDefaultCap) {
  check_word(g, w);
  std::set<Word> seen = {w};
  std::vector<Word> queue = {w};
  while (!queue.empty()) {
    Word cur = queue.back();
    queue.pop_back();
    auto push = [&](Word&& nw) {
      if (seen.insert(nw).second) {
        if (seen.size() > cap) fail(Err::CapExceeded, "word class larger than cap");
        queue.push_back(std::move(nw));
      }
    };
    for (size_t k = 0; k + 1 < cur.size(); ++k) {
      int i = cur[k], j = cur[k + 1];
      if (i == j) continue;
      if (g.mij(i, j) == 2) {
        Word nw = cur;
        std::swap(nw[k], nw[k + 1]);
        push(std::move(nw));
      } else if (k + 2 < cur.size() && cur[k + 2] == i && g.mij(i, j) == 3) {
        Word nw = cur;
        nw[k] = j;
        nw[k + 1] = i;
        nw[k + 2] = j;
        push(std::move(nw));
      }
    }
  }
  WordClass c;
  c.members.assign(seen.begin(), seen.end());
  c.representative = c.members.front();
  return c;
}

inline bool words_equal(const CoxeterGraph& g, const Word& u, const Word& v,
                        size_t cap = kDefaultCap) {
  if (u.size() != v.size()) return false;
  auto cu = word_class(g, u, cap);
  return std::binary_search(cu.members.begin(), cu.members.end(), v);
}

// I(b): the set of generators dividing b on the left; for a homogeneous
// presentation these are exactly the first letters across the class.
inline std::set<int> initial_set(const CoxeterGraph& g, const Word& w, size_t cap = kDefaultCap) {
  std::set<int> r;
  for (const Word& m : word_class(g, w, cap).members)
    if (!m.empty()) r.insert(m.front());
  return r;
}

namespace detail {

// Simple-root coordinate action used by the finite-enumeration fallback and
// by garside_word.  Rows are images of the simple roots.
inline std::vector<std::vector<int>> identity_action(int n) {
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

inline int pairing_entry(const CoxeterGraph& g, int i, int j) {
  if (i == j) return 2;
  return g.mij(i, j) == 3 ? -1 : 0;
}

inline std::vector<int> reflect_coords(const CoxeterGraph& g, int i, const std::vector<int>& v) {
  long s = 0;
  for (int j = 0; j < g.n; ++j) s += static_cast<long>(pairing_entry(g, i, j)) * v[j];
  std::vector<int> r = v;
  r[i] -= static_cast<int>(s);
  return r;
}

}  // namespace detail

// Recognizes the spherical components (A, D, E shapes) of the full subgraph
// on J.  Components failing the shape test are infinite in small type.
inline bool is_spherical(const CoxeterGraph& g, const std::vector<int>& J) {
  std::vector<int> verts = J;
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  for (int v : verts)
    if (v < 0 || v >= g.n) fail(Err::BadInput, "vertex out of range");
  std::set<int> in(verts.begin(), verts.end());
  std::set<int> left(verts.begin(), verts.end());
  while (!left.empty()) {
    // Extract one connected component.
    std::vector<int> comp = {*left.begin()};
    left.erase(left.begin());
    for (size_t k = 0; k < comp.size(); ++k)
      for (int j : g.neighbors(comp[k]))
        if (in.count(j) && left.count(j)) {
          left.erase(j);
          comp.push_back(j);
        }
    // Tree check: edges == vertices - 1, no vertex of degree > 3, at most
    // one vertex of degree 3.
    int edges = 0, deg3 = 0;
    std::vector<int> branch;
    std::vector<int> degs;
    for (int v : comp) {
      int d = 0;
      for (int j : g.neighbors(v))
        if (std::find(comp.begin(), comp.end(), j) != comp.end()) ++d;
      degs.push_back(d);
      edges += d;
      if (d > 3) return false;
      if (d == 3) {
        ++deg3;
        branch.push_back(v);
      }
    }
    edges /= 2;
    if (edges != static_cast<int>(comp.size()) - 1) return false;  // has a cycle
    if (deg3 > 1) return false;
    if (deg3 == 0) continue;  // path: type A
    // One branch vertex: arm lengths a <= b <= c must be (1,1,*), (1,2,2),
    // (1,2,3) or (1,2,4).
    std::vector<int> arms;
    for (int j : g.neighbors(branch[0])) {
      if (std::find(comp.begin(), comp.end(), j) == comp.end()) continue;
      int len = 0, prev = branch[0], cur = j;
      while (true) {
        ++len;
        int nxt = -1;
        for (int k : g.neighbors(cur))
          if (k != prev && std::find(comp.begin(), comp.end(), k) != comp.end()) nxt = k;
        if (nxt < 0) break;
        prev = cur;
        cur = nxt;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] != 1) return false;
    if (arms[1] == 1) continue;  // type D
    if (arms[1] != 2 || arms[2] > 4) return false;  // else E_6, E_7, E_8
  }
  return true;
}

// Direct enumeration of W_J by its action on simple-root coordinates.
// Returns the order, or nullopt once cap elements were generated.
inline std::optional<size_t> enumerate_weyl(const CoxeterGraph& g, const std::vector<int>& J,
                                            size_t cap = 10000) {
  std::set<std::vector<std::vector<int>>> seen;
  std::vector<std::vector<std::vector<int>>> queue;
  auto id = detail::identity_action(g.n);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    auto cur = queue.back();
    queue.pop_back();
    for (int i : J) {
      auto nxt = cur;
      for (int r = 0; r < g.n; ++r) nxt[r] = detail::reflect_coords(g, i, cur[r]);
      if (seen.insert(nxt).second) {
        if (seen.size() > cap) return std::nullopt;
        queue.push_back(nxt);
      }
    }
  }
  return seen.size();
}

// Positive word for the longest element of the spherical parabolic W_J,
// built by greedy ascent picking the least index at each step.  Its length
// is the number of positive roots of the J-subsystem.
inline Word garside_word(const CoxeterGraph& g, const std::vector<int>& J) {
  if (!is_spherical(g, J)) fail(Err::NotSpherical, "garside_word needs a spherical subset");
  std::vector<int> Js = J;
  std::sort(Js.begin(), Js.end());
  Js.erase(std::unique(Js.begin(), Js.end()), Js.end());
  Word w;
  // act[r] = coordinates of w(alpha_r); extend on the right while some
  // w(alpha_i) stays positive.
  auto act = detail::identity_action(g.n);
  while (true) {
    int pick = -1;
    for (int i : Js) {
      bool pos = false, neg = false;
      for (int c : act[i]) {
        if (c > 0) pos = true;
        if (c < 0) neg = true;
      }
      if (pos && !neg) {
        pick = i;
        break;
      }
    }
    if (pick < 0) break;
    w.push_back(pick);
    // w <- w * s_pick: new action sends alpha_r to w(s_pick(alpha_r)).
    auto next = act;
    for (int r = 0; r < g.n; ++r) {
      auto refl = detail::reflect_coords(g, pick, detail::identity_action(g.n)[r]);
      std::vector<int> img(g.n, 0);
      for (int k = 0; k < g.n; ++k)
        for (int c = 0; c < g.n; ++c) img[c] += refl[k] * act[k][c];
      next[r] = img;
    }
    act = next;
  }
  return w;
}

// All monoid elements of length <= max_len as word classes, ordered by
// (length, lexicographic representative).
inline std::vector<WordClass> enumerate_classes(const CoxeterGraph& g, size_t max_len,
                                                size_t cap = kDefaultCap) {
  std::vector<WordClass> out;
  out.push_back(word_class(g, {}, cap));
  std::vector<Word> level = {{}};
  for (size_t len = 1; len <= max_len; ++len) {
    std::set<Word> reps;
    for (const Word& w : level) {
      for (int i = 0; i < g.n; ++i) {
        Word nw = w;
        nw.push_back(i);
        reps.insert(word_class(g, nw, cap).representative);
      }
    }
    level.assign(reps.begin(), reps.end());
    for (const Word& r : level) {
      out.push_back(word_class(g, r, cap));
      if (out.size() > cap) fail(Err::CapExceeded, "class enumeration larger than cap");
    }
  }
  return out;
}

}  // namespace lkrep
