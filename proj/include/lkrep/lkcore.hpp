#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lkrep/laurent.hpp"
#include "lkrep/rootsys.hpp"

namespace lkrep {

// Endomorphism of the free module on the enumerated roots, stored by
// columns: columns[r] holds the image of basis vector r as a sparse map.
// A column whose value would require roots beyond a truncated table is
// flagged unsafe; composition keeps a column safe only when every basis
// vector it reaches has a safe column on the left factor.
template <class Scalar>
struct Endo {
  uint32_t dim = 0;
  std::vector<std::map<uint32_t, Scalar>> columns;
  std::vector<char> safe;

  static Endo identity(uint32_t n) {
    Endo e;
    e.dim = n;
    e.columns.resize(n);
    e.safe.assign(n, 1);
    for (uint32_t r = 0; r < n; ++r) e.columns[r][r] = Scalar(1);
    return e;
  }

  void set(uint32_t row, uint32_t col, Scalar v) {
    if (v.is_zero())
      columns[col].erase(row);
    else
      columns[col][row] = std::move(v);
  }

  Scalar at(uint32_t row, uint32_t col) const {
    auto it = columns[col].find(row);
    return it == columns[col].end() ? Scalar(0) : it->second;
  }

  bool all_safe() const {
    for (char s : safe)
      if (!s) return false;
    return true;
  }
};

template <class Scalar>
inline Endo<Scalar> compose(const Endo<Scalar>& lhs, const Endo<Scalar>& rhs) {
  if (lhs.dim != rhs.dim) fail(Err::BadInput, "endomorphism dimensions differ");
  Endo<Scalar> out;
  out.dim = lhs.dim;
  out.columns.resize(out.dim);
  out.safe.assign(out.dim, 1);
  for (uint32_t r = 0; r < out.dim; ++r) {
    if (!rhs.safe[r]) {
      out.safe[r] = 0;
      continue;
    }
    std::map<uint32_t, Scalar> acc;
    for (const auto& [k, v] : rhs.columns[r]) {
      if (!lhs.safe[k]) {
        out.safe[r] = 0;
        break;
      }
      for (const auto& [row, w] : lhs.columns[k]) {
        auto it = acc.find(row);
        if (it == acc.end())
          acc.emplace(row, w * v);
        else
          it->second += w * v;
      }
    }
    if (!out.safe[r]) continue;
    for (auto it = acc.begin(); it != acc.end();)
      it = it->second.is_zero() ? acc.erase(it) : std::next(it);
    out.columns[r] = std::move(acc);
  }
  return out;
}

inline Endo<LaurentFraction> to_fractions(const Endo<LaurentPoly>& e) {
  Endo<LaurentFraction> out;
  out.dim = e.dim;
  out.columns.resize(e.dim);
  out.safe = e.safe;
  for (uint32_t r = 0; r < e.dim; ++r)
    for (const auto& [row, v] : e.columns[r]) out.columns[r].emplace(row, LaurentFraction(v));
  return out;
}

// Column-wise comparison restricted to columns safe on both sides.
struct EndoComparison {
  uint32_t compared = 0;
  uint32_t mismatched = 0;
  int32_t first_mismatch = -1;

  bool agree() const { return mismatched == 0; }
};

template <class Scalar>
inline EndoComparison equal_on_safe(const Endo<Scalar>& lhs, const Endo<Scalar>& rhs) {
  if (lhs.dim != rhs.dim) fail(Err::BadInput, "endomorphism dimensions differ");
  EndoComparison cmp;
  for (uint32_t r = 0; r < lhs.dim; ++r) {
    if (!lhs.safe[r] || !rhs.safe[r]) continue;
    ++cmp.compared;
    bool same = lhs.columns[r].size() == rhs.columns[r].size();
    if (same) {
      auto it = rhs.columns[r].begin();
      for (const auto& [row, v] : lhs.columns[r]) {
        if (it->first != row || !(it->second == v)) {
          same = false;
          break;
        }
        ++it;
      }
    }
    if (!same) {
      ++cmp.mismatched;
      if (cmp.first_mismatch < 0) cmp.first_mismatch = static_cast<int32_t>(r);
    }
  }
  return cmp;
}

// A family of linear forms on the root module, one per vertex, recorded by
// value on every enumerated root.  values[i][r] is the value of form i on
// basis vector r.
struct LKFamily {
  std::shared_ptr<const RootTable> table;
  LKParams params;
  std::vector<std::vector<LaurentPoly>> values;

  const LaurentPoly& value(int i, uint32_t r) const { return values[i][r]; }
  uint32_t dim() const { return table->size(); }

  // The common simple-root value, a unit exactly when the family extends to
  // the group.
  const LaurentPoly& unit_value() const { return values[0][table->simple_index(0)]; }
};

inline void require_family_shape(const LKFamily& fam) {
  const RootTable& t = *fam.table;
  if (fam.values.size() != static_cast<size_t>(t.graph.n))
    fail(Err::BadInput, "family has wrong number of forms");
  for (const auto& row : fam.values)
    if (row.size() != t.size()) fail(Err::BadInput, "family row has wrong length");
}

// The basic endomorphism attached to vertex i: kills the simple root i,
// scales the roots it fixes by d, and acts on each ascending reflection
// pair (low, high) by low -> a*low + c*high, high -> b*low.
inline Endo<LaurentPoly> phi_endo(const RootTable& t, const LKParams& p, int i) {
  Endo<LaurentPoly> e;
  e.dim = t.size();
  e.columns.resize(e.dim);
  e.safe.assign(e.dim, 1);
  for (uint32_t r = 0; r < e.dim; ++r) {
    int32_t m = t.image(i, r);
    if (m == kNegSimple) continue;  // the simple root of i itself, image 0
    if (m == kBoundary) {
      e.safe[r] = 0;
      continue;
    }
    uint32_t mr = static_cast<uint32_t>(m);
    if (mr == r) {
      e.set(r, r, p.d);
    } else if (t.depth[mr] > t.depth[r]) {
      e.set(r, r, p.a);
      e.set(mr, r, p.c);
    } else {
      e.set(mr, r, p.b);
    }
  }
  return e;
}

inline Endo<LaurentPoly> psi_endo(const LKFamily& fam, int i) {
  const RootTable& t = *fam.table;
  Endo<LaurentPoly> e = phi_endo(t, fam.params, i);
  uint32_t si = t.simple_index(i);
  for (uint32_t r = 0; r < e.dim; ++r) {
    if (!e.safe[r]) continue;
    const LaurentPoly& f = fam.value(i, r);
    if (f.is_zero()) continue;
    auto it = e.columns[r].find(si);
    if (it == e.columns[r].end()) {
      e.columns[r][si] = f;
    } else {
      it->second += f;
      if (it->second.is_zero()) e.columns[r].erase(it);
    }
  }
  return e;
}

// Inverse over the localization at the simple-root value.  Requires b, c, d
// units; entries outside the simple row stay polynomial.
inline Endo<LaurentFraction> psi_inverse(const LKFamily& fam, int i) {
  const RootTable& t = *fam.table;
  const LKParams& p = fam.params;
  uint32_t si = t.simple_index(i);
  const LaurentPoly& f = fam.value(i, si);
  if (f.is_zero()) fail(Err::NotAUnit, "simple-root value is zero, no inverse");
  LaurentPoly inv_b = p.b.unit_inverse();
  LaurentPoly inv_c = p.c.unit_inverse();
  LaurentPoly inv_d = p.d.unit_inverse();
  Endo<LaurentFraction> e;
  e.dim = t.size();
  e.columns.resize(e.dim);
  e.safe.assign(e.dim, 1);
  for (uint32_t r = 0; r < e.dim; ++r) {
    int32_t m = t.image(i, r);
    if (m == kNegSimple) {
      e.columns[r].emplace(si, LaurentFraction(LaurentPoly(1), f));
      continue;
    }
    if (m == kBoundary) {
      e.safe[r] = 0;
      continue;
    }
    uint32_t mr = static_cast<uint32_t>(m);
    if (mr == r) {
      e.set(r, r, LaurentFraction(inv_d));
      e.set(si, r, LaurentFraction(-(inv_d * fam.value(i, r)), f));
    } else if (t.depth[mr] > t.depth[r]) {
      // r is the low end: image (1/b)(high - (f_high/f) simple).
      e.set(mr, r, LaurentFraction(inv_b));
      e.set(si, r, LaurentFraction(-(inv_b * fam.value(i, mr)), f));
    } else {
      // r is the high end: image (1/c)(low - (a/b) high + (...)/(bf) simple).
      e.set(mr, r, LaurentFraction(inv_c));
      e.set(r, r, LaurentFraction(-(p.a * inv_b * inv_c)));
      LaurentPoly num = p.a * fam.value(i, r) - p.b * fam.value(i, mr);
      e.set(si, r, LaurentFraction(inv_b * inv_c * num, f));
    }
  }
  return e;
}

// Image of a positive word under the representation, as the left-to-right
// composition of the letter maps.
inline Endo<LaurentPoly> apply_word(const std::vector<Endo<LaurentPoly>>& psi, const Word& w) {
  if (psi.empty()) fail(Err::BadInput, "no letter maps");
  Endo<LaurentPoly> acc = Endo<LaurentPoly>::identity(psi[0].dim);
  for (int letter : w) {
    if (letter < 0 || static_cast<size_t>(letter) >= psi.size())
      fail(Err::BadInput, "letter out of range");
    acc = compose(acc, psi[letter]);
  }
  return acc;
}

inline std::vector<Endo<LaurentPoly>> all_psi(const LKFamily& fam) {
  std::vector<Endo<LaurentPoly>> out;
  out.reserve(fam.table->graph.n);
  for (int i = 0; i < fam.table->graph.n; ++i) out.push_back(psi_endo(fam, i));
  return out;
}

// Defining conditions on the forms, checked as linear-form identities
// column by column: forms vanish on foreign simple roots, commuting pairs
// satisfy f_i phi_j = d f_i, braided pairs satisfy f_i phi_j = f_j phi_i.
struct ConditionViolation {
  int condition;  // 1, 2 or 3
  int i, j;
  uint32_t root;
};

inline std::vector<ConditionViolation> check_family_conditions(const LKFamily& fam) {
  require_family_shape(fam);
  const RootTable& t = *fam.table;
  const LKParams& p = fam.params;
  std::vector<ConditionViolation> bad;
  std::vector<Endo<LaurentPoly>> phi;
  for (int i = 0; i < t.graph.n; ++i) phi.push_back(phi_endo(t, p, i));
  auto pull_back = [&](int i, int j, uint32_t r) {
    // (f_i phi_j)(e_r)
    LaurentPoly acc;
    for (const auto& [row, v] : phi[j].columns[r]) acc += fam.value(i, row) * v;
    return acc;
  };
  for (int i = 0; i < t.graph.n; ++i)
    for (int j = 0; j < t.graph.n; ++j) {
      if (i == j) continue;
      if (!fam.value(i, t.simple_index(j)).is_zero())
        bad.push_back({1, i, j, t.simple_index(j)});
      if (t.graph.mij(i, j) == 2) {
        for (uint32_t r = 0; r < t.size(); ++r) {
          if (!phi[j].safe[r]) continue;
          if (!(pull_back(i, j, r) == p.d * fam.value(i, r))) bad.push_back({2, i, j, r});
        }
      } else if (i < j && t.graph.mij(i, j) == 3) {
        for (uint32_t r = 0; r < t.size(); ++r) {
          if (!phi[j].safe[r] || !phi[i].safe[r]) continue;
          if (!(pull_back(i, j, r) == pull_back(j, i, r))) bad.push_back({3, i, j, r});
        }
      }
    }
  return bad;
}

// The same conditions expressed as the ten numbered relations between the
// family values, scanned by root configuration.  Both checkers must flag
// the same families; they differ in how a defect is localized.
struct RelationViolation {
  int relation;  // 1..10
  int i, j;
  uint32_t root;  // the deepest root of the configuration
};

inline std::vector<RelationViolation> check_relation_table(const LKFamily& fam) {
  require_family_shape(fam);
  const RootTable& t = *fam.table;
  const CoxeterGraph& g = t.graph;
  const LKParams& p = fam.params;
  std::vector<RelationViolation> bad;
  auto val = [&](int i, int32_t r) -> const LaurentPoly& {
    return fam.value(i, static_cast<uint32_t>(r));
  };
  auto up = [&](int i, uint32_t r) -> int32_t {
    // index of s_i(root r) when it ascends, else -1; kBoundary maps to -2
    int32_t m = t.image(i, r);
    if (m == kBoundary) return -2;
    if (m == kNegSimple || static_cast<uint32_t>(m) == r) return -1;
    return t.depth[m] > t.depth[r] ? m : -1;
  };
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (i == j) continue;
      uint32_t si = t.simple_index(i);
      uint32_t sj = t.simple_index(j);
      // (1)
      if (!fam.value(i, sj).is_zero()) bad.push_back({1, i, j, sj});
      if (g.mij(i, j) == 2) {
        // (6): ascending pairs of j, one relation per vertex i
        for (uint32_t r = 0; r < t.size(); ++r) {
          int32_t a = up(j, r);
          if (a < 0) continue;
          if (!(p.d * val(i, a) == p.b * val(i, r)))
            bad.push_back({6, i, j, static_cast<uint32_t>(a)});
        }
        continue;
      }
      // m = 3 from here on
      if (i < j && !(fam.value(i, si) == fam.value(j, sj))) bad.push_back({2, i, j, si});
      // (7)
      {
        Root sum = t.roots[si];
        sum[j] += 1;
        auto rs = t.find(sum);
        if (rs) {
          if (!(p.c * val(i, *rs) == -(p.a * val(i, si)))) bad.push_back({7, i, j, *rs});
        }
      }
      for (uint32_t r = 0; r < t.size(); ++r) {
        // (8): chains r -i-> mid -j-> top
        int32_t mid = up(i, r);
        if (mid >= 0) {
          int32_t top = up(j, static_cast<uint32_t>(mid));
          if (top >= 0) {
            if (!(p.c * val(i, top) == p.b * val(j, r) - p.a * val(i, mid)))
              bad.push_back({8, i, j, static_cast<uint32_t>(top)});
          }
        }
        // (9) and (10) around the three-step configuration whose bottom is
        // fixed by i: bottom -j-> mid2 -i-> top2, top2 fixed by j
        if (t.image(i, r) == static_cast<int32_t>(r)) {
          int32_t mid2 = up(j, r);
          if (mid2 >= 0) {
            if (!(p.c * val(i, mid2) == p.d * val(j, r) - p.a * val(i, r)))
              bad.push_back({9, i, j, static_cast<uint32_t>(mid2)});
            int32_t top2 = up(i, static_cast<uint32_t>(mid2));
            if (top2 >= 0) {
              if (!(p.d * val(i, top2) == p.b * val(j, mid2)))
                bad.push_back({10, i, j, static_cast<uint32_t>(top2)});
            }
          }
        }
        if (i < j) {
          // (5): roots fixed by both
          if (t.image(i, r) == static_cast<int32_t>(r) &&
              t.image(j, r) == static_cast<int32_t>(r)) {
            if (!(fam.value(i, r) == fam.value(j, r))) bad.push_back({5, i, j, r});
          }
          // (3), (4): hexagon with bottom r, both reflections ascending
          int32_t ga = up(i, r), gb = up(j, r);
          if (ga >= 0 && gb >= 0) {
            if (!(p.c * val(i, gb) + p.a * val(i, r) == p.c * val(j, ga) + p.a * val(j, r)))
              bad.push_back({4, i, j, r});
            int32_t ba = up(j, static_cast<uint32_t>(ga));
            int32_t bb = up(i, static_cast<uint32_t>(gb));
            if (ba >= 0 && bb >= 0) {
              if (!(val(i, bb) == val(j, ba))) bad.push_back({3, i, j, static_cast<uint32_t>(ba)});
            }
          }
        }
      }
    }
  }
  return bad;
}

// For any three pairwise braided vertices the pairings of a positive root
// with the three simple roots sum to at most zero.
inline bool triangle_pairing_bound_check(const RootTable& t) {
  const CoxeterGraph& g = t.graph;
  for (int i = 0; i < g.n; ++i)
    for (int j = i + 1; j < g.n; ++j) {
      if (g.mij(i, j) != 3) continue;
      for (int k = j + 1; k < g.n; ++k) {
        if (g.mij(i, k) != 3 || g.mij(j, k) != 3) continue;
        for (const Root& r : t.roots) {
          Root ei(g.n, 0), ej(g.n, 0), ek(g.n, 0);
          ei[i] = 1;
          ej[j] = 1;
          ek[k] = 1;
          if (pairing(g, ei, r) + pairing(g, ej, r) + pairing(g, ek, r) > 0) return false;
        }
      }
    }
  return true;
}

// Fraction-free determinant.  Entries stay in the Laurent ring throughout;
// every division is exact.  Pivots favor short polynomials.
inline LaurentPoly det(const Endo<LaurentPoly>& e) {
  if (!e.all_safe()) fail(Err::TruncatedTable, "determinant needs every column");
  uint32_t n = e.dim;
  std::vector<std::vector<LaurentPoly>> m(n, std::vector<LaurentPoly>(n));
  for (uint32_t c = 0; c < n; ++c)
    for (const auto& [row, v] : e.columns[c]) m[row][c] = v;
  int sign = 1;
  LaurentPoly prev(1);
  for (uint32_t k = 0; k < n; ++k) {
    uint32_t best = n;
    for (uint32_t r = k; r < n; ++r) {
      if (m[r][k].is_zero()) continue;
      if (best == n || m[r][k].term_count() < m[best][k].term_count()) best = r;
    }
    if (best == n) return LaurentPoly();
    if (best != k) {
      std::swap(m[best], m[k]);
      sign = -sign;
    }
    for (uint32_t r = k + 1; r < n; ++r) {
      for (uint32_t c = k + 1; c < n; ++c) {
        LaurentPoly num = m[k][k] * m[r][c] - m[r][k] * m[k][c];
        if (num.is_zero()) {
          m[r][c] = LaurentPoly();
          continue;
        }
        auto q = num.try_divide(prev);
        if (!q) fail(Err::BadInput, "inexact division in determinant sweep");
        m[r][c] = std::move(*q);
      }
      m[r][k] = LaurentPoly();
    }
    prev = m[k][k];
  }
  LaurentPoly d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

}  // namespace lkrep
