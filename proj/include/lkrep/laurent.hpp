// Exact scalar ring Z[x^{+-1}, y^{+-1}], the parameter triple (b,c,d) with
// a = d - bc/d, evaluation at x = 0, and sign reports used by the
// faithfulness criterion.
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lkrep {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class Err {
  NonSmallType,
  NotSymmetric,
  BadDiagonal,
  UnknownLabel,
  BadRank,
  CapExceeded,
  NotSpherical,
  NonTerminating,
  BoundaryTruncated,
  NotAffine,
  NotAtilde,
  NotAUnit,
  NegativeXExponent,
  ZeroA,
  NonUnitPivot,
  TruncatedTable,
  NoTriangle,
  InconsistentRelations,
  DepthBoundTooSmall,
  SeedTooShort,
  InsufficientDepth,
  NotEquivariant,
  NotFixedWord,
  StabilizationFailure,
  UnsupportedOrbit,
  NegativeEntry,
  FaithfulnessViolation,
  BadInput,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::NonSmallType: return "NonSmallType";
    case Err::NotSymmetric: return "NotSymmetric";
    case Err::BadDiagonal: return "BadDiagonal";
    case Err::UnknownLabel: return "UnknownLabel";
    case Err::BadRank: return "BadRank";
    case Err::CapExceeded: return "CapExceeded";
    case Err::NotSpherical: return "NotSpherical";
    case Err::NonTerminating: return "NonTerminating";
    case Err::BoundaryTruncated: return "BoundaryTruncated";
    case Err::NotAffine: return "NotAffine";
    case Err::NotAtilde: return "NotAtilde";
    case Err::NotAUnit: return "NotAUnit";
    case Err::NegativeXExponent: return "NegativeXExponent";
    case Err::ZeroA: return "ZeroA";
    case Err::NonUnitPivot: return "NonUnitPivot";
    case Err::TruncatedTable: return "TruncatedTable";
    case Err::NoTriangle: return "NoTriangle";
    case Err::InconsistentRelations: return "InconsistentRelations";
    case Err::DepthBoundTooSmall: return "DepthBoundTooSmall";
    case Err::SeedTooShort: return "SeedTooShort";
    case Err::InsufficientDepth: return "InsufficientDepth";
    case Err::NotEquivariant: return "NotEquivariant";
    case Err::NotFixedWord: return "NotFixedWord";
    case Err::StabilizationFailure: return "StabilizationFailure";
    case Err::UnsupportedOrbit: return "UnsupportedOrbit";
    case Err::NegativeEntry: return "NegativeEntry";
    case Err::FaithfulnessViolation: return "FaithfulnessViolation";
    case Err::BadInput: return "BadInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

// One monomial x^xe * y^ye.  Ordered lexicographically; the map order is the
// canonical term order of the ring.
struct Monomial {
  int xe = 0;
  int ye = 0;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) {
    return a.xe != b.xe ? a.xe < b.xe : a.ye < b.ye;
  }
};

class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long v) {
    if (v != 0) terms_[Monomial{0, 0}] = v;
  }
  LaurentPoly(Int v) {
    if (v != 0) terms_[Monomial{0, 0}] = std::move(v);
  }

  static LaurentPoly monomial(Int coeff, int xe, int ye) {
    LaurentPoly p;
    if (coeff != 0) p.terms_[Monomial{xe, ye}] = std::move(coeff);
    return p;
  }
  static LaurentPoly x(int e = 1) { return monomial(1, e, 0); }
  static LaurentPoly y(int e = 1) { return monomial(1, 0, e); }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0} &&
           terms_.begin()->second == 1;
  }
  // Units of the ring are exactly +- x^a y^b.
  bool is_unit() const {
    return terms_.size() == 1 && (terms_.begin()->second == 1 || terms_.begin()->second == -1);
  }
  bool is_monomial() const { return terms_.size() == 1; }
  size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Int>& terms() const { return terms_; }

  Int coeff(int xe, int ye) const {
    auto it = terms_.find(Monomial{xe, ye});
    return it == terms_.end() ? Int(0) : it->second;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_)
        r.add_term(Monomial{ma.xe + mb.xe, ma.ye + mb.ye}, ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.terms_ == b.terms_;
  }

  LaurentPoly pow(unsigned e) const {
    LaurentPoly r(1), base = *this;
    while (e) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  // Integer power of a unit; negative exponents invert the monomial.
  LaurentPoly pow_unit(int e) const {
    if (e >= 0) return pow(static_cast<unsigned>(e));
    return unit_inverse().pow(static_cast<unsigned>(-e));
  }

  LaurentPoly unit_inverse() const {
    if (!is_unit()) fail(Err::NotAUnit, "inverse of non-unit " + str());
    const auto& [m, c] = *terms_.begin();
    return monomial(c, -m.xe, -m.ye);
  }

  // Exact quotient by a unit monomial.
  LaurentPoly div_by_unit(const LaurentPoly& u) const {
    if (!u.is_unit()) fail(Err::NotAUnit, u.str());
    return *this * u.unit_inverse();
  }

  // Exact division; nullopt when the divisor does not divide this exactly.
  std::optional<LaurentPoly> try_divide(const LaurentPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return LaurentPoly();
    const Monomial dl = d.terms_.rbegin()->first;
    // Per-variable support box of an exact quotient: the extreme x- and
    // y-levels of a product never cancel completely.
    auto box = [](const LaurentPoly& p) {
      int xlo = 0, xhi = 0, ylo = 0, yhi = 0;
      bool first = true;
      for (const auto& [m, c] : p.terms_) {
        (void)c;
        if (first || m.xe < xlo) xlo = m.xe;
        if (first || m.xe > xhi) xhi = m.xe;
        if (first || m.ye < ylo) ylo = m.ye;
        if (first || m.ye > yhi) yhi = m.ye;
        first = false;
      }
      return std::array<int, 4>{xlo, xhi, ylo, yhi};
    };
    const auto nb = box(*this), db = box(d);
    const int qx_lo = nb[0] - db[0], qx_hi = nb[1] - db[1];
    const int qy_lo = nb[2] - db[2], qy_hi = nb[3] - db[3];
    const Int& dlc = d.terms_.rbegin()->second;
    LaurentPoly q, r = *this;
    while (!r.is_zero()) {
      const auto& [rm, rc] = *r.terms_.rbegin();
      Monomial qm{rm.xe - dl.xe, rm.ye - dl.ye};
      if (qm.xe < qx_lo || qm.xe > qx_hi || qm.ye < qy_lo || qm.ye > qy_hi) return std::nullopt;
      if (rc % dlc != 0) return std::nullopt;
      LaurentPoly t = monomial(rc / dlc, qm.xe, qm.ye);
      q += t;
      r -= t * d;
    }
    return q;
  }

  int min_x_exponent() const {
    int m = 0;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
      (void)c;
      if (first || mono.xe < m) m = mono.xe;
      first = false;
    }
    return terms_.empty() ? 0 : m;
  }

  // Ring morphism x -> 0; defined only when no negative x-exponent occurs.
  LaurentPoly eval_x0() const {
    LaurentPoly r;
    for (const auto& [m, c] : terms_) {
      if (m.xe < 0) fail(Err::NegativeXExponent, str());
      if (m.xe == 0) r.terms_[m] = c;
    }
    return r;
  }

  Rat eval(const Rat& xv, const Rat& yv) const {
    Rat r = 0;
    for (const auto& [m, c] : terms_) r += Rat(c) * rat_pow(xv, m.xe) * rat_pow(yv, m.ye);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Int& c = it->second;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      Int ac = c < 0 ? Int(-c) : c;
      const Monomial& m = it->first;
      bool have_var = m.xe != 0 || m.ye != 0;
      if (ac != 1 || !have_var) {
        os << ac;
        if (have_var) os << "*";
      }
      if (m.xe != 0) {
        os << "x";
        if (m.xe != 1) os << "^" << m.xe;
        if (m.ye != 0) os << "*";
      }
      if (m.ye != 0) {
        os << "y";
        if (m.ye != 1) os << "^" << m.ye;
      }
    }
    return os.str();
  }

  // Parses the text form produced by str(), e.g. "3*x^-1*y^2 + 1".
  static LaurentPoly parse(const std::string& s) {
    LaurentPoly out;
    size_t i = 0;
    auto skip_ws = [&] { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; };
    skip_ws();
    if (i == s.size()) fail(Err::BadInput, "empty polynomial");
    bool first = true;
    while (i < s.size()) {
      skip_ws();
      int sign = 1;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
      } else if (!first) {
        fail(Err::BadInput, "expected '+' or '-' in \"" + s + "\"");
      }
      skip_ws();
      if (i >= s.size()) fail(Err::BadInput, "dangling sign in \"" + s + "\"");
      Int coeff = 1;
      int xe = 0, ye = 0;
      bool saw_factor = false;
      while (true) {
        skip_ws();
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) {
          size_t j = i;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
          coeff *= Int(s.substr(i, j - i));
          i = j;
          saw_factor = true;
        } else if (i < s.size() && (s[i] == 'x' || s[i] == 'y')) {
          char v = s[i++];
          int e = 1;
          if (i < s.size() && s[i] == '^') {
            ++i;
            size_t j = i;
            if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
            size_t k = j;
            while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
            if (k == j) fail(Err::BadInput, "bad exponent in \"" + s + "\"");
            e = std::stoi(s.substr(i, k - i));
            i = k;
          }
          (v == 'x' ? xe : ye) += e;
          saw_factor = true;
        } else {
          fail(Err::BadInput, "unexpected character in \"" + s + "\"");
        }
        skip_ws();
        if (i < s.size() && s[i] == '*') {
          ++i;
          continue;
        }
        break;
      }
      if (!saw_factor) fail(Err::BadInput, "empty term in \"" + s + "\"");
      out += monomial(sign * coeff, xe, ye);
      first = false;
      skip_ws();
    }
    return out;
  }

 private:
  static Rat rat_pow(const Rat& v, int e) {
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? v : Rat(1) / v;
    int n = e > 0 ? e : -e;
    Rat r = 1;
    while (n) {
      if (n & 1) r *= base;
      base *= base;
      n >>= 1;
    }
    return r;
  }

  void add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Monomial, Int> terms_;
};

// Localization at a declared multiplicative set: plain (num, den) pairs with
// equality by cross-multiplication.  Quotients simplify when the division
// happens to be exact in the base ring.
struct LaurentFraction {
  LaurentPoly num;
  LaurentPoly den;

  LaurentFraction() : num(), den(1) {}
  LaurentFraction(LaurentPoly n) : num(std::move(n)), den(1) {}
  LaurentFraction(long n) : num(n), den(1) {}
  LaurentFraction(LaurentPoly n, LaurentPoly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) fail(Err::BadInput, "zero denominator");
    normalize();
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_one() const { return num == den; }

  void normalize() {
    if (num.is_zero()) {
      den = LaurentPoly(1);
      return;
    }
    if (auto q = num.try_divide(den)) {
      num = *q;
      den = LaurentPoly(1);
    }
  }

  friend LaurentFraction operator+(const LaurentFraction& a, const LaurentFraction& b) {
    return LaurentFraction(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend LaurentFraction operator-(const LaurentFraction& a, const LaurentFraction& b) {
    return LaurentFraction(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend LaurentFraction operator*(const LaurentFraction& a, const LaurentFraction& b) {
    return LaurentFraction(a.num * b.num, a.den * b.den);
  }
  LaurentFraction operator-() const {
    LaurentFraction r = *this;
    r.num = -r.num;
    return r;
  }
  LaurentFraction& operator+=(const LaurentFraction& o) { return *this = *this + o; }
  LaurentFraction& operator*=(const LaurentFraction& o) { return *this = *this * o; }

  friend bool operator==(const LaurentFraction& a, const LaurentFraction& b) {
    return a.num * b.den == b.num * a.den;
  }

  std::string str() const {
    if (den.is_one()) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
  }
};

inline LaurentFraction frac_inverse(const LaurentFraction& f) {
  if (f.num.is_zero()) fail(Err::NonUnitPivot, "inverse of zero");
  return LaurentFraction(f.den, f.num);
}

// The parameter triple.  a is stored and the identity d*a = d^2 - b*c is
// checked once at construction.
struct LKParams {
  LaurentPoly b, c, d, a;
  LaurentPoly f;                          // seed value of the family
  std::optional<std::array<int, 3>> pqr;  // set when b,c,d = y^p,y^q,y^r

  void validate() const {
    if (!b.is_unit() || !c.is_unit() || !d.is_unit())
      fail(Err::NotAUnit, "b, c, d must be units");
    if (!(d * a == d * d - b * c)) fail(Err::BadInput, "a != d - bc/d");
  }
};

inline LKParams make_params(int p, int q, int r, LaurentPoly f = LaurentPoly::x() * LaurentPoly::y(2)) {
  LKParams P;
  P.b = LaurentPoly::y(p);
  P.c = LaurentPoly::y(q);
  P.d = LaurentPoly::y(r);
  P.a = LaurentPoly::y(r) - LaurentPoly::y(p + q - r);
  P.f = std::move(f);
  P.pqr = std::array<int, 3>{p, q, r};
  P.validate();
  return P;
}

inline LKParams make_params_poly(LaurentPoly b, LaurentPoly c, LaurentPoly d, LaurentPoly f) {
  LKParams P;
  P.a = d - (b * c).div_by_unit(d);
  P.b = std::move(b);
  P.c = std::move(c);
  P.d = std::move(d);
  P.f = std::move(f);
  P.validate();
  return P;
}

enum class Regime { YLess1, YGreater1 };

inline Rat regime_y(Regime r) { return r == Regime::YLess1 ? Rat(1, 2) : Rat(2); }

struct PositivityReport {
  bool a_pos = false, b_pos = false, c_pos = false, d_pos = false;
  bool all() const { return a_pos && b_pos && c_pos && d_pos; }
};

// Signs of (a,b,c,d) after x -> 0, in the ordered ring Z[y^{+-1}] embedded in
// R at the regime's sample point.  Exact rational evaluation; the monomial
// (p,q,r) fast path is equivalent and exercised by tests.
inline PositivityReport positivity_report(const LKParams& P, Regime regime) {
  if (P.a.is_zero()) fail(Err::ZeroA, "a = 0: criterion inapplicable");
  PositivityReport rep;
  if (P.pqr) {
    auto [p, q, r] = *P.pqr;
    if (2 * r == p + q) fail(Err::ZeroA, "2r = p+q gives a = 0");
    rep.b_pos = rep.c_pos = rep.d_pos = true;
    rep.a_pos = regime == Regime::YLess1 ? 2 * r < p + q : 2 * r > p + q;
    return rep;
  }
  const Rat y0 = regime_y(regime);
  auto sgn = [&](const LaurentPoly& p) { return p.eval_x0().eval(Rat(0), y0); };
  Rat av = sgn(P.a);
  if (av == 0) fail(Err::ZeroA, "a evaluates to 0");
  rep.a_pos = av > 0;
  rep.b_pos = sgn(P.b) > 0;
  rep.c_pos = sgn(P.c) > 0;
  rep.d_pos = sgn(P.d) > 0;
  return rep;
}

}  // namespace lkrep
