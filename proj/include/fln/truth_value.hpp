#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fln/error.hpp"

namespace fln {

using Rational = mpq_class;

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  auto digits_only = [](std::string_view d) {
    if (d.empty()) return false;
    std::size_t i = (d[0] == '-') ? 1 : 0;
    if (i == d.size()) return false;
    for (; i < d.size(); ++i)
      if (d[i] < '0' || d[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_only(s)) throw RangeError("malformed rational '" + s + "'");
    return Rational(mpz_class(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!digits_only(num) || !digits_only(den) || den[0] == '-')
    throw RangeError("malformed rational '" + s + "'");
  mpz_class d(den);
  if (d == 0) throw RangeError("zero denominator in '" + s + "'");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

inline std::string rational_to_string(const Rational& r) {
  Rational c(r);
  c.canonicalize();
  return c.get_str();
}

/// An element of the standard Łukasiewicz algebra on [0,1], held as an exact
/// rational. Every constructor enforces 0 <= value <= 1.
class TruthValue {
public:
  TruthValue() = default;

  TruthValue(long num, long den) : v_(num, den) {
    if (den == 0) throw RangeError("zero denominator");
    v_.canonicalize();
    check();
  }

  explicit TruthValue(const Rational& r) : v_(r) {
    v_.canonicalize();
    check();
  }

  static TruthValue zero() { return TruthValue(); }
  static TruthValue one() { return TruthValue(1, 1); }

  /// Accepts `p/q`, `0` and `1` (and any integer/rational that lands in [0,1]).
  static TruthValue parse(std::string_view text) {
    auto r = parse_rational(text);
    if (r < 0 || r > 1) throw RangeError("truth value '" + std::string(text) + "' outside [0,1]");
    return TruthValue(r);
  }

  const Rational& rational() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }

  std::string str() const { return v_.get_str(); }
  double to_double() const { return v_.get_d(); }

  friend bool operator==(const TruthValue& a, const TruthValue& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const TruthValue& a, const TruthValue& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const TruthValue& a) { return os << a.str(); }

private:
  struct Unchecked {};
  TruthValue(Rational r, Unchecked) : v_(std::move(r)) {}

  void check() const {
    if (v_ < 0 || v_ > 1) throw RangeError("truth value " + v_.get_str() + " outside [0,1]");
  }

  Rational v_{0};

  friend TruthValue luk_and(const TruthValue&, const TruthValue&);
  friend TruthValue luk_imp(const TruthValue&, const TruthValue&);
  friend TruthValue luk_neg(const TruthValue&);
  friend TruthValue luk_or(const TruthValue&, const TruthValue&);
  friend TruthValue power(const TruthValue&, int);
  friend TruthValue multiple(const TruthValue&, int);
  friend TruthValue biresiduum(const TruthValue&, const TruthValue&);
};

/// a ⊗ b = max(0, a + b - 1)
inline TruthValue luk_and(const TruthValue& a, const TruthValue& b) {
  Rational s = a.v_ + b.v_ - 1;
  if (sgn(s) <= 0) return TruthValue();
  return TruthValue(std::move(s), TruthValue::Unchecked{});
}

/// a ⇒ b = min(1, 1 - a + b)
inline TruthValue luk_imp(const TruthValue& a, const TruthValue& b) {
  if (a.v_ <= b.v_) return TruthValue::one();
  return TruthValue(Rational(1 - a.v_ + b.v_), TruthValue::Unchecked{});
}

inline TruthValue luk_neg(const TruthValue& a) {
  return TruthValue(Rational(1 - a.v_), TruthValue::Unchecked{});
}

/// a ⊕ b = min(1, a + b)
inline TruthValue luk_or(const TruthValue& a, const TruthValue& b) {
  Rational s = a.v_ + b.v_;
  if (s >= 1) return TruthValue::one();
  return TruthValue(std::move(s), TruthValue::Unchecked{});
}

inline TruthValue meet(const TruthValue& a, const TruthValue& b) { return b < a ? b : a; }
inline TruthValue join(const TruthValue& a, const TruthValue& b) { return a < b ? b : a; }

/// (a ⇒ b) ∧ (b ⇒ a) = 1 - |a - b|
inline TruthValue biresiduum(const TruthValue& a, const TruthValue& b) {
  Rational d = a.v_ - b.v_;
  return TruthValue(Rational(1 - abs(d)), TruthValue::Unchecked{});
}

/// n-fold ⊗: max(0, n·a - (n-1)). Requires n >= 1.
inline TruthValue power(const TruthValue& a, int n) {
  if (n < 1) throw RangeError("power exponent must be >= 1");
  Rational r = a.v_ * n - (n - 1);
  if (sgn(r) <= 0) return TruthValue();
  return TruthValue(std::move(r), TruthValue::Unchecked{});
}

/// n-fold ⊕: min(1, n·a). Requires n >= 1.
inline TruthValue multiple(const TruthValue& a, int n) {
  if (n < 1) throw RangeError("multiple count must be >= 1");
  Rational r = a.v_ * n;
  if (r >= 1) return TruthValue::one();
  return TruthValue(std::move(r), TruthValue::Unchecked{});
}

/// The finite MV-chain Ł_k = {0, 1/k, ..., 1}.
class MVChain {
public:
  explicit MVChain(int granularity) : k_(granularity) {
    if (k_ < 1) throw RangeError("chain granularity must be >= 1");
  }

  int granularity() const { return k_; }
  std::size_t size() const { return static_cast<std::size_t>(k_) + 1; }

  TruthValue at(int i) const { return TruthValue(i, k_); }

  std::vector<TruthValue> values() const {
    std::vector<TruthValue> out;
    out.reserve(size());
    for (int i = 0; i <= k_; ++i) out.emplace_back(i, k_);
    return out;
  }

  bool contains(const TruthValue& a) const {
    mpz_class den = a.rational().get_den();
    if (!den.fits_slong_p()) return false;
    return k_ % den.get_si() == 0;
  }

private:
  int k_;
};

inline std::vector<TruthValue> chain_values(int k) { return MVChain(k).values(); }

/// Smallest k such that every value lies in Ł_k.
inline int common_granularity(const std::vector<TruthValue>& values) {
  mpz_class l = 1;
  for (const auto& v : values) {
    mpz_class d = v.rational().get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  if (!l.fits_sint_p()) throw RangeError("granularity too large");
  return static_cast<int>(l.get_si());
}

}  // namespace fln
