#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ggkit {

using Rational = mpq_class;

std::string rational_to_string(const Rational& r);
Rational rational_from_string(std::string_view s);

class SeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Truncated Laurent series in q. Coefficients for exponents in
// [min_exponent, truncation] are known; anything above truncation is unknown.
class LaurentSeries {
 public:
  LaurentSeries() : min_(0), trunc_(-1) {}
  LaurentSeries(long min_exponent, long truncation, std::vector<Rational> coeffs);

  static LaurentSeries zero(long T);
  static LaurentSeries one(long T);
  static LaurentSeries monomial(long e, const Rational& c, long T);
  // Sum of c_j q^{e_j} for a finite list of terms.
  static LaurentSeries from_terms(const std::vector<std::pair<long, Rational>>& terms, long T);

  long min_exponent() const { return min_; }
  long truncation() const { return trunc_; }
  // Throws for e > truncation; zero below min_exponent.
  Rational coeff(long e) const;
  const Rational* coeff_ptr(long e) const;
  // Lowest exponent with a nonzero coefficient, truncation()+1 if none.
  long valuation() const;
  bool is_zero() const { return valuation() > trunc_; }
  const std::vector<Rational>& raw() const { return c_; }

  LaurentSeries truncated(long T) const;

  std::string to_string(const std::string& var = "q") const;

 private:
  long min_;
  long trunc_;
  std::vector<Rational> c_;  // c_[e - min_] for e in [min_, trunc_]
};

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries operator-(const LaurentSeries& a);
LaurentSeries operator*(const LaurentSeries& a, const Rational& c);
LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b);
LaurentSeries series_inverse(const LaurentSeries& a);
// Multiply by q^e; shifts both the support and the truncation.
LaurentSeries shift(const LaurentSeries& a, long e);
LaurentSeries substitute_power(const LaurentSeries& a, long m);

// (sign*q^j; q^b)_n: sign=+1 gives prod(1 - q^{j+tb}), sign=-1 gives prod(1 + q^{j+tb}).
// Negative n follows (a;q)_{-n} = 1/(a q^{-n b}; q^b)_n.
LaurentSeries pochhammer_finite(int sign, long j, long b, long n, long T);
// Lowest exponent of the expanded finite product (n >= 0).
long pochhammer_finite_valuation(long j, long b, long n);
LaurentSeries pochhammer_infinite(int sign, long j, long b, long T);

// 1 + sum_{n>=1} (-1)^n q^{(2k-1)n^2} (q^{-2(k-i)n} + q^{2(k-i)n})
LaurentSeries theta_bressoud_sum(int k, int i, long T);
// (q^{2i-1}, q^{4k-2i-1}, q^{4k-2}; q^{4k-2})_inf
LaurentSeries product_triple(int k, int i, long T);

struct SeriesDiff {
  bool equal = true;
  long exponent = 0;  // first differing exponent when !equal
  Rational lhs, rhs;
  long compared_up_to = 0;
};
// Compares on the intersection of validity ranges.
SeriesDiff compare(const LaurentSeries& a, const LaurentSeries& b);
bool operator==(const LaurentSeries& a, const LaurentSeries& b);

nlohmann::json to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const nlohmann::json& j);

// q-truncated series whose q^n coefficient is a polynomial in x.
// Only nonnegative q exponents are stored.
class BivariateSeries {
 public:
  BivariateSeries() : trunc_(-1) {}
  explicit BivariateSeries(long T);

  long truncation() const { return trunc_; }
  // Adds x^m * s; s must be known up to truncation() and vanish below q^0.
  void add(long m, const LaurentSeries& s);
  void add_count(long m, long n, const Rational& c);
  Rational coeff(long m, long n) const;
  long x_degree(long n) const;  // -1 for the zero polynomial
  LaurentSeries at_x_one() const;
  const std::vector<std::vector<Rational>>& grid() const { return grid_; }

 private:
  long trunc_;
  std::vector<std::vector<Rational>> grid_;  // grid_[n][m]
};

struct BivariateDiff {
  bool equal = true;
  long m = 0, n = 0;
  Rational lhs, rhs;
};
BivariateDiff compare(const BivariateSeries& a, const BivariateSeries& b);

nlohmann::json to_json(const BivariateSeries& s);

}  // namespace ggkit
