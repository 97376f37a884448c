#include "ggkit/series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace ggkit {

std::string rational_to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational rational_from_string(std::string_view s) {
  std::string str(s);
  auto slash = str.find('/');
  Rational r;
  try {
    if (slash == std::string::npos) {
      r = Rational(mpz_class(str));
    } else {
      mpz_class num(str.substr(0, slash)), den(str.substr(slash + 1));
      if (den == 0) throw SeriesError("zero denominator in rational '" + str + "'");
      r = Rational(num, den);
      r.canonicalize();
    }
  } catch (const std::invalid_argument&) {
    throw SeriesError("malformed rational '" + str + "'");
  }
  return r;
}

LaurentSeries::LaurentSeries(long min_exponent, long truncation, std::vector<Rational> coeffs)
    : min_(min_exponent), trunc_(truncation), c_(std::move(coeffs)) {
  if (min_ > trunc_ + 1) {
    min_ = trunc_ + 1;
    c_.clear();
    return;
  }
  c_.resize(static_cast<size_t>(trunc_ - min_ + 1));
}

LaurentSeries LaurentSeries::zero(long T) { return LaurentSeries(0, T, {}); }

LaurentSeries LaurentSeries::one(long T) { return monomial(0, 1, T); }

LaurentSeries LaurentSeries::monomial(long e, const Rational& c, long T) {
  if (e > T) return LaurentSeries(T + 1, T, {});
  return LaurentSeries(e, T, {c});
}

LaurentSeries LaurentSeries::from_terms(const std::vector<std::pair<long, Rational>>& terms, long T) {
  long lo = T + 1;
  for (auto& [e, c] : terms) lo = std::min(lo, e);
  LaurentSeries s(lo, T, {});
  for (auto& [e, c] : terms)
    if (e <= T) s.c_[e - lo] += c;
  return s;
}

Rational LaurentSeries::coeff(long e) const {
  if (e > trunc_)
    throw SeriesError("coefficient of q^" + std::to_string(e) + " requested beyond truncation " +
                      std::to_string(trunc_));
  if (e < min_) return 0;
  return c_[e - min_];
}

const Rational* LaurentSeries::coeff_ptr(long e) const {
  if (e < min_ || e > trunc_) return nullptr;
  return &c_[e - min_];
}

long LaurentSeries::valuation() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return min_ + static_cast<long>(k);
  return trunc_ + 1;
}

LaurentSeries LaurentSeries::truncated(long T) const {
  if (T > trunc_) throw SeriesError("cannot raise truncation from " + std::to_string(trunc_));
  std::vector<Rational> c;
  for (long e = min_; e <= T; ++e) c.push_back(c_[e - min_]);
  return LaurentSeries(min_, T, std::move(c));
}

std::string LaurentSeries::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (long e = min_; e <= trunc_; ++e) {
    const Rational& c = c_[e - min_];
    if (sgn(c) == 0) continue;
    Rational a = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = (a == 1);
    if (!unit || e == 0) os << a.get_str();
    if (e != 0) {
      if (!unit) os << "*";
      os << var;
      if (e != 1) os << "^" << e;
    }
    first = false;
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << trunc_ + 1 << ")";
  return os.str();
}

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  long T = std::min(a.truncation(), b.truncation());
  long lo = std::min(a.min_exponent(), b.min_exponent());
  std::vector<Rational> c(lo <= T ? T - lo + 1 : 0);
  for (long e = lo; e <= T; ++e) {
    if (auto p = a.coeff_ptr(e)) c[e - lo] += *p;
    if (auto p = b.coeff_ptr(e)) c[e - lo] += *p;
  }
  return LaurentSeries(lo, T, std::move(c));
}

LaurentSeries operator-(const LaurentSeries& a) { return a * Rational(-1); }

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const Rational& k) {
  std::vector<Rational> c = a.raw();
  for (auto& x : c) x *= k;
  return LaurentSeries(a.min_exponent(), a.truncation(), std::move(c));
}

LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
  long va = a.valuation(), vb = b.valuation();
  long T = std::min(a.truncation() + vb, b.truncation() + va);
  if (va > a.truncation() || vb > b.truncation()) return LaurentSeries::zero(T);
  long lo = va + vb;
  if (lo > T) return LaurentSeries(T + 1, T, {});
  std::vector<Rational> c(T - lo + 1);
  Rational tmp;
  for (long i = va; i <= a.truncation() && i + vb <= T; ++i) {
    const Rational& x = *a.coeff_ptr(i);
    if (sgn(x) == 0) continue;
    for (long j = vb; j <= b.truncation() && i + j <= T; ++j) {
      const Rational& y = *b.coeff_ptr(j);
      if (sgn(y) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
      mpq_add(c[i + j - lo].get_mpq_t(), c[i + j - lo].get_mpq_t(), tmp.get_mpq_t());
    }
  }
  return LaurentSeries(lo, T, std::move(c));
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return series_mul(a, b); }

LaurentSeries series_inverse(const LaurentSeries& a) {
  long v = a.valuation();
  if (v > a.truncation()) throw SeriesError("not invertible: no nonzero coefficient below truncation");
  long len = a.truncation() - v + 1;  // known terms of the unit part
  std::vector<Rational> u(len), w(len);
  for (long k = 0; k < len; ++k) u[k] = a.coeff(v + k);
  Rational inv0 = 1 / u[0];
  w[0] = inv0;
  Rational acc, tmp;
  for (long n = 1; n < len; ++n) {
    acc = 0;
    for (long j = 1; j <= n; ++j) {
      if (sgn(u[j]) == 0) continue;
      mpq_mul(tmp.get_mpq_t(), u[j].get_mpq_t(), w[n - j].get_mpq_t());
      mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
    }
    w[n] = -acc * inv0;
  }
  return LaurentSeries(-v, a.truncation() - 2 * v, std::move(w));
}

LaurentSeries shift(const LaurentSeries& a, long e) {
  return LaurentSeries(a.min_exponent() + e, a.truncation() + e, a.raw());
}

LaurentSeries substitute_power(const LaurentSeries& a, long m) {
  if (m < 1) throw SeriesError("substitute_power needs a positive power");
  if (m == 1) return a;
  long lo = a.min_exponent() * m;
  long T = (a.truncation() + 1) * m - 1;
  std::vector<Rational> c(lo <= T ? T - lo + 1 : 0);
  for (long e = a.min_exponent(); e <= a.truncation(); ++e) c[e * m - lo] = a.coeff(e);
  return LaurentSeries(lo, T, std::move(c));
}

long pochhammer_finite_valuation(long j, long b, long n) {
  long v = 0;
  for (long t = 0; t < n; ++t)
    if (j + t * b < 0) v += j + t * b;
  return v;
}

LaurentSeries pochhammer_finite(int sign, long j, long b, long n, long T) {
  if (sign != 1 && sign != -1) throw SeriesError("pochhammer sign must be +1 or -1");
  if (b < 1) throw SeriesError("pochhammer base must be positive");
  if (n < 0) {
    long m = -n;
    long j2 = j - m * b;
    // 1/D with D of valuation v is known to (T_D - 2v); pick T_D so that equals T.
    long v = pochhammer_finite_valuation(j2, b, m);
    return series_inverse(pochhammer_finite(sign, j2, b, m, T + 2 * v));
  }
  // Pull q^e out of factors with e < 0 so the remaining product has only
  // nonnegative exponents and can be truncated safely.
  Rational c = 1;
  long E = 0;
  std::vector<long> pos;
  for (long t = 0; t < n; ++t) {
    long e = j + t * b;
    if (e == 0) {
      c *= (1 - sign);
    } else if (e < 0) {
      c *= -sign;
      E += e;
      pos.push_back(-e);
    } else {
      pos.push_back(e);
    }
  }
  if (sgn(c) == 0) return LaurentSeries::zero(T);
  long D = T - E;  // degree bound for the positive part
  if (D < 0) return LaurentSeries(T + 1, T, {});
  std::vector<Rational> p(D + 1);
  p[0] = c;
  long deg = 0;
  for (long e : pos) {
    if (e > D) continue;
    long top = std::min(D, deg + e);
    for (long x = top; x >= e; --x) {
      if (sgn(p[x - e]) == 0) continue;
      if (sign == 1)
        p[x] -= p[x - e];
      else
        p[x] += p[x - e];
    }
    deg = top;
  }
  return LaurentSeries(E, T, std::move(p));
}

LaurentSeries pochhammer_infinite(int sign, long j, long b, long T) {
  if (j <= 0) throw SeriesError("divergent formal product: infinite pochhammer needs shift >= 1");
  if (b < 1) throw SeriesError("pochhammer base must be positive");
  long n = 0;
  while (j + n * b <= T) ++n;
  return pochhammer_finite(sign, j, b, n, T);
}

LaurentSeries theta_bressoud_sum(int k, int i, long T) {
  if (!(k >= i && i >= 1)) throw SeriesError("theta sum needs k >= i >= 1");
  std::vector<std::pair<long, Rational>> terms{{0, 1}};
  long a = 2L * k - 1, d = 2L * (k - i);
  for (long n = 1;; ++n) {
    long lo = a * n * n - d * n;
    if (lo > T) break;
    Rational s = (n % 2) ? -1 : 1;
    terms.push_back({lo, s});
    terms.push_back({a * n * n + d * n, s});
  }
  return LaurentSeries::from_terms(terms, T);
}

LaurentSeries product_triple(int k, int i, long T) {
  if (!(k >= i && i >= 1)) throw SeriesError("triple product needs k >= i >= 1");
  long m = 4L * k - 2;
  return pochhammer_infinite(1, 2L * i - 1, m, T) * pochhammer_infinite(1, m - 2L * i + 1, m, T) *
         pochhammer_infinite(1, m, m, T);
}

SeriesDiff compare(const LaurentSeries& a, const LaurentSeries& b) {
  SeriesDiff d;
  long T = std::min(a.truncation(), b.truncation());
  d.compared_up_to = T;
  long lo = std::min(a.min_exponent(), b.min_exponent());
  for (long e = lo; e <= T; ++e) {
    Rational x = a.coeff(e), y = b.coeff(e);
    if (x != y) {
      d.equal = false;
      d.exponent = e;
      d.lhs = x;
      d.rhs = y;
      return d;
    }
  }
  return d;
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) { return compare(a, b).equal; }

nlohmann::json to_json(const LaurentSeries& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (auto& c : s.raw()) coeffs.push_back(rational_to_string(c));
  return {{"min_exponent", s.min_exponent()}, {"truncation", s.truncation()}, {"coeffs", coeffs}};
}

LaurentSeries series_from_json(const nlohmann::json& j) {
  std::vector<Rational> c;
  for (auto& x : j.at("coeffs")) c.push_back(rational_from_string(x.get<std::string>()));
  long lo = j.at("min_exponent").get<long>(), T = j.at("truncation").get<long>();
  if (static_cast<long>(c.size()) > T - lo + 1) throw SeriesError("more coefficients than the truncation allows");
  return LaurentSeries(lo, T, std::move(c));
}

BivariateSeries::BivariateSeries(long T) : trunc_(T), grid_(T >= 0 ? T + 1 : 0) {}

void BivariateSeries::add(long m, const LaurentSeries& s) {
  if (m < 0) throw SeriesError("negative x exponent");
  if (s.truncation() < trunc_)
    throw SeriesError("term known only to q^" + std::to_string(s.truncation()) + ", need q^" +
                      std::to_string(trunc_));
  if (s.valuation() < 0) throw SeriesError("bivariate series cannot hold negative q exponents");
  for (long n = std::max(0L, s.min_exponent()); n <= trunc_; ++n) {
    const Rational& c = *s.coeff_ptr(n);
    if (sgn(c) == 0) continue;
    add_count(m, n, c);
  }
}

void BivariateSeries::add_count(long m, long n, const Rational& c) {
  if (n < 0 || n > trunc_) throw SeriesError("q exponent outside bivariate range");
  auto& row = grid_[n];
  if (static_cast<long>(row.size()) <= m) row.resize(m + 1);
  row[m] += c;
}

Rational BivariateSeries::coeff(long m, long n) const {
  if (n > trunc_) throw SeriesError("coefficient beyond truncation");
  if (n < 0 || m < 0 || m >= static_cast<long>(grid_[n].size())) return 0;
  return grid_[n][m];
}

long BivariateSeries::x_degree(long n) const {
  const auto& row = grid_.at(n);
  for (long m = static_cast<long>(row.size()) - 1; m >= 0; --m)
    if (sgn(row[m]) != 0) return m;
  return -1;
}

LaurentSeries BivariateSeries::at_x_one() const {
  std::vector<Rational> c(grid_.size());
  for (size_t n = 0; n < grid_.size(); ++n)
    for (auto& x : grid_[n]) c[n] += x;
  return LaurentSeries(0, trunc_, std::move(c));
}

BivariateDiff compare(const BivariateSeries& a, const BivariateSeries& b) {
  BivariateDiff d;
  long T = std::min(a.truncation(), b.truncation());
  for (long n = 0; n <= T; ++n) {
    long M = std::max(a.x_degree(n), b.x_degree(n));
    for (long m = 0; m <= M; ++m) {
      Rational x = a.coeff(m, n), y = b.coeff(m, n);
      if (x != y) {
        d.equal = false;
        d.m = m;
        d.n = n;
        d.lhs = x;
        d.rhs = y;
        return d;
      }
    }
  }
  return d;
}

nlohmann::json to_json(const BivariateSeries& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (auto& row : s.grid()) {
    nlohmann::json r = nlohmann::json::array();
    for (auto& c : row) r.push_back(rational_to_string(c));
    rows.push_back(r);
  }
  return {{"truncation", s.truncation()}, {"x_coeffs_by_q_exponent", rows}};
}

}  // namespace ggkit
