#include "ggkit/bailey.hpp"

#include <map>

namespace ggkit {

namespace {

// 1/(q;q)_m with q = z^b, memoised per call site.
class InverseFactorials {
 public:
  InverseFactorials(long b, long T) : b_(b), T_(T) {}
  const LaurentSeries& operator()(long m) {
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
    auto s = series_inverse(pochhammer_finite(1, b_, b_, m, T_)).truncated(T_);
    return cache_.emplace(m, std::move(s)).first->second;
  }

 private:
  long b_, T_;
  std::map<long, LaurentSeries> cache_;
};

long integral(const Rational& r, const char* what) {
  if (r.get_den() != 1) throw BaileyError(std::string(what) + ": exponent not integral on this grid");
  return r.get_num().get_si();
}

void require_shape(const BaileyPair& p) {
  if (p.alpha.size() != p.beta.size() || p.alpha.empty()) throw BaileyError("pair has mismatched or empty sequences");
}

}  // namespace

LaurentSeries theta_alpha(const Rational& A, const Rational& B, long n, long base, long T) {
  if (n == 0) return LaurentSeries::one(T);
  Rational quad = A * n * n * base, lin = B * n * base;
  long e1 = integral(quad + lin, "theta alpha"), e2 = integral(quad - lin, "theta alpha");
  Rational sign = n % 2 ? -1 : 1;
  return LaurentSeries::from_terms({{e1, sign}, {e2, sign}}, T);
}

BaileyPair unit_pair(long n_max, long T) {
  BaileyPair p;
  p.base = 2;
  p.T = T;
  p.label = "unit";
  for (long n = 0; n <= n_max; ++n) {
    p.alpha.push_back(theta_alpha(Rational(1, 2), Rational(1, 2), n, 2, T));
    p.beta.push_back(n == 0 ? LaurentSeries::one(T) : LaurentSeries::zero(T));
  }
  return p;
}

BaileyPair transform_bl1(const BaileyPair& p) {
  require_shape(p);
  long b = p.base, T = p.T;
  InverseFactorials inv(b, T);
  BaileyPair out;
  out.base = b;
  out.T = T;
  out.label = p.label + " > bl1";
  for (long n = 0; n < p.size(); ++n) {
    out.alpha.push_back(shift(p.alpha[n], b * n * n).truncated(T));
    auto acc = LaurentSeries::zero(T);
    for (long j = 0; j <= n && b * j * j <= T; ++j) {
      if (p.beta[j].is_zero()) continue;
      acc = acc + shift(inv(n - j) * p.beta[j], b * j * j).truncated(T);
    }
    out.beta.push_back(acc.truncated(T));
  }
  return out;
}

BaileyPair transform_bl4(const BaileyPair& p, const Rational& A) {
  require_shape(p);
  long b = p.base, T = p.T;
  for (long n = 0; n < p.size(); ++n) {
    auto want = theta_alpha(A, A - 1, n, b, T);
    auto d = compare(p.alpha[n], want);
    if (!d.equal)
      throw BaileyError("proposition precondition violated at n=" + std::to_string(n) + " (exponent " +
                        std::to_string(d.exponent) + ")");
  }
  BaileyPair out;
  out.base = b;
  out.T = T;
  out.label = p.label + " > bl4(A=" + A.get_str() + ")";
  for (long n = 0; n < p.size(); ++n) {
    out.alpha.push_back(theta_alpha(A, A, n, b, T));
    out.beta.push_back(shift(p.beta[n], b * n).truncated(T));
  }
  return out;
}

BaileyPair transform_base_change(const BaileyPair& p) {
  require_shape(p);
  long T = p.T;
  // New storage variable w with q = w^nb, so the old base is q^2 = w^(2 nb).
  long nb = p.base % 2 == 0 ? p.base / 2 : p.base;
  auto conv = [&](const LaurentSeries& s) {
    return p.base % 2 == 0 ? s : substitute_power(s, 2).truncated(T);
  };
  InverseFactorials inv2(2 * nb, T);
  BaileyPair out;
  out.base = nb;
  out.T = T;
  out.label = p.label + " > base change";
  std::vector<LaurentSeries> betas;
  for (long n = 0; n < p.size(); ++n) betas.push_back(conv(p.beta[n]));
  std::vector<LaurentSeries> coef;  // (-1;q)_{2k} q^k
  for (long k = 0; k < p.size() && nb * k <= T; ++k) {
    if (k == 0) {
      coef.push_back(LaurentSeries::one(T));
    } else {
      auto poch = pochhammer_finite(-1, nb, nb, 2 * k - 1, T) * Rational(2);
      coef.push_back(shift(poch, nb * k).truncated(T));
    }
  }
  for (long n = 0; n < p.size(); ++n) {
    if (n == 0) {
      out.alpha.push_back(conv(p.alpha[0]));
    } else {
      auto denom = LaurentSeries::from_terms({{0, 1}, {2 * nb * n, 1}}, T);
      auto a = shift(series_inverse(denom) * conv(p.alpha[n]), nb * n) * Rational(2);
      out.alpha.push_back(a.truncated(T));
    }
    auto acc = LaurentSeries::zero(T);
    for (long k = 0; k <= n && k < static_cast<long>(coef.size()); ++k) {
      if (betas[k].is_zero()) continue;
      acc = acc + (coef[k] * inv2(n - k) * betas[k]).truncated(T);
    }
    out.beta.push_back(acc.truncated(T));
  }
  return out;
}

BaileyPair combine(const std::vector<BaileyPair>& pairs, const std::vector<Rational>& weights) {
  if (pairs.empty() || pairs.size() != weights.size()) throw BaileyError("combine needs one weight per pair");
  const auto& first = pairs.front();
  BaileyPair out;
  out.base = first.base;
  out.T = first.T;
  for (auto& p : pairs) {
    require_shape(p);
    if (p.base != first.base || p.size() != first.size()) throw BaileyError("combine needs pairs of equal base and length");
    out.T = std::min(out.T, p.T);
  }
  out.label = "combine(";
  for (size_t j = 0; j < pairs.size(); ++j) out.label += (j ? ", " : "") + weights[j].get_str() + "*[" + pairs[j].label + "]";
  out.label += ")";
  for (long n = 0; n < first.size(); ++n) {
    auto a = LaurentSeries::zero(out.T), b = LaurentSeries::zero(out.T);
    for (size_t j = 0; j < pairs.size(); ++j) {
      a = a + pairs[j].alpha[n].truncated(out.T) * weights[j];
      b = b + pairs[j].beta[n].truncated(out.T) * weights[j];
    }
    out.alpha.push_back(a);
    out.beta.push_back(b);
  }
  return out;
}

RelationCheck verify_pair_relation(const BaileyPair& p, long n_max) {
  require_shape(p);
  InverseFactorials inv(p.base, p.T);
  RelationCheck rc;
  for (long n = 0; n <= n_max && n < p.size(); ++n) {
    auto acc = LaurentSeries::zero(p.T);
    for (long r = 0; r <= n; ++r) acc = acc + (p.alpha[r] * inv(n - r) * inv(n + r)).truncated(p.T);
    auto d = compare(acc, p.beta[n]);
    if (!d.equal) {
      rc.ok = false;
      rc.n = n;
      rc.diff = d;
      return rc;
    }
  }
  return rc;
}

std::vector<ChainStage> run_chain_stages(int k, int i, long n_max, long T) {
  if (i == k) throw BaileyError("chain undefined for i=k");
  if (!(k > i && i >= 1)) throw BaileyError("chain needs 1 <= i < k");
  std::vector<ChainStage> st;
  st.push_back({"unit", unit_pair(n_max, T)});
  st.push_back({"quadratic", transform_bl1(st.back().pair)});
  for (int j = 0; j < k - i - 1; ++j)
    st.push_back({"alternation " + std::to_string(j + 1),
                  transform_bl1(transform_bl4(st.back().pair, Rational(2 * j + 3, 2)))});
  BaileyPair balanced = st.back().pair;
  BaileyPair shifted = transform_bl4(balanced, Rational(2 * k - 2 * i + 1, 2));
  st.push_back({"shifted", shifted});
  st.push_back({"averaged", combine({balanced, shifted}, {Rational(1, 2), Rational(1, 2)})});
  for (int j = 0; j < i - 1; ++j) st.push_back({"lifted " + std::to_string(j + 1), transform_bl1(st.back().pair)});
  st.push_back({"base changed", transform_base_change(st.back().pair)});
  return st;
}

BaileyPair run_chain(int k, int i, long n_max, long T) { return run_chain_stages(k, i, n_max, T).back().pair; }

long limit_index(long T) { return (3 * T) / 2 + 2; }

LimitIdentity limit_identity(const BaileyPair& p, long T) {
  require_shape(p);
  if (p.base != 1) throw BaileyError("limit identity needs a pair in base q");
  if (p.T < T) throw BaileyError("pair truncation below requested order");
  long n = limit_index(T);
  if (n >= p.size()) throw BaileyError("beta index " + std::to_string(n) + " not available; pair too short to settle");
  auto q2 = pochhammer_infinite(1, 2, 2, T);
  auto lhs = (q2 * p.beta[n].truncated(T)).truncated(T);
  auto prev = (q2 * p.beta[n - 1].truncated(T)).truncated(T);
  if (!compare(lhs, prev).equal)
    throw BaileyError("limit not settled at n=" + std::to_string(n));
  if (p.alpha.back().valuation() <= T)
    throw BaileyError("alpha sum not settled: last alpha term below truncation");
  auto sum = LaurentSeries::zero(T);
  for (auto& a : p.alpha) sum = sum + a.truncated(T);
  auto inv = series_inverse(pochhammer_infinite(1, 1, 1, T));
  auto rhs = (q2 * inv * inv * sum).truncated(T);
  return {lhs, rhs, compare(lhs, rhs)};
}

nlohmann::json to_json(const BaileyPair& p, long n_max) {
  nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array();
  for (long n = 0; n <= n_max && n < p.size(); ++n) {
    a.push_back(to_json(p.alpha[n]));
    b.push_back(to_json(p.beta[n]));
  }
  return {{"label", p.label}, {"base", p.base}, {"truncation", p.T}, {"alpha", a}, {"beta", b}};
}

}  // namespace ggkit
