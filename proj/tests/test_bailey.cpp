#include <doctest.h>

#include <functional>

#include "ggkit/bailey.hpp"
#include "ggkit/verifier.hpp"
#include "helpers.hpp"

using namespace ggkit;
using testing::same;

namespace {

// Closed forms written out as explicit z-exponent terms (q = z^2).
LaurentSeries z_terms(const std::vector<std::pair<long, Rational>>& t, long T) { return LaurentSeries::from_terms(t, T); }

// (-1)^n q^{a n^2/2} (q^{-b n/2} + q^{c n/2}) (1 + q^n)/2 on the z grid.
LaurentSeries averaged_alpha(long a, long b, long c, long n, long T) {
  if (n == 0) return LaurentSeries::one(T);
  Rational s = n % 2 ? Rational(-1, 2) : Rational(1, 2);
  long base = a * n * n;
  return z_terms({{base - b * n, s}, {base + c * n, s}, {base - b * n + 2 * n, s}, {base + c * n + 2 * n, s}}, T);
}

LaurentSeries inv_qq(long n, long T) { return series_inverse(pochhammer_finite(1, 1, 1, n, T)).truncated(T); }

// sum over n >= N_first >= ... >= N_{k-1} >= 0 of term(N) / prod (q^b;q^b)_{N_{j-1} - N_j},
// with N_0 = ... = N_{first-1} = n and N_k = 0.
LaurentSeries chain_sum(long n, int k, int first, long b, long T,
                        const std::function<LaurentSeries(const std::vector<long>&)>& term) {
  std::vector<long> N(k + 1, 0);
  for (int j = 0; j < first; ++j) N[j] = n;
  auto total = LaurentSeries::zero(T);
  std::function<void(int)> rec = [&](int j) {
    if (j == k) {
      auto t = term(N);
      for (int r = first; r <= k; ++r) {
        long d = N[r - 1] - (r == k ? 0 : N[r]);
        t = (t * series_inverse(pochhammer_finite(1, b, b, d, T))).truncated(T);
      }
      total = total + t;
      return;
    }
    for (long v = 0; v <= N[j - 1]; ++v) {
      N[j] = v;
      rec(j + 1);
    }
  };
  if (first < k) {
    rec(first);
  } else {
    N[k] = 0;
    rec(k);
  }
  return total;
}

const ChainStage& stage(const std::vector<ChainStage>& st, const std::string& name) {
  for (auto& s : st)
    if (s.name == name) return s;
  FAIL("no stage " << name);
  return st.front();
}

}  // namespace

TEST_CASE("unit pair") {
  auto u = unit_pair(10, 40);
  CHECK(u.base == 2);
  CHECK(same(u.beta[0], LaurentSeries::one(40)));
  for (long n = 1; n <= 10; ++n) CHECK(u.beta[n].is_zero());
  // -1 - q, stored in z = q^{1/2}
  CHECK(same(u.alpha[1], z_terms({{0, -1}, {2, -1}}, 40)));
  CHECK(same(u.alpha[0], LaurentSeries::one(40)));
  CHECK(verify_pair_relation(u, 8).ok);
}

TEST_CASE("quadratic step gives the reciprocal factorials") {
  auto p = transform_bl1(unit_pair(10, 40));
  CHECK(same(p.alpha[0], LaurentSeries::one(40)));
  for (long n = 0; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(same(p.beta[n], substitute_power(inv_qq(n, 20), 2)));
  }
  CHECK(verify_pair_relation(p, 8).ok);
}

TEST_CASE("shift step checks its input form") {
  auto p = transform_bl1(unit_pair(8, 40));
  auto q = transform_bl4(p, Rational(3, 2));
  CHECK(same(q.alpha[0], LaurentSeries::one(40)));
  for (long n = 0; n <= 8; ++n) CHECK(same(q.beta[n], shift(p.beta[n], 2 * n).truncated(40)));
  CHECK(verify_pair_relation(q, 8).ok);

  CHECK_THROWS_AS(transform_bl4(p, Rational(5, 2)), BaileyError);
  CHECK_THROWS_WITH_AS(transform_bl4(unit_pair(8, 40), Rational(3, 2)),
                       doctest::Contains("proposition precondition violated at n=1"), BaileyError);
}

TEST_CASE("combine") {
  auto p = transform_bl1(unit_pair(6, 30));
  auto c = combine({p}, {Rational(1)});
  for (long n = 0; n < p.size(); ++n) {
    CHECK(same(c.alpha[n], p.alpha[n]));
    CHECK(same(c.beta[n], p.beta[n]));
  }
  CHECK_THROWS_AS(combine({p, unit_pair(5, 30)}, {1, 1}), BaileyError);
  CHECK_THROWS_AS(combine({p}, {1, 1}), BaileyError);
  auto mixed = combine({p, transform_bl4(p, Rational(3, 2))}, {Rational(1, 3), Rational(2, 3)});
  CHECK(verify_pair_relation(mixed, 6).ok);
}

TEST_CASE("base change at n = 0 reads the input at q^2") {
  auto st = run_chain_stages(2, 1, 8, 40);
  auto& last = st.back().pair;
  auto& before = st[st.size() - 2].pair;
  CHECK(before.base == 2);
  CHECK(last.base == 1);
  // stored in z = q^{1/2}, so reading at q^2 means reading the raw z series as q
  CHECK(same(last.beta[0], before.beta[0]));
}

TEST_CASE("a wrong pair fails the relation") {
  auto p = transform_bl1(unit_pair(6, 30));
  p.beta[3] = p.beta[3] + LaurentSeries::monomial(7, 1, 30);
  auto rc = verify_pair_relation(p, 6);
  CHECK_FALSE(rc.ok);
  CHECK(rc.n == 3);
  CHECK(rc.diff.exponent == 7);
}

TEST_CASE("chain stages match their closed forms") {
  const long T = 40, nmax = 8;
  for (int k = 2; k <= 4; ++k)
    for (int i = 1; i < k; ++i) {
      CAPTURE(k);
      CAPTURE(i);
      auto st = run_chain_stages(k, i, nmax, T);
      for (auto& s : st) {
        CAPTURE(s.name);
        CHECK(verify_pair_relation(s.pair, 8).ok);
      }
      const auto& balanced = st[st.size() - 4 - (i - 1)].pair;
      const auto& shifted = stage(st, "shifted").pair;
      const auto& averaged = stage(st, "averaged").pair;
      const auto& before_change = st[st.size() - 2].pair;
      const auto& final_pair = st.back().pair;
      long a = 2 * k - 2 * i + 1;
      for (long n = 0; n <= 6; ++n) {
        CAPTURE(n);
        CHECK(same(balanced.alpha[n], theta_alpha(Rational(a, 2), Rational(a - 2, 2), n, 2, T)));
        CHECK(same(shifted.alpha[n], theta_alpha(Rational(a, 2), Rational(a, 2), n, 2, T)));
        CHECK(same(averaged.alpha[n], averaged_alpha(a, a, a - 2, n, T)));
        CHECK(same(before_change.alpha[n], averaged_alpha(2 * k - 1, a, a - 2, n, T)));
        CHECK(same(final_pair.alpha[n], theta_alpha(2 * k - 1, 2 * (k - i), n, 1, T)));
        // the quadratic stage is the shared start
        CHECK(same(stage(st, "quadratic").pair.beta[n], substitute_power(inv_qq(n, T / 2), 2)));
      }
    }
}

TEST_CASE("chain stage betas match their multisums") {
  const long T = 40, Tq = T / 2;
  for (int k = 2; k <= 4; ++k)
    for (int i = 1; i < k; ++i) {
      CAPTURE(k);
      CAPTURE(i);
      auto st = run_chain_stages(k, i, 6, T);
      const auto& avg = stage(st, "averaged").pair;
      const auto& before_change = st[st.size() - 2].pair;
      const auto& final_pair = st.back().pair;
      for (long n = 0; n <= 4; ++n) {
        CAPTURE(n);
        auto half_sum = [&](long e) { return LaurentSeries::from_terms({{0, Rational(1, 2)}, {e, Rational(1, 2)}}, 3 * T); };
        auto bp6 = chain_sum(n, k, i + 1, 1, Tq, [&](const std::vector<long>& N) {
          long e = 0;
          for (int j = i + 1; j < k; ++j) e += N[j] * N[j] + N[j];
          return LaurentSeries::monomial(e, 1, Tq);
        });
        bp6 = (bp6 * half_sum(n)).truncated(Tq);
        CHECK(same(avg.beta[n], substitute_power(bp6, 2)));

        auto bp0 = chain_sum(n, k, 2, 1, Tq, [&](const std::vector<long>& N) {
          long e = 0;
          for (int j = 2; j < k; ++j) e += N[j] * N[j];
          for (int j = i + 1; j < k; ++j) e += N[j];
          return shift(half_sum(N[i]), e).truncated(Tq);
        });
        CHECK(same(before_change.beta[n], substitute_power(bp0, 2)));

        auto fin = chain_sum(n, k, 1, 2, T, [&](const std::vector<long>& N) {
          long e = N[1];
          for (int j = 2; j < k; ++j) e += 2 * N[j] * N[j];
          for (int j = i + 1; j < k; ++j) e += 2 * N[j];
          auto pair = LaurentSeries::from_terms({{0, 1}, {2 * N[i], 1}}, 3 * T);
          return shift(pochhammer_finite(-1, 1, 1, 2 * N[1] - 1, 3 * T) * pair, e).truncated(T);
        });
        CHECK(same(final_pair.beta[n], fin));
      }
    }
}

TEST_CASE("chain parameter errors") {
  CHECK_THROWS_WITH_AS(run_chain_stages(3, 3, 6, 20), doctest::Contains("chain undefined for i=k"), BaileyError);
  CHECK_THROWS_AS(run_chain_stages(2, 3, 6, 20), BaileyError);
  CHECK_THROWS_AS(verify_bailey(3, 3, 20), VerifyUsageError);
}

TEST_CASE("limit identity") {
  const long T = 40;
  for (auto [k, i] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {4, 2}}) {
    CAPTURE(k);
    CAPTURE(i);
    auto p = run_chain(k, i, limit_index(T) + 1, T);
    auto li = limit_identity(p, T);
    CHECK(li.diff.equal);
    auto expect = pochhammer_infinite(-1, 1, 1, T) * product_triple(k, i, T) *
                  series_inverse(pochhammer_infinite(1, 1, 1, T));
    CHECK(same(li.rhs, expect));
    CHECK(li.rhs.truncation() >= T);
  }
  auto small = limit_identity(run_chain(2, 1, limit_index(0) + 1, 0), 0);
  CHECK(small.lhs.coeff(0) == 1);
  CHECK(small.rhs.coeff(0) == 1);

  auto too_short = run_chain(2, 1, 5, T);
  CHECK_THROWS_AS(limit_identity(too_short, T), BaileyError);
  CHECK_THROWS_AS(limit_identity(unit_pair(80, T), T), BaileyError);
}

TEST_CASE("pair json") {
  auto j = to_json(unit_pair(4, 10), 2);
  CHECK(j["base"] == 2);
  CHECK(j["alpha"].size() == 3);
  CHECK(j["beta"].size() == 3);
  CHECK(j["label"] == "unit");
}

TEST_CASE("full chain report") {
  auto rep = verify_bailey(3, 1, 40, 8);
  CHECK(rep.pass);
  CHECK(rep.details["quadratic_beta"] == "pass");
  CHECK(rep.details["limit"]["rhs_vs_product"] == "pass");
}
