#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ggkit/series.hpp"

namespace ggkit {

class BaileyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bailey pair with a = 1. Series are stored in a variable z with q = z^base,
// so half-integer powers of q are integers for base 2. alpha[n], beta[n] for
// n = 0..size-1, each known up to z^T.
struct BaileyPair {
  long base = 1;
  long T = 0;
  std::vector<LaurentSeries> alpha, beta;
  std::string label;

  long size() const { return static_cast<long>(beta.size()); }
};

// alpha_n = (-1)^n q^{n^2/2}(q^{-n/2} + q^{n/2}), beta = (1, 0, 0, ...); base 2.
BaileyPair unit_pair(long n_max, long T);

// alpha'_n = q^{n^2} alpha_n, beta'_n = sum_j q^{j^2} beta_j / (q;q)_{n-j}.
BaileyPair transform_bl1(const BaileyPair& p);

// Requires alpha_n = (-1)^n q^{A n^2}(q^{(A-1)n} + q^{-(A-1)n}) for n >= 1 and
// alpha_0 = 1; yields alpha'_n = (-1)^n q^{A n^2}(q^{An} + q^{-An}),
// beta'_n = q^n beta_n.
BaileyPair transform_bl4(const BaileyPair& p, const Rational& A);

// The input pair is read at base q^2:
// alpha'_n = 2 q^n alpha_n(q^2) / (1 + q^{2n}),
// beta'_n = sum_k (-1;q)_{2k} q^k beta_k(q^2) / (q^2;q^2)_{n-k}.
BaileyPair transform_base_change(const BaileyPair& p);

BaileyPair combine(const std::vector<BaileyPair>& pairs, const std::vector<Rational>& weights);

// (-1)^n q^{A n^2}(q^{Bn} + q^{-Bn}) in the storage variable of `base`;
// 1 at n = 0. Throws if the exponents are not integral on that grid.
LaurentSeries theta_alpha(const Rational& A, const Rational& B, long n, long base, long T);

struct RelationCheck {
  bool ok = true;
  long n = -1;  // first failing n
  SeriesDiff diff;
};
RelationCheck verify_pair_relation(const BaileyPair& p, long n_max);

struct ChainStage {
  std::string name;
  BaileyPair pair;
};
// Unit pair through the alternating steps, the average, i-1 further bl1
// steps and the base change. Needs 1 <= i < k. `n_max` is the largest index
// kept in every pair.
std::vector<ChainStage> run_chain_stages(int k, int i, long n_max, long T);
BaileyPair run_chain(int k, int i, long n_max, long T);

// Index large enough that (q^2;q^2)_inf beta_n has settled to order T.
long limit_index(long T);

struct LimitIdentity {
  LaurentSeries lhs, rhs;
  SeriesDiff diff;
};
// lhs = (q^2;q^2)_inf beta_n at a settled n, rhs = (q^2;q^2)_inf/(q;q)_inf^2 * sum alpha_r,
// for a pair with base 1.
LimitIdentity limit_identity(const BaileyPair& p, long T);

nlohmann::json to_json(const BaileyPair& p, long n_max);

}  // namespace ggkit
