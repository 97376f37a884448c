#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ggkit/marking.hpp"

namespace ggkit {

class BijectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// k bounds the number of rows, i bounds f(1~) + f(2).
struct ClassParams {
  int k = 2;
  int i = 1;
};

struct BijectionTrace {
  struct Step {
    std::string name;
    Overpartition before, after;
    int delta = 0;
  };
  std::vector<Step> steps;
  int total_delta() const;
};

nlohmann::json to_json(const BijectionTrace& t);

// Single steps. p is 1-based in the first row. Each result is re-marked from
// scratch and checked against its target class; a miss throws BijectionError.
MarkedOverpartition phi_p(const MarkedOverpartition& lam, int p, const ClassParams& cp, BijectionTrace* tr = nullptr);
MarkedOverpartition psi_p(const MarkedOverpartition& mu, int p, const ClassParams& cp, BijectionTrace* tr = nullptr);
// Steps p, p+1, ..., N_1 in that order, and the reverse.
MarkedOverpartition phi_chain(const MarkedOverpartition& lam, int p, const ClassParams& cp, BijectionTrace* tr = nullptr);
MarkedOverpartition psi_chain(const MarkedOverpartition& mu, int p, const ClassParams& cp, BijectionTrace* tr = nullptr);

// tau: strictly increasing negative even parts in [-2N, -2].
// eta: strictly increasing negative odd parts in [1-2N, -1].
using SignedParts = std::vector<int>;

std::pair<SignedParts, MarkedOverpartition> phi_full(const MarkedOverpartition& lam, const ClassParams& cp,
                                                     BijectionTrace* tr = nullptr);
MarkedOverpartition psi_full(const SignedParts& tau, const MarkedOverpartition& mu, const ClassParams& cp,
                             BijectionTrace* tr = nullptr);

MarkedOverpartition theta_p(const MarkedOverpartition& mu, int p, const ClassParams& cp, BijectionTrace* tr = nullptr);
MarkedOverpartition lambda_p(const MarkedOverpartition& nu, int p, const ClassParams& cp, BijectionTrace* tr = nullptr);
MarkedOverpartition theta_chain(const MarkedOverpartition& mu, int p, const ClassParams& cp, BijectionTrace* tr = nullptr);
MarkedOverpartition lambda_chain(const MarkedOverpartition& nu, int p, const ClassParams& cp,
                                 BijectionTrace* tr = nullptr);
std::pair<SignedParts, MarkedOverpartition> theta_full(const MarkedOverpartition& mu, const ClassParams& cp,
                                                       BijectionTrace* tr = nullptr);
MarkedOverpartition lambda_full(const SignedParts& eta, const MarkedOverpartition& nu, const ClassParams& cp,
                                BijectionTrace* tr = nullptr);

bool valid_even_signed(const SignedParts& tau, int n);
bool valid_odd_signed(const SignedParts& eta, int n);

// Smallest-part toggle between the F and H splits of the O family.
// i >= 2: same weight, lands in H(k, i-1). i == 1: toggled then every part
// reduced by 2, landing in H(k, k) with weight n - 2m.
Overpartition fh_toggle(const Overpartition& sigma, int k, int i);
Overpartition fh_untoggle(const Overpartition& sigma, int k, int i);

// Halving an all-plain-even overpartition, and its inverse.
Partition halve(const Overpartition& nu);
Overpartition double_parts(const Partition& eta);

}  // namespace ggkit
