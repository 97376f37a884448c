#include "ggkit/bijections.hpp"

#include <algorithm>
#include <climits>

namespace ggkit {

int BijectionTrace::total_delta() const {
  int d = 0;
  for (auto& s : steps) d += s.delta;
  return d;
}

nlohmann::json to_json(const BijectionTrace& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (auto& s : t.steps)
    steps.push_back({{"step", s.name},
                     {"before", format_overpartition(s.before)},
                     {"after", format_overpartition(s.after)},
                     {"weight_delta", s.delta}});
  return {{"steps", steps}, {"total_delta", t.total_delta()}};
}

namespace {

struct Rewrite {
  int index;
  OverPart to;
};

std::vector<int> profile_of(const MarkedOverpartition& m, const ClassParams& cp) {
  auto rc = row_counts(m);
  if (static_cast<int>(rc.size()) > cp.k - 1)
    throw BijectionError("overpartition has more than k-1 rows");
  rc.resize(cp.k - 1, 0);
  return rc;
}

void require(const ClassCheck& c, const std::string& what) {
  if (!c) throw BijectionError(what + ": " + c.failed);
}

// All rewrites are applied to the original positions at once, then the
// result is re-sorted and re-marked.
MarkedOverpartition apply_rewrites(const MarkedOverpartition& m, const std::vector<Rewrite>& rw) {
  auto parts = m.base.parts;
  for (auto& r : rw) parts[r.index] = r.to;
  std::sort(parts.begin(), parts.end());
  for (size_t j = 1; j < parts.size(); ++j)
    if (parts[j].overlined && parts[j - 1].overlined && parts[j].size == parts[j - 1].size)
      throw BijectionError("rewrite produced a repeated overlined part " + std::to_string(parts[j].size) + "~");
  for (auto& x : parts)
    if (x.size < 1) throw BijectionError("rewrite produced a nonpositive part");
  Overpartition base;
  base.parts = std::move(parts);
  return {base, gg_marks(base.parts)};
}

// Position of the part with this size, overline and mark; -1 if none.
int find_marked(const MarkedOverpartition& m, int size, bool over, int mark) {
  for (size_t j = 0; j < m.base.parts.size(); ++j)
    if (m.base.parts[j].size == size && m.base.parts[j].overlined == over && m.marks[j] == mark)
      return static_cast<int>(j);
  return -1;
}

int need_marked(const MarkedOverpartition& m, int size, bool over, int mark) {
  int j = find_marked(m, size, over, mark);
  if (j < 0)
    throw BijectionError("no " + std::to_string(mark) + "-marked part " + std::to_string(size) + (over ? "~" : ""));
  return j;
}

// Largest / smallest mark among parts of a size; `plain_only` skips overlined ones.
int extreme_mark(const MarkedOverpartition& m, int size, bool plain_only, bool largest) {
  int best = 0;
  for (size_t j = 0; j < m.base.parts.size(); ++j) {
    auto& x = m.base.parts[j];
    if (x.size != size || (plain_only && x.overlined)) continue;
    if (best == 0 || (largest ? m.marks[j] > best : m.marks[j] < best)) best = m.marks[j];
  }
  if (best == 0) throw BijectionError("no part of size " + std::to_string(size));
  return best;
}

bool has_plain(const MarkedOverpartition& m, int size) {
  for (auto& x : m.base.parts)
    if (x.size == size && !x.overlined) return true;
  return false;
}

int overlined_index(const MarkedOverpartition& m, int size) {
  for (size_t j = 0; j < m.base.parts.size(); ++j)
    if (m.base.parts[j].size == size && m.base.parts[j].overlined) return static_cast<int>(j);
  return -1;
}

// Least b with b-marked plain parts of both sizes, 0 if none.
int shared_mark(const MarkedOverpartition& m, int a, int b) {
  for (size_t j = 0; j < m.base.parts.size(); ++j) {
    auto& x = m.base.parts[j];
    if (x.size == a && !x.overlined && find_marked(m, b, false, m.marks[j]) >= 0) return m.marks[j];
  }
  return 0;
}

OverPart flip(const OverPart& x) { return {x.size, !x.overlined}; }

void record(BijectionTrace* tr, std::string name, const MarkedOverpartition& a, const MarkedOverpartition& b) {
  if (tr) tr->steps.push_back({std::move(name), a.base, b.base, b.base.weight() - a.base.weight()});
}

// Index used by the overlined-even cases: how the removed part's size-2t
// neighbours are re-labelled.
int even_case_index(const MarkedOverpartition& m, const std::vector<int>& row, int p, int t) {
  int prev = m.base.parts[row[p - 2]].size;
  if (prev == 2 * t - 2 || prev == 2 * t - 1) return 1;
  if (prev <= 2 * t - 3) {
    int b = shared_mark(m, 2 * t - 2, 2 * t);
    if (b) return b;
  }
  return extreme_mark(m, 2 * t, false, true);
}

}  // namespace

MarkedOverpartition phi_p(const MarkedOverpartition& lam, int p, const ClassParams& cp, BijectionTrace* tr) {
  auto prof = profile_of(lam, cp);
  require(check_row_class(lam, RowClass::F, prof, cp.i), "phi precondition");
  auto row = row_indices(lam, 1);
  int n1 = static_cast<int>(row.size());
  if (p <= 1 || p > n1) throw BijectionError("phi needs 1 < p <= N_1");
  auto rep = classify_F(lam, p);
  if (!rep.in_f) throw BijectionError("phi precondition: position " + std::to_string(p) + " is not the last removable first-row part");

  std::vector<Rewrite> rw;
  if (p < n1) rw.push_back({row[p], flip(lam.base.parts[row[p]])});
  int xi = row[p - 1];
  int sz = lam.base.parts[xi].size;
  switch (rep.sub) {
    case 1:
      rw.push_back({xi, {sz + 2, true}});
      break;
    case 2: {
      int t = (sz - 1) / 2;
      int r = shared_mark(lam, 2 * t, 2 * t + 2);
      if (!r) r = extreme_mark(lam, 2 * t + 2, true, true);
      rw.push_back({xi, {2 * t + 2, false}});
      rw.push_back({need_marked(lam, 2 * t + 2, false, r), {2 * t + 3, true}});
      break;
    }
    case 3:
    case 4: {
      int t = sz / 2;
      int r = even_case_index(lam, row, p, t);
      if (rep.sub == 3) {
        if (r == 1) {
          rw.push_back({xi, {2 * t + 2, false}});
        } else {
          rw.push_back({xi, {2 * t, false}});
          rw.push_back({need_marked(lam, 2 * t, false, r), {2 * t + 2, false}});
        }
      } else {
        int o = overlined_index(lam, 2 * t + 1);
        if (r == 1) {
          rw.push_back({xi, {2 * t + 1, true}});
        } else {
          rw.push_back({xi, {2 * t, false}});
          rw.push_back({need_marked(lam, 2 * t, false, r), {2 * t + 1, true}});
        }
        rw.push_back({o, {2 * t + 2, false}});
      }
      break;
    }
    default:
      throw BijectionError("phi: unclassified input");
  }
  auto mu = apply_rewrites(lam, rw);
  require(check_row_class(mu, RowClass::F, prof, cp.i), "phi codomain");
  auto out = classify_F(mu, p);
  if (!out.in_f_bar || out.sub_bar != rep.sub)
    throw BijectionError("phi codomain: result not in the matching barred subclass at p=" + std::to_string(p));
  record(tr, "phi" + std::to_string(rep.sub) + "[p=" + std::to_string(p) + "]", lam, mu);
  return mu;
}

MarkedOverpartition psi_p(const MarkedOverpartition& mu, int p, const ClassParams& cp, BijectionTrace* tr) {
  auto prof = profile_of(mu, cp);
  require(check_row_class(mu, RowClass::F, prof, cp.i), "psi precondition");
  auto row = row_indices(mu, 1);
  int n1 = static_cast<int>(row.size());
  if (p <= 1 || p > n1) throw BijectionError("psi needs 1 < p <= N_1");
  auto rep = classify_F(mu, p);
  if (!rep.in_f_bar) throw BijectionError("psi precondition: not in the barred class at p=" + std::to_string(p));

  std::vector<Rewrite> rw;
  if (p < n1) rw.push_back({row[p], flip(mu.base.parts[row[p]])});
  int xi = row[p - 1];
  const OverPart x = mu.base.parts[xi];
  switch (rep.sub_bar) {
    case 1:
      rw.push_back({xi, {x.size - 2, false}});
      break;
    case 2:
      rw.push_back({xi, {x.size - 1, false}});
      rw.push_back({overlined_index(mu, x.size + 1), {x.size, false}});
      break;
    case 3: {
      int t = x.size / 2;
      long a = LONG_MAX;
      if (p < n1) a = (mu.base.parts[row[p]].size - 1) / 2;
      int r = 1;
      if (a > t && has_plain(mu, 2 * t + 2)) r = extreme_mark(mu, 2 * t + 2, true, false);
      if (r == 1) {
        rw.push_back({xi, {2 * t - 2, true}});
      } else {
        rw.push_back({need_marked(mu, 2 * t + 2, false, r), {2 * t, false}});
        rw.push_back({xi, {2 * t, true}});
      }
      break;
    }
    case 4: {
      int t = x.size / 2;  // x is 2t+1~ or 2t
      int o = overlined_index(mu, 2 * t + 1);
      int s = extreme_mark(mu, 2 * t + 2, true, false);
      int sidx = need_marked(mu, 2 * t + 2, false, s);
      if (mu.marks[o] == 1) {
        rw.push_back({xi, {2 * t, true}});
      } else {
        rw.push_back({xi, {2 * t, true}});
        rw.push_back({o, {2 * t, false}});
      }
      rw.push_back({sidx, {2 * t + 1, true}});
      break;
    }
    default:
      throw BijectionError("psi: unclassified input");
  }
  auto lam = apply_rewrites(mu, rw);
  require(check_row_class(lam, RowClass::F, prof, cp.i), "psi codomain");
  auto back = classify_F(lam, p);
  if (!back.in_f || back.sub != rep.sub_bar)
    throw BijectionError("psi codomain: result not in the matching subclass at p=" + std::to_string(p));
  record(tr, "psi" + std::to_string(rep.sub_bar) + "[p=" + std::to_string(p) + "]", mu, lam);
  return lam;
}

MarkedOverpartition phi_chain(const MarkedOverpartition& lam, int p, const ClassParams& cp, BijectionTrace* tr) {
  int n1 = static_cast<int>(row_indices(lam, 1).size());
  auto cur = lam;
  for (int q = p; q <= n1; ++q) cur = phi_p(cur, q, cp, tr);
  return cur;
}

MarkedOverpartition psi_chain(const MarkedOverpartition& mu, int p, const ClassParams& cp, BijectionTrace* tr) {
  int n1 = static_cast<int>(row_indices(mu, 1).size());
  if (p <= 1 || p > n1) throw BijectionError("psi chain needs 1 < p <= N_1");
  auto cur = mu;
  for (int q = n1; q >= p; --q) cur = psi_p(cur, q, cp, tr);
  return cur;
}

bool valid_even_signed(const SignedParts& tau, int n) {
  for (size_t j = 0; j < tau.size(); ++j) {
    if (tau[j] % 2 != 0 || tau[j] > -2 || tau[j] < -2 * n) return false;
    if (j && tau[j] <= tau[j - 1]) return false;
  }
  return true;
}

bool valid_odd_signed(const SignedParts& eta, int n) {
  for (size_t j = 0; j < eta.size(); ++j) {
    if (eta[j] % 2 == 0 || eta[j] > -1 || eta[j] < 1 - 2 * n) return false;
    if (j && eta[j] <= eta[j - 1]) return false;
  }
  return true;
}

std::pair<SignedParts, MarkedOverpartition> phi_full(const MarkedOverpartition& lam, const ClassParams& cp,
                                                     BijectionTrace* tr) {
  auto prof = profile_of(lam, cp);
  require(check_row_class(lam, RowClass::F, prof, cp.i), "phi precondition");
  auto row = sub_overpartition(lam, 1);
  int n1 = static_cast<int>(row.size());
  std::vector<int> js;
  for (int j = 1; j <= n1; ++j)
    if (h_kind(row[j - 1])) js.push_back(j);
  SignedParts tau;
  for (int j : js) tau.push_back(-2 * (n1 - j + 1));
  auto cur = lam;
  for (auto it = js.rbegin(); it != js.rend(); ++it) cur = phi_chain(cur, *it, cp, tr);
  require(check_row_class(cur, RowClass::G, prof, cp.i), "phi codomain");
  return {tau, cur};
}

MarkedOverpartition psi_full(const SignedParts& tau, const MarkedOverpartition& mu, const ClassParams& cp,
                             BijectionTrace* tr) {
  auto prof = profile_of(mu, cp);
  require(check_row_class(mu, RowClass::G, prof, cp.i), "psi precondition");
  int n1 = prof.empty() ? 0 : prof[0];
  if (!valid_even_signed(tau, n1 - 1)) throw BijectionError("tau must be distinct negative even parts in [2-2N_1, -2]");
  auto cur = mu;
  for (int v : tau) cur = psi_chain(cur, n1 + 1 + v / 2, cp, tr);
  require(check_row_class(cur, RowClass::F, prof, cp.i), "psi codomain");
  return cur;
}

MarkedOverpartition theta_p(const MarkedOverpartition& mu, int p, const ClassParams& cp, BijectionTrace* tr) {
  auto prof = profile_of(mu, cp);
  require(check_row_class(mu, RowClass::G, prof, cp.i), "theta precondition");
  auto row = row_indices(mu, 1);
  int n1 = static_cast<int>(row.size());
  if (p < 1 || p > n1) throw BijectionError("theta needs 1 <= p <= N_1");
  if (!classify_G(mu, p).in_g)
    throw BijectionError("theta precondition: position " + std::to_string(p) + " is not the last type-O first-row part");

  std::vector<Rewrite> rw;
  int xi = row[p - 1];
  const OverPart x = mu.base.parts[xi];
  std::string name;
  if (x.overlined) {
    int t = (x.size - 1) / 2;
    rw.push_back({xi, {2 * t + 2, false}});
    if (p < n1) {
      int yi = row[p];
      int b = (mu.base.parts[yi].size - 2) / 2;
      if (b == t + 1) {
        rw.push_back({yi, {2 * t + 5, true}});
        name = "theta1.1";
      } else {
        int r = extreme_mark(mu, 2 * b + 2, true, true);
        rw.push_back({need_marked(mu, 2 * b + 2, false, r), {2 * b + 3, true}});
        name = "theta1.2";
      }
    } else {
      name = "theta3.1";
    }
  } else {
    int t = x.size / 2;
    int o = overlined_index(mu, 2 * t + 1);
    int s = mu.marks[o];
    rw.push_back({o, {2 * t + 2, false}});
    if (p < n1) {
      int b = (mu.base.parts[row[p]].size - 2) / 2;
      int si = find_marked(mu, 2 * t + 4, false, s);
      if (si >= 0) {
        rw.push_back({si, {2 * t + 5, true}});
        name = "theta2.1";
      } else {
        int r = extreme_mark(mu, 2 * b + 2, true, true);
        rw.push_back({need_marked(mu, 2 * b + 2, false, r), {2 * b + 3, true}});
        name = "theta2.2";
      }
    } else {
      name = "theta3.2";
    }
  }
  auto nu = apply_rewrites(mu, rw);
  require(check_row_class(nu, RowClass::G, prof, cp.i), "theta codomain");
  if (!classify_G(nu, p).in_g_bar)
    throw BijectionError("theta codomain: result not in the barred class at p=" + std::to_string(p));
  record(tr, name + "[p=" + std::to_string(p) + "]", mu, nu);
  return nu;
}

MarkedOverpartition lambda_p(const MarkedOverpartition& nu, int p, const ClassParams& cp, BijectionTrace* tr) {
  auto prof = profile_of(nu, cp);
  require(check_row_class(nu, RowClass::G, prof, cp.i), "lambda precondition");
  auto row = row_indices(nu, 1);
  int n1 = static_cast<int>(row.size());
  if (p < 1 || p > n1) throw BijectionError("lambda needs 1 <= p <= N_1");
  if (!classify_G(nu, p).in_g_bar)
    throw BijectionError("lambda precondition: not in the barred class at p=" + std::to_string(p));

  std::vector<Rewrite> rw;
  int xi = row[p - 1];
  int t = (nu.base.parts[xi].size - 2) / 2;
  bool has4 = has_plain(nu, 2 * t + 4);
  auto lower_p = [&] {
    if (has4) {
      int s = extreme_mark(nu, 2 * t + 4, true, false);
      rw.push_back({need_marked(nu, 2 * t + 4, false, s), {2 * t + 3, true}});
    } else {
      rw.push_back({xi, {2 * t + 1, true}});
    }
  };
  std::string name;
  if (p < n1) {
    int yi = row[p];
    const OverPart y = nu.base.parts[yi];
    if (y.overlined) {
      int b = (y.size - 3) / 2;
      rw.push_back({yi, {2 * b + 2, false}});
      if (t == b - 1) {
        rw.push_back({xi, {2 * b - 1, true}});
        name = "lambda1.1";
      } else {
        lower_p();
        name = has4 ? "lambda1.3" : "lambda1.2";
      }
    } else {
      int o = overlined_index(nu, y.size + 1);
      rw.push_back({o, {y.size, false}});
      lower_p();
      name = has4 ? "lambda2.2" : "lambda2.1";
    }
  } else {
    lower_p();
    name = has4 ? "lambda3.2" : "lambda3.1";
  }
  auto mu = apply_rewrites(nu, rw);
  require(check_row_class(mu, RowClass::G, prof, cp.i), "lambda codomain");
  if (!classify_G(mu, p).in_g) throw BijectionError("lambda codomain: result not in the class at p=" + std::to_string(p));
  record(tr, name + "[p=" + std::to_string(p) + "]", nu, mu);
  return mu;
}

MarkedOverpartition theta_chain(const MarkedOverpartition& mu, int p, const ClassParams& cp, BijectionTrace* tr) {
  int n1 = static_cast<int>(row_indices(mu, 1).size());
  auto cur = mu;
  for (int q = p; q <= n1; ++q) cur = theta_p(cur, q, cp, tr);
  return cur;
}

MarkedOverpartition lambda_chain(const MarkedOverpartition& nu, int p, const ClassParams& cp,
                                 BijectionTrace* tr) {
  int n1 = static_cast<int>(row_indices(nu, 1).size());
  if (p < 1 || p > n1) throw BijectionError("lambda chain needs 1 <= p <= N_1");
  auto cur = nu;
  for (int q = n1; q >= p; --q) cur = lambda_p(cur, q, cp, tr);
  return cur;
}

std::pair<SignedParts, MarkedOverpartition> theta_full(const MarkedOverpartition& mu, const ClassParams& cp,
                                                       BijectionTrace* tr) {
  auto prof = profile_of(mu, cp);
  require(check_row_class(mu, RowClass::G, prof, cp.i), "theta precondition");
  int n1 = prof.empty() ? 0 : prof[0];
  std::vector<int> js;
  for (int j = 1; j <= n1; ++j)
    if (part_type(mu, j) == PartType::O) js.push_back(j);
  SignedParts eta;
  for (int j : js) eta.push_back(1 - 2 * (n1 - j + 1));
  auto cur = mu;
  for (auto it = js.rbegin(); it != js.rend(); ++it) cur = theta_chain(cur, *it, cp, tr);
  require(check_row_class(cur, RowClass::E, prof, cp.i), "theta codomain");
  return {eta, cur};
}

MarkedOverpartition lambda_full(const SignedParts& eta, const MarkedOverpartition& nu, const ClassParams& cp,
                                BijectionTrace* tr) {
  auto prof = profile_of(nu, cp);
  require(check_row_class(nu, RowClass::E, prof, cp.i), "lambda precondition");
  int n1 = prof.empty() ? 0 : prof[0];
  if (!valid_odd_signed(eta, n1)) throw BijectionError("eta must be distinct negative odd parts in [1-2N_1, -1]");
  auto cur = nu;
  for (int v : eta) cur = lambda_chain(cur, n1 + 1 - (1 - v) / 2, cp, tr);
  require(check_row_class(cur, RowClass::G, prof, cp.i), "lambda codomain");
  return cur;
}

namespace {

void require_family(const Overpartition& s, Family f, int k, int i, const char* what) {
  if (!satisfies_family(s, FamilySpec(f, k, i)))
    throw BijectionError(std::string(what) + ": not in " + family_name(f) + "(" + std::to_string(k) + "," +
                         std::to_string(i) + ")");
}

// Toggle the smallest part: x~ <-> x for odd x, 2t <-> 2t~ for even.
Overpartition toggle_smallest(const Overpartition& s) {
  auto parts = s.parts;
  parts.front() = flip(parts.front());
  std::sort(parts.begin(), parts.end());
  return Overpartition(std::move(parts));
}

}  // namespace

Overpartition fh_toggle(const Overpartition& sigma, int k, int i) {
  require_family(sigma, Family::F, k, i, "toggle precondition");
  auto out = toggle_smallest(sigma);
  if (i == 1) {
    for (auto& x : out.parts) {
      if (x.size <= 2) throw BijectionError("toggle precondition: part of size <= 2 with i = 1");
      x.size -= 2;
    }
    require_family(out, Family::H, k, k, "toggle codomain");
  } else {
    require_family(out, Family::H, k, i - 1, "toggle codomain");
  }
  return out;
}

Overpartition fh_untoggle(const Overpartition& sigma, int k, int i) {
  Overpartition in = sigma;
  if (i == 1) {
    require_family(sigma, Family::H, k, k, "untoggle precondition");
    for (auto& x : in.parts) x.size += 2;
  } else {
    require_family(sigma, Family::H, k, i - 1, "untoggle precondition");
  }
  auto out = toggle_smallest(in);
  require_family(out, Family::F, k, i, "untoggle codomain");
  return out;
}

Partition halve(const Overpartition& nu) {
  Partition eta;
  for (auto& x : nu.parts) {
    if (x.overlined || x.odd()) throw BijectionError("halve needs plain even parts only");
    eta.parts.push_back(x.size / 2);
  }
  return eta;
}

Overpartition double_parts(const Partition& eta) {
  Overpartition nu;
  for (int s : eta.parts) nu.parts.push_back({2 * s, false});
  return nu;
}

}  // namespace ggkit
