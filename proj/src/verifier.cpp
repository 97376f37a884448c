#include "ggkit/verifier.hpp"

#include <atomic>
#include <exception>
#include <numeric>
#include <thread>

namespace ggkit {

namespace {

struct TagInfo {
  IdentityTag tag;
  const char* name;
};

const TagInfo kTags[] = {
    {IdentityTag::AG, "AG"},           {IdentityTag::AG_X, "AG-X"},       {IdentityTag::BRESSOUD, "BRESSOUD"},
    {IdentityTag::BRESSOUD_X, "BRESSOUD-X"}, {IdentityTag::OGG, "OGG"},   {IdentityTag::OGG_X, "OGG-X"},
    {IdentityTag::F_GF, "F-GF"},       {IdentityTag::H_GF, "H-GF"},       {IdentityTag::CLASS_F, "CLASS-F"},
    {IdentityTag::CLASS_G, "CLASS-G"}, {IdentityTag::CLASS_E, "CLASS-E"}, {IdentityTag::CLASS_B, "CLASS-B"},
    {IdentityTag::LEM_N1, "LEM-N1"},   {IdentityTag::LEM_N2, "LEM-N2"},   {IdentityTag::JTP, "JTP"},
};

void check_ki(int k, int i) {
  if (!(k >= i && i >= 1)) throw VerifyUsageError("need k >= i >= 1 (got k=" + std::to_string(k) + ", i=" + std::to_string(i) + ")");
}

std::vector<int> trimmed(std::vector<int> v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

void check_profile(const std::vector<int>& profile) {
  for (size_t r = 0; r < profile.size(); ++r) {
    if (profile[r] < 0) throw VerifyUsageError("profile entries must be nonnegative");
    if (r && profile[r] > profile[r - 1]) throw VerifyUsageError("profile must be nonincreasing");
  }
}

// 1/(q^b;q^b)_m to order T, memoised.
class InvFactorials {
 public:
  InvFactorials(long b, long T) : b_(b), T_(T) {}
  const LaurentSeries& operator()(long m) {
    if (m >= static_cast<long>(c_.size())) c_.resize(m + 1);
    if (!c_[m]) c_[m] = series_inverse(pochhammer_finite(1, b_, b_, m, T_)).truncated(T_);
    return *c_[m];
  }

 private:
  long b_, T_;
  std::vector<std::optional<LaurentSeries>> c_;
};

// Lowest exponent of (-q^{1-2N};q^2)_N and of (-q^{2-2N};q^2)_{N-1}.
long odd_factor_val(long n1) { return -n1 * n1; }
long even_factor_val(long n1) { return n1 >= 1 ? -n1 * (n1 - 1) : 0; }

LaurentSeries odd_factor(long n1, long T) { return pochhammer_finite(-1, 1 - 2 * n1, 2, n1, T); }
// At N = 0 this is (-1;q^2)_{-1} = 1/2.
LaurentSeries even_factor(long n1, long T) { return pochhammer_finite(-1, 2 - 2 * n1, 2, n1 - 1, T); }

// 0: none, 1: odd factor, 2: both factors. Result known to order T.
LaurentSeries laurent_factor(int level, long n1, long T) {
  if (level == 0) return LaurentSeries::one(T);
  if (level == 1) return odd_factor(n1, T);
  auto a = odd_factor(n1, T - even_factor_val(n1));
  auto b = even_factor(n1, T - odd_factor_val(n1));
  return (a * b).truncated(T);
}

long laurent_val(int level, long n1) {
  if (level == 0) return 0;
  if (level == 1) return odd_factor_val(n1);
  return odd_factor_val(n1) + even_factor_val(n1);
}

struct Shape {
  long base;
  int lin_from;  // linear part sums N_j for j >= lin_from
  int laurent;
  bool pair_factor;  // extra (1 + q^{2 N_i})
};

Shape shape_of(IdentityTag t, int i) {
  switch (t) {
    case IdentityTag::AG:
    case IdentityTag::AG_X: return {1, i, 0, false};
    case IdentityTag::BRESSOUD:
    case IdentityTag::BRESSOUD_X: return {2, i, 1, false};
    case IdentityTag::OGG:
    case IdentityTag::OGG_X: return {2, i + 1, 2, true};
    case IdentityTag::F_GF: return {2, i, 2, false};
    case IdentityTag::H_GF: return {2, i + 1, 2, false};
    default: throw VerifyUsageError("tag " + tag_name(t) + " has no multisum");
  }
}

// One summand with row profile N (length k-1), known to order T.
LaurentSeries summand(const Shape& s, const std::vector<int>& N, int i, long T, InvFactorials& inv) {
  long quad = 0;
  for (size_t j = 0; j < N.size(); ++j) {
    quad += static_cast<long>(N[j]) * N[j];
    if (static_cast<int>(j) + 1 >= s.lin_from) quad += N[j];
  }
  long S = s.base * quad;
  long n1 = N.empty() ? 0 : N[0];
  if (S + laurent_val(s.laurent, n1) > T) return LaurentSeries::zero(T);
  auto term =shift(laurent_factor(s.laurent, n1, T - S), S).truncated(T);
  for (size_t j = 0; j < N.size(); ++j) {
    long d = N[j] - (j + 1 < N.size() ? N[j + 1] : 0);
    if (d > 0) term = (term * inv(d)).truncated(T);
  }
  if (s.pair_factor) {
    // N_k = 0 when i = k, so the factor is 2
    long ni = i - 1 < static_cast<int>(N.size()) ? N[i - 1] : 0;
    term = (term * LaurentSeries::from_terms({{0, 1}, {2 * ni, 1}}, T)).truncated(T);
  }
  return term;
}

void for_each_summand(IdentityTag t, int k, int i, long T,
                      const std::function<void(long m, const LaurentSeries& term)>& f) {
  if (k < 2) throw VerifyUsageError("degenerate form: summed identities need k >= 2");
  check_ki(k, i);
  Shape s = shape_of(t, i);
  InvFactorials inv(s.base, T);
  std::vector<int> N(k - 1, 0);
  // lower bound of the valuation from N_1..N_j; later entries add >= 0
  auto contrib = [&](int j, long v) { return s.base * (v * v + (j + 1 >= s.lin_from ? v : 0)); };
  std::function<void(int, long)> rec = [&](int j, long partial) {
    if (j == k - 1) {
      long m = std::accumulate(N.begin(), N.end(), 0L);
      f(m, summand(s, N, i, T, inv));
      return;
    }
    long cap = j == 0 ? T : N[j - 1];
    for (long v = 0; v <= cap; ++v) {
      long lb = partial + contrib(j, v) + (j == 0 ? laurent_val(s.laurent, v) : 0);
      if (lb > T) break;  // lb grows with v
      N[j] = static_cast<int>(v);
      rec(j + 1, lb);
    }
    N[j] = 0;
  };
  rec(0, 0);
}

Mismatch from_diff(const SeriesDiff& d) { return {d.exponent, -1, d.lhs, d.rhs, ""}; }

void fill(VerificationReport& r, const SeriesDiff& d) {
  r.pass = d.equal;
  r.details["compared_up_to"] = d.compared_up_to;
  if (!d.equal) r.first = from_diff(d);
}

void fill(VerificationReport& r, const BivariateDiff& d) {
  r.pass = d.equal;
  if (!d.equal) r.first = Mismatch{d.n, d.m, d.lhs, d.rhs, ""};
}

Family family_for(IdentityTag t) {
  switch (t) {
    case IdentityTag::AG_X: return Family::B;
    case IdentityTag::BRESSOUD_X: return Family::C;
    case IdentityTag::OGG_X: return Family::O;
    case IdentityTag::F_GF: return Family::F;
    case IdentityTag::H_GF: return Family::H;
    default: throw VerifyUsageError("tag " + tag_name(t) + " has no counting side");
  }
}

}  // namespace

std::string tag_name(IdentityTag t) {
  for (auto& e : kTags)
    if (e.tag == t) return e.name;
  return "?";
}

IdentityTag tag_from_string(const std::string& s) {
  for (auto& e : kTags)
    if (s == e.name) return e.tag;
  throw VerifyUsageError("unknown identity tag '" + s + "'");
}

std::vector<IdentityTag> all_tags() {
  std::vector<IdentityTag> v;
  for (auto& e : kTags) v.push_back(e.tag);
  return v;
}

bool tag_is_summed(IdentityTag t) {
  switch (t) {
    case IdentityTag::AG:
    case IdentityTag::AG_X:
    case IdentityTag::BRESSOUD:
    case IdentityTag::BRESSOUD_X:
    case IdentityTag::OGG:
    case IdentityTag::OGG_X:
    case IdentityTag::F_GF:
    case IdentityTag::H_GF: return true;
    default: return false;
  }
}

bool tag_is_bivariate(IdentityTag t) {
  switch (t) {
    case IdentityTag::AG_X:
    case IdentityTag::BRESSOUD_X:
    case IdentityTag::OGG_X:
    case IdentityTag::F_GF:
    case IdentityTag::H_GF: return true;
    default: return false;
  }
}

bool tag_needs_profile(IdentityTag t) {
  switch (t) {
    case IdentityTag::CLASS_F:
    case IdentityTag::CLASS_G:
    case IdentityTag::CLASS_E:
    case IdentityTag::CLASS_B:
    case IdentityTag::LEM_N1:
    case IdentityTag::LEM_N2: return true;
    default: return false;
  }
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json j = {{"kind", r.kind},
                      {"tag", r.tag},
                      {"params", r.params},
                      {"truncation", r.truncation},
                      {"verdict", r.pass ? "pass" : "fail"}};
  if (r.first) {
    nlohmann::json f = {{"exponent", r.first->n},
                        {"lhs", rational_to_string(r.first->lhs)},
                        {"rhs", rational_to_string(r.first->rhs)}};
    if (r.first->m >= 0) f["x_exponent"] = r.first->m;
    if (!r.first->witness.empty()) f["witness"] = r.first->witness;
    j["first_difference"] = f;
  }
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

LaurentSeries multisum_lhs(IdentityTag t, int k, int i, long T) {
  auto acc = LaurentSeries::zero(T);
  for_each_summand(t, k, i, T, [&](long, const LaurentSeries& term) { acc = acc + term; });
  return acc;
}

BivariateSeries multisum_lhs_x(IdentityTag t, int k, int i, long T) {
  BivariateSeries acc(T);
  for_each_summand(t, k, i, T, [&](long m, const LaurentSeries& term) { acc.add(m, term); });
  return acc;
}

LaurentSeries product_rhs(IdentityTag t, int k, int i, long T) {
  check_ki(k, i);
  auto inv_q = [&] { return series_inverse(pochhammer_infinite(1, 1, 1, T)); };
  switch (t) {
    case IdentityTag::AG: {
      long m = 2 * k + 1;
      auto p = pochhammer_infinite(1, i, m, T) * pochhammer_infinite(1, m - i, m, T) * pochhammer_infinite(1, m, m, T);
      return (p * inv_q()).truncated(T);
    }
    case IdentityTag::BRESSOUD: {
      long m = 4 * k;
      auto p = pochhammer_infinite(1, 2, 4, T) * pochhammer_infinite(1, m, m, T) *
               pochhammer_infinite(1, 2 * i - 1, m, T) * pochhammer_infinite(1, m - 2 * i + 1, m, T);
      return (p * inv_q()).truncated(T);
    }
    case IdentityTag::OGG:
      return (pochhammer_infinite(-1, 1, 1, T) * product_triple(k, i, T) * inv_q()).truncated(T);
    case IdentityTag::JTP: return product_triple(k, i, T);
    default: throw VerifyUsageError("tag " + tag_name(t) + " has no product side");
  }
}

std::vector<BivariateSeries> family_bivariate(const std::vector<FamilySpec>& specs, long T) {
  std::vector<std::vector<std::vector<long>>> grid(specs.size(), std::vector<std::vector<long>>(T + 1));
  auto bump = [&](size_t s, int w, size_t m) {
    auto& row = grid[s][w];
    if (row.size() <= m) row.resize(m + 1, 0);
    ++row[m];
  };
  std::vector<size_t> over, plain;
  for (size_t s = 0; s < specs.size(); ++s) (family_on_overpartitions(specs[s].family) ? over : plain).push_back(s);
  if (!over.empty()) {
    for_each_overpartition_upto(static_cast<int>(T), [&](const std::vector<OverPart>& v, int w) {
      FrequencyTable f(v);
      const OverPart* smallest = v.empty() ? nullptr : &v.front();
      for (size_t s : over)
        if (family_holds(f, specs[s], smallest)) bump(s, w, v.size());
    });
  }
  if (!plain.empty()) {
    for_each_partition_upto(static_cast<int>(T), [&](const std::vector<int>& v, int w) {
      FrequencyTable f(v);
      for (size_t s : plain)
        if (family_holds(f, specs[s], nullptr)) bump(s, w, v.size());
    });
  }
  std::vector<BivariateSeries> out;
  for (size_t s = 0; s < specs.size(); ++s) {
    BivariateSeries b(T);
    for (long n = 0; n <= T; ++n)
      for (size_t m = 0; m < grid[s][n].size(); ++m)
        if (grid[s][n][m]) b.add_count(static_cast<long>(m), n, grid[s][n][m]);
    if (specs[s].family == Family::F || specs[s].family == Family::H) b.add_count(0, 0, Rational(1, 2));
    out.push_back(std::move(b));
  }
  return out;
}

BivariateSeries family_bivariate(const FamilySpec& spec, long T) { return family_bivariate(std::vector{spec}, T)[0]; }

std::string class_name(GfClass c) {
  static const char* n[] = {"F", "G", "E", "B"};
  return n[static_cast<int>(c)];
}

LaurentSeries class_closed_form(GfClass c, const std::vector<int>& profile, int i, long T) {
  check_profile(profile);
  int k = static_cast<int>(profile.size()) + 1;
  check_ki(k, i);
  long base = c == GfClass::B ? 1 : 2;
  int level = c == GfClass::F ? 2 : c == GfClass::G ? 1 : 0;
  Shape s{base, i, level, false};
  InvFactorials inv(base, T);
  return summand(s, profile, i, T, inv);
}

ClassCensus::ClassCensus(long T) : T_(T) {
  for_each_overpartition_upto(static_cast<int>(T), [&](const std::vector<OverPart>& v, int w) {
    if (v.empty()) return;  // the empty object is handled in series()
    MarkedOverpartition m;
    m.base.parts = v;
    m.marks = gg_marks(v);
    auto rows = row_counts(m);
    int k = static_cast<int>(rows.size()) + 1;
    // i = k never binds, so only the kind clauses decide here
    if (!check_row_class(m, RowClass::F, rows, k)) return;
    int level = check_row_class(m, RowClass::E, rows, k) ? 2 : check_row_class(m, RowClass::G, rows, k) ? 1 : 0;
    FrequencyTable f(v);
    auto& bucket = over_[Key{rows, f.over(1) + f.plain(2), level}];
    if (bucket.empty()) bucket.assign(T + 1, 0);
    ++bucket[w];
  });
  for_each_partition_upto(static_cast<int>(T), [&](const std::vector<int>& v, int w) {
    MarkedPartition m;
    m.base.parts = v;
    m.marks = gordon_marks(v);
    auto rows = row_counts(m);
    FrequencyTable f(v);
    auto& bucket = plain_[Key{rows, f.plain(1), 0}];
    if (bucket.empty()) bucket.assign(T + 1, 0);
    ++bucket[w];
  });
}

LaurentSeries ClassCensus::series(GfClass c, const std::vector<int>& profile, int i) const {
  check_profile(profile);
  check_ki(static_cast<int>(profile.size()) + 1, i);
  auto rows = trimmed(profile);
  std::vector<Rational> coeffs(T_ + 1, 0);
  if (rows.empty() && c != GfClass::B) coeffs[0] = c == GfClass::F ? Rational(1, 2) : Rational(1);
  const auto& table = c == GfClass::B ? plain_ : over_;
  int need = c == GfClass::E ? 2 : c == GfClass::G ? 1 : 0;
  for (auto it = table.lower_bound(Key{rows, 0, 0}); it != table.end() && it->first.rows == rows; ++it) {
    if (it->first.small > i - 1) continue;
    if (c != GfClass::B && it->first.level < need) continue;
    for (long n = 0; n <= T_; ++n) coeffs[n] += it->second[n];
  }
  return LaurentSeries(0, T_, std::move(coeffs));
}

VerificationReport verify_class_gf(const std::vector<int>& profile, int i, long T, GfClass c,
                                   const ClassCensus* census) {
  VerificationReport r;
  r.kind = "class";
  r.tag = "CLASS-" + class_name(c);
  r.params = {{"profile", profile}, {"i", i}, {"k", profile.size() + 1}};
  r.truncation = T;
  std::optional<ClassCensus> own;
  if (!census || census->truncation() < T) census = &own.emplace(T);
  auto enumerated = census->series(c, profile, i).truncated(T);
  fill(r, compare(enumerated, class_closed_form(c, profile, i, T)));
  return r;
}

namespace {

VerificationReport verify_factorization(IdentityTag t, const std::vector<int>& profile, int i, long T,
                                const ClassCensus* census) {
  check_profile(profile);
  check_ki(static_cast<int>(profile.size()) + 1, i);
  VerificationReport r;
  r.kind = "class";
  r.tag = tag_name(t);
  r.params = {{"profile", profile}, {"i", i}, {"k", profile.size() + 1}};
  r.truncation = T;
  long n1 = profile.empty() ? 0 : profile[0];
  bool f_over_g = t == IdentityTag::LEM_N1;
  long v = f_over_g ? even_factor_val(n1) : odd_factor_val(n1);
  // the factor reaches down to q^v, so the right side needs members up to T - v
  long need = T - v;
  std::optional<ClassCensus> own;
  if (!census || census->truncation() < need) census = &own.emplace(need);
  auto big = census->series(f_over_g ? GfClass::F : GfClass::G, profile, i).truncated(T);
  auto small = census->series(f_over_g ? GfClass::G : GfClass::E, profile, i).truncated(need);
  auto factor = f_over_g ? even_factor(n1, T - small.valuation()) : odd_factor(n1, T - small.valuation());
  fill(r, compare(big, (factor * small).truncated(T)));
  return r;
}

}  // namespace

VerificationReport verify_identity(IdentityTag t, int k, int i, long T, const std::vector<int>& profile,
                                   const ClassCensus* census) {
  check_ki(k, i);
  if (tag_needs_profile(t)) {
    if (static_cast<int>(profile.size()) != k - 1)
      throw VerifyUsageError(tag_name(t) + " needs a profile with k-1 = " + std::to_string(k - 1) + " entries");
    switch (t) {
      case IdentityTag::CLASS_F: return verify_class_gf(profile, i, T, GfClass::F, census);
      case IdentityTag::CLASS_G: return verify_class_gf(profile, i, T, GfClass::G, census);
      case IdentityTag::CLASS_E: return verify_class_gf(profile, i, T, GfClass::E, census);
      case IdentityTag::CLASS_B: return verify_class_gf(profile, i, T, GfClass::B, census);
      default: return verify_factorization(t, profile, i, T, census);
    }
  }
  VerificationReport r;
  r.kind = "identity";
  r.tag = tag_name(t);
  r.params = {{"k", k}, {"i", i}};
  r.truncation = T;
  if (t == IdentityTag::JTP) {
    fill(r, compare(theta_bressoud_sum(k, i, T), product_rhs(t, k, i, T)));
  } else if (tag_is_bivariate(t)) {
    auto lhs = multisum_lhs_x(t, k, i, T);
    fill(r, compare(lhs, family_bivariate(FamilySpec(family_for(t), k, i), T)));
  } else {
    fill(r, compare(multisum_lhs(t, k, i, T), product_rhs(t, k, i, T)));
  }
  return r;
}

std::string theorem_name(Theorem t) {
  static const char* n[] = {"T1.1", "T1.2", "T1.5"};
  return n[static_cast<int>(t)];
}

Theorem theorem_from_string(const std::string& s) {
  for (int t = 0; t < 3; ++t)
    if (theorem_name(static_cast<Theorem>(t)) == s) return static_cast<Theorem>(t);
  throw VerifyUsageError("unknown theorem '" + s + "'");
}

VerificationReport verify_counting(Theorem th, int k, int i, int n_max) {
  check_ki(k, i);
  if (n_max < 0) throw VerifyUsageError("n_max must be nonnegative");
  Family a = th == Theorem::T1_1 ? Family::C : th == Theorem::T1_2 ? Family::A : Family::O;
  Family b = th == Theorem::T1_1 ? Family::D : th == Theorem::T1_2 ? Family::B : Family::P;
  auto series = family_bivariate(std::vector{FamilySpec(a, k, i), FamilySpec(b, k, i)}, n_max);
  VerificationReport r;
  r.kind = "counting";
  r.tag = theorem_name(th);
  r.params = {{"k", k}, {"i", i}, {"n_max", n_max}, {"families", {family_name(a), family_name(b)}}};
  r.truncation = n_max;
  auto ca = series[0].at_x_one(), cb = series[1].at_x_one();
  nlohmann::json counts = nlohmann::json::array(), bad = nlohmann::json::array();
  for (long n = 0; n <= n_max; ++n) {
    Rational x = ca.coeff(n), y = cb.coeff(n);
    counts.push_back({n, x.get_num().get_si(), y.get_num().get_si()});
    if (x != y) {
      bad.push_back(n);
      if (!r.first) r.first = Mismatch{n, -1, x, y, "weight " + std::to_string(n)};
      r.pass = false;
    }
  }
  r.details = {{"counts", counts}, {"mismatched_weights", bad}};
  return r;
}

std::vector<std::vector<int>> profiles_upto(int len, int top) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(len, 0);
  std::function<void(int, int)> rec = [&](int j, int cap) {
    if (j == len) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= cap; ++v) {
      cur[j] = v;
      rec(j + 1, v);
    }
  };
  rec(0, top);
  return out;
}

MarkedOverpartition parse_rows(const std::string& text) {
  std::vector<std::pair<OverPart, int>> tagged;
  int r = 1;
  size_t start = 0;
  while (true) {
    size_t slash = text.find('/', start);
    auto row = parse_overpartition(text.substr(start, slash == std::string::npos ? std::string::npos : slash - start));
    for (auto& x : row.parts) tagged.push_back({x, r});
    if (slash == std::string::npos) break;
    start = slash + 1;
    ++r;
  }
  std::stable_sort(tagged.begin(), tagged.end(), [](auto& a, auto& b) { return a.first.key() < b.first.key(); });
  std::vector<OverPart> parts;
  for (auto& t : tagged) parts.push_back(t.first);
  auto m = gg_mark(Overpartition(parts));
  // equal parts may be listed in any row order, so compare marks per size
  for (size_t j = 0; j < tagged.size();) {
    size_t e = j;
    std::vector<int> want, got;
    for (; e < tagged.size() && tagged[e].first == tagged[j].first; ++e) {
      want.push_back(tagged[e].second);
      got.push_back(m.marks[e]);
    }
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) throw PartitionError("rows '" + text + "' disagree with the marking at part " + std::to_string(tagged[j].first.size));
    j = e;
  }
  return m;
}

namespace {

// Collects property counts and the first failure of a sweep.
struct Tally {
  VerificationReport& rep;
  std::map<std::string, long> checked, failed;
  std::map<std::string, std::vector<std::string>> witnesses;  // first few per property

  void ok(const std::string& prop) { ++checked[prop]; }
  void bad(const std::string& prop, long weight, const std::string& witness) {
    ++checked[prop];
    ++failed[prop];
    if (witnesses[prop].size() < 5) witnesses[prop].push_back(witness);
    if (!rep.first) rep.first = Mismatch{weight, -1, 0, 0, prop + ": " + witness};
    rep.pass = false;
  }
  template <class F>
  void run(const std::string& prop, long weight, const std::string& witness, F&& body) {
    try {
      if (body())
        ok(prop);
      else
        bad(prop, weight, witness);
    } catch (const std::exception& e) {
      bad(prop, weight, witness + " (" + e.what() + ")");
    }
  }
  void finish() {
    rep.details["checked"] = checked;
    rep.details["failed"] = failed;
    if (!witnesses.empty()) rep.details["witnesses"] = witnesses;
  }
};

int signed_sum(const SignedParts& s) { return std::accumulate(s.begin(), s.end(), 0); }

// Subsets of {base - step*(n-1), ..., base - step, base}, each sorted increasingly.
std::vector<SignedParts> signed_subsets(int n, int top, int step) {
  std::vector<SignedParts> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    SignedParts s;
    for (int b = n - 1; b >= 0; --b)
      if (mask >> b & 1) s.push_back(top - step * b);
    out.push_back(s);
  }
  return out;
}

std::string describe(const MarkedOverpartition& m) { return "[" + format_overpartition(m.base) + "]"; }

}  // namespace

namespace {

// First-row parts equal outside positions [lo, hi] (1-based).
bool rows_agree_off(const std::vector<OverPart>& a, const std::vector<OverPart>& b, int lo, int hi) {
  if (a.size() != b.size()) return false;
  for (size_t j = 0; j < a.size(); ++j) {
    int pos = static_cast<int>(j) + 1;
    if ((pos < lo || pos > hi) && !(a[j] == b[j])) return false;
  }
  return true;
}

bool types_agree_off(const MarkedOverpartition& a, const MarkedOverpartition& b, int n1, int p) {
  if (static_cast<int>(row_indices(b, 1).size()) != n1) return false;
  for (int j = 1; j <= n1; ++j)
    if (j != p && j != p + 1 && part_type(a, j) != part_type(b, j)) return false;
  return true;
}

}  // namespace

VerificationReport verify_bijections(int k, int i, int n_max) {
  check_ki(k, i);
  VerificationReport rep;
  rep.kind = "bijections";
  rep.tag = "BIJECTIONS";
  rep.params = {{"k", k}, {"i", i}, {"n_max", n_max}};
  rep.truncation = n_max;
  Tally t{rep, {}, {}, {}};
  ClassParams cp{k, i};
  FamilySpec h_side(Family::H, k, i >= 2 ? i - 1 : k);

  for_each_overpartition_upto(n_max, [&](const std::vector<OverPart>& v, int w) {
    Overpartition o;
    o.parts = v;
    auto m = gg_mark(o);
    std::string who = describe(m);
    if (!v.empty() && satisfies_family(o, h_side)) {
      t.run("toggle inverse side", w, who, [&] {
        auto s = fh_untoggle(o, k, i);
        return fh_toggle(s, k, i) == o;
      });
    }
    if (m.max_mark() > k - 1) return;
    auto prof = row_counts(m);
    prof.resize(k - 1, 0);
    int n1 = prof.empty() ? 0 : prof[0];
    bool in_f = static_cast<bool>(check_row_class(m, RowClass::F, prof, i));
    bool in_g = static_cast<bool>(check_row_class(m, RowClass::G, prof, i));
    bool in_e = static_cast<bool>(check_row_class(m, RowClass::E, prof, i));

    if (in_f) {
      for (int p = 2; p <= n1; ++p) {
        auto rc = classify_F(m, p);
        std::string at = who + " p=" + std::to_string(p);
        if (rc.in_f) {
          t.run("phi step", w, at, [&] {
            auto mu = phi_p(m, p, cp);
            return mu.base.weight() == w + 2 && psi_p(mu, p, cp) == m && classify_F(mu, p).in_f_bar &&
                   rows_agree_off(sub_overpartition(m, 1), sub_overpartition(mu, 1), p, p + 1);
          });
          t.run("phi chain", w, at, [&] {
            auto mu = phi_chain(m, p, cp);
            return mu.base.weight() == w + 2 * n1 - 2 * p + 2 && psi_chain(mu, p, cp) == m &&
                   classify_F(mu, p).in_f_arrow &&
                   rows_agree_off(sub_overpartition(m, 1), sub_overpartition(mu, 1), p, n1 + 1);
          });
        }
        if (rc.in_f_bar) {
          t.run("psi step", w, at, [&] {
            auto la = psi_p(m, p, cp);
            return la.base.weight() == w - 2 && phi_p(la, p, cp) == m;
          });
        }
      }
      t.run("phi full", w, who, [&] {
        auto [tau, mu] = phi_full(m, cp);
        return signed_sum(tau) + mu.base.weight() == w && psi_full(tau, mu, cp) == m &&
               check_row_class(mu, RowClass::G, prof, i) && valid_even_signed(tau, n1 - 1);
      });
      if (!v.empty()) {
        t.run("toggle", w, who, [&] {
          auto s = fh_toggle(o, k, i);
          int expect = i == 1 ? w - 2 * o.length() : w;
          return s.weight() == expect && s.length() == o.length() && fh_untoggle(s, k, i) == o;
        });
      }
    }

    if (in_g) {
      // the F class has no empty member, so the empty G member has no preimage
      for (auto& tau : n1 > 0 ? signed_subsets(n1 - 1, -2, 2) : std::vector<SignedParts>{}) {
        t.run("psi full", w, who, [&] {
          auto lam = psi_full(tau, m, cp);
          auto back = phi_full(lam, cp);
          return lam.base.weight() == w + signed_sum(tau) && back.first == tau && back.second == m;
        });
      }
      for (int p = 1; p <= n1; ++p) {
        auto rc = classify_G(m, p);
        std::string at = who + " p=" + std::to_string(p);
        int gain = p == n1 ? 1 : 2;
        if (rc.in_g) {
          t.run("theta step", w, at, [&] {
            auto nu = theta_p(m, p, cp);
            return nu.base.weight() == w + gain && lambda_p(nu, p, cp) == m && classify_G(nu, p).in_g_bar &&
                   types_agree_off(m, nu, n1, p);
          });
          t.run("theta chain", w, at, [&] {
            auto nu = theta_chain(m, p, cp);
            return nu.base.weight() == w + 2 * n1 - 2 * p + 1 && lambda_chain(nu, p, cp) == m &&
                   classify_G(nu, p).in_g_arrow;
          });
        }
        if (rc.in_g_bar) {
          t.run("lambda step", w, at, [&] {
            auto mu = lambda_p(m, p, cp);
            return mu.base.weight() == w - gain && theta_p(mu, p, cp) == m;
          });
        }
      }
      t.run("theta full", w, who, [&] {
        auto [eta, nu] = theta_full(m, cp);
        return signed_sum(eta) + nu.base.weight() == w && lambda_full(eta, nu, cp) == m &&
               check_row_class(nu, RowClass::E, prof, i) && valid_odd_signed(eta, n1);
      });
    }

    if (in_e) {
      for (auto& eta : signed_subsets(n1, -1, 2)) {
        t.run("lambda full", w, who, [&] {
          auto mu = lambda_full(eta, m, cp);
          auto back = theta_full(mu, cp);
          return mu.base.weight() == w + signed_sum(eta) && back.first == eta && back.second == m;
        });
      }
      t.run("halving", w, who, [&] {
        auto h = halve(o);
        auto g = gordon_mark(h);
        return 2 * h.weight() == w && g.marks == m.marks && check_gordon_class(g, prof, i).ok &&
               double_parts(h) == o;
      });
    }
  });

  for_each_partition_upto(n_max / 2, [&](const std::vector<int>& v, int w) {
    Partition eta{v};
    auto g = gordon_mark(eta);
    int top = 0;
    for (int x : g.marks) top = std::max(top, x);
    if (top > k - 1) return;
    auto prof = row_counts(g);
    prof.resize(k - 1, 0);
    if (!check_gordon_class(g, prof, i)) return;
    t.run("doubling", 2 * w, "[" + format_partition(eta) + "]", [&] {
      auto d = double_parts(eta);
      auto m = gg_mark(d);
      return m.marks == g.marks && check_row_class(m, RowClass::E, prof, i).ok && halve(d) == eta;
    });
  });
  t.finish();
  return rep;
}

namespace {

struct StepExample {
  const char* name;
  bool theta;  // else phi
  int p;
  int expect_case;  // subclass for phi steps, 0 if unchecked
  const char* before;
  const char* after;
};

const StepExample kStepExamples[] = {
    {"phi case 1 at p=3", false, 3, 1, "1~,3,3,6/2,4,7~/6", "1~,3,5~,6~/2,4,7~/6"},
    {"phi case 2 at p=3", false, 3, 2, "1~,4~,7,10,13~/2,4,8,11~/4,8", "1~,4~,8,10~,13~/2,4,8,11~/4,9~"},
    {"phi case 3 at p=5, third row", false, 5, 3, "1~,3,3,6,10~,13~/2,4,7~,10,14/4,10,14",
     "1~,3,3,6,10,13/2,4,7~,10,14/4,12,14"},
    {"phi case 3 at p=5, first row", false, 5, 3, "1~,4~,7,7,8~,13~/2,4,8,14/4,14", "1~,4~,7,7,10,13/2,4,8,14/4,14"},
    {"phi case 4 at p=4", false, 4, 4, "1~,4,5,6~,10/2,6,10/7~,10", "1~,4,5,7~,10~/2,6,10/8,10"},
    {"phi case 4 at p=3", false, 3, 4, "1~,3,6~,9~,12/2,6,10,13~/7~,14", "1~,3,6,9,12/2,7~,10,13~/8,14"},
    {"theta at p=1", true, 1, 0, "1~,6,10,14/2,8,12/8", "2,7~,10,14/2,8,12/8"},
    {"theta at p=3", true, 3, 0, "1~,4,8,12/2,5~,9~,12/6,12", "1~,4,8,12/2,5~,10,13~/6,12"},
    {"theta at p=4 (last)", true, 4, 0, "1~,4,7~,10/2,6,11~/6,12", "1~,4,7~,10/2,6,12/6,12"},
};

}  // namespace

VerificationReport verify_worked_examples() {
  VerificationReport rep;
  rep.kind = "examples";
  rep.tag = "WORKED-EXAMPLES";
  Tally t{rep, {}, {}, {}};
  nlohmann::json names = nlohmann::json::array();

  auto marks_of = [](const char* s) { return gg_mark(parse_overpartition(s)).marks; };
  t.run("marking", 0, "mixed overpartition", [&] {
    auto m = gg_mark(parse_overpartition("1,1,2~,2,3~,4~,6,7,8,8"));
    return m.marks == std::vector<int>{1, 1, 1, 2, 3, 1, 2, 1, 2, 3} && row_counts(m) == std::vector<int>{5, 3, 2};
  });
  t.run("marking", 0, "even parts and their halves", [&] {
    std::vector<int> want{1, 2, 3, 4, 5, 1, 2, 1, 3, 2, 4, 5};
    return marks_of("2,2,4,4,4,6,8,10,10,12,12,12") == want &&
           gordon_mark(parse_partition("1,1,2,2,2,3,4,5,5,6,6,6")).marks == want &&
           halve(parse_overpartition("2,2,4,4,4,6,8,10,10,12,12,12")) == parse_partition("1,1,2,2,2,3,4,5,5,6,6,6");
  });
  names.push_back("marking: mixed overpartition");
  names.push_back("marking: even parts and their halves");

  ClassParams cp{4, 3};
  for (auto& ex : kStepExamples) {
    names.push_back(ex.name);
    t.run("step example", 0, ex.name, [&] {
      auto a = parse_rows(ex.before), b = parse_rows(ex.after);
      if (ex.theta) {
        int n1 = static_cast<int>(row_indices(a, 1).size());
        int gain = ex.p == n1 ? 1 : 2;
        return theta_p(a, ex.p, cp) == b && lambda_p(b, ex.p, cp) == a && b.base.weight() == a.base.weight() + gain;
      }
      auto rc = classify_F(a, ex.p);
      return rc.sub == ex.expect_case && phi_p(a, ex.p, cp) == b && psi_p(b, ex.p, cp) == a &&
             b.base.weight() == a.base.weight() + 2;
    });
  }
  rep.details["examples"] = names;
  t.finish();
  return rep;
}

VerificationReport verify_bailey(int k, int i, long T, long n_rel) {
  check_ki(k, i);
  if (i == k) throw VerifyUsageError("chain undefined for i=k");
  VerificationReport rep;
  rep.kind = "bailey";
  rep.tag = "BAILEY-CHAIN";
  rep.params = {{"k", k}, {"i", i}, {"relation_n_max", n_rel}};
  rep.truncation = T;
  auto note_fail = [&](const std::string& what, const SeriesDiff& d) {
    if (rep.first) return;
    rep.first = from_diff(d);
    rep.first->witness = what;
  };
  auto stages = run_chain_stages(k, i, limit_index(T) + 1, T);
  nlohmann::json st = nlohmann::json::array();
  for (auto& s : stages) {
    auto rc = verify_pair_relation(s.pair, n_rel);
    nlohmann::json e = {{"stage", s.name}, {"base", s.pair.base}, {"relation", rc.ok ? "pass" : "fail"}};
    if (!rc.ok) {
      e["first_failing_n"] = rc.n;
      rep.pass = false;
      note_fail("pair relation at stage " + s.name + ", n=" + std::to_string(rc.n), rc.diff);
    }
    st.push_back(e);
  }
  rep.details["stages"] = st;

  const auto& quad = stages[1].pair;
  bool quad_ok = true;
  for (long n = 0; n < quad.size(); ++n) {
    auto want = series_inverse(pochhammer_finite(1, quad.base, quad.base, n, T)).truncated(T);
    auto d = compare(quad.beta[n], want);
    if (!d.equal) {
      quad_ok = false;
      rep.pass = false;
      note_fail("quadratic stage beta at n=" + std::to_string(n), d);
      break;
    }
  }
  rep.details["quadratic_beta"] = quad_ok ? "pass" : "fail";

  try {
    auto li = limit_identity(stages.back().pair, T);
    auto d_sides = li.diff;
    auto d_lhs = compare(li.lhs, multisum_lhs(IdentityTag::OGG, k, i, T));
    auto d_rhs = compare(li.rhs, product_rhs(IdentityTag::OGG, k, i, T));
    rep.details["limit"] = {{"sides", d_sides.equal ? "pass" : "fail"},
                            {"lhs_vs_multisum", d_lhs.equal ? "pass" : "fail"},
                            {"rhs_vs_product", d_rhs.equal ? "pass" : "fail"}};
    std::vector<std::pair<std::string, SeriesDiff>> parts{
        {"limit sides", d_sides}, {"limit lhs vs multisum", d_lhs}, {"limit rhs vs product", d_rhs}};
    for (auto& [what, d] : parts) {
      if (!d.equal) {
        rep.pass = false;
        note_fail(what, d);
      }
    }
  } catch (const BaileyError& e) {
    rep.pass = false;
    rep.details["limit"] = {{"error", e.what()}};
    if (!rep.first) rep.first = Mismatch{0, -1, 0, 0, e.what()};
  }
  return rep;
}

std::vector<VerificationReport> run_parallel(const std::vector<std::function<VerificationReport()>>& tasks, int jobs) {
  std::vector<VerificationReport> out(tasks.size());
  std::vector<std::exception_ptr> errs(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t j; (j = next++) < tasks.size();) {
      try {
        out[j] = tasks[j]();
      } catch (...) {
        errs[j] = std::current_exception();
      }
    }
  };
  int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < n; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace ggkit
