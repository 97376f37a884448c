#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <string>
#include <vector>

#include <json.hpp>

#include "ggkit/bailey.hpp"
#include "ggkit/bijections.hpp"
#include "ggkit/marking.hpp"
#include "ggkit/partition.hpp"
#include "ggkit/series.hpp"

namespace ggkit {

// Bad parameters for a check (as opposed to a failed check).
class VerifyUsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class IdentityTag {
  AG,
  AG_X,
  BRESSOUD,
  BRESSOUD_X,
  OGG,
  OGG_X,
  F_GF,
  H_GF,
  CLASS_F,
  CLASS_G,
  CLASS_E,
  CLASS_B,
  LEM_N1,
  LEM_N2,
  JTP,
};

std::string tag_name(IdentityTag t);
IdentityTag tag_from_string(const std::string& s);
std::vector<IdentityTag> all_tags();
bool tag_is_summed(IdentityTag t);
bool tag_is_bivariate(IdentityTag t);
bool tag_needs_profile(IdentityTag t);

struct Mismatch {
  long n = 0;   // q exponent (or weight)
  long m = -1;  // x exponent for bivariate checks
  Rational lhs, rhs;
  std::string witness;
};

struct VerificationReport {
  std::string kind;  // identity, counting, class, bijections, examples, bailey
  std::string tag;
  nlohmann::json params = nlohmann::json::object();
  long truncation = 0;
  bool pass = true;
  std::optional<Mismatch> first;
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(const VerificationReport& r);

// Multisum side of AG, BRESSOUD, OGG, F-GF, H-GF (x = 1), and their
// bivariate forms. Needs k >= 2.
LaurentSeries multisum_lhs(IdentityTag t, int k, int i, long T);
BivariateSeries multisum_lhs_x(IdentityTag t, int k, int i, long T);
// Product side of AG, BRESSOUD, OGG and JTP.
LaurentSeries product_rhs(IdentityTag t, int k, int i, long T);

// sum_{m,n} (#members of weight n with m parts) x^m q^n for n <= T. For the
// F and H families the empty overpartition contributes 1/2 each, matching
// the constant term of their multisums.
BivariateSeries family_bivariate(const FamilySpec& spec, long T);
std::vector<BivariateSeries> family_bivariate(const std::vector<FamilySpec>& specs, long T);

enum class GfClass { F, G, E, B };
std::string class_name(GfClass c);

// Closed-form row-profile generating function for a class.
LaurentSeries class_closed_form(GfClass c, const std::vector<int>& profile, int i, long T);

// Every overpartition (and partition) of weight <= T marked once and bucketed
// by row profile, so many class checks can share one enumeration.
class ClassCensus {
 public:
  explicit ClassCensus(long T);
  long truncation() const { return T_; }
  // Weight series of the class members with this profile (k = size + 1).
  LaurentSeries series(GfClass c, const std::vector<int>& profile, int i) const;

 private:
  struct Key {
    std::vector<int> rows;
    int small;  // parts 1~ and 2 (overpartitions) or parts 1 (partitions)
    int level;  // overpartitions: 0 in F only, 1 in G not E, 2 in E
    bool operator<(const Key& o) const {
      return std::tie(rows, small, level) < std::tie(o.rows, o.small, o.level);
    }
  };
  long T_;
  std::map<Key, std::vector<long>> over_, plain_;
};

VerificationReport verify_identity(IdentityTag t, int k, int i, long T, const std::vector<int>& profile = {},
                                   const ClassCensus* census = nullptr);

enum class Theorem { T1_1, T1_2, T1_5 };
std::string theorem_name(Theorem t);
Theorem theorem_from_string(const std::string& s);
VerificationReport verify_counting(Theorem th, int k, int i, int n_max);

VerificationReport verify_class_gf(const std::vector<int>& profile, int i, long T, GfClass c,
                                   const ClassCensus* census = nullptr);

// Roundtrips and weight laws of every map over all class members of weight
// <= n_max.
VerificationReport verify_bijections(int k, int i, int n_max);
// Fixed marking and bijection examples.
VerificationReport verify_worked_examples();

// Chain stages, pair relation for n <= n_rel, quadratic stage against
// 1/(q;q)_n, and the limit identity against the OGG sides.
VerificationReport verify_bailey(int k, int i, long T, long n_rel = 6);

// Parses "row1/row2/..." (row 1 first) into a marked overpartition and checks
// the rows agree with the computed marking; throws PartitionError otherwise.
MarkedOverpartition parse_rows(const std::string& text);

// Runs independent checks on `jobs` threads; results keep input order.
std::vector<VerificationReport> run_parallel(const std::vector<std::function<VerificationReport()>>& tasks, int jobs);

// All nonincreasing profiles of length len with entries <= top.
std::vector<std::vector<int>> profiles_upto(int len, int top);

}  // namespace ggkit
