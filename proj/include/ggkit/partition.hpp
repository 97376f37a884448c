#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace ggkit {

class PartitionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OverPart {
  int size = 0;
  bool overlined = false;

  bool odd() const { return size % 2 != 0; }
  // Order key: 1~ < 1 < 2~ < 2 < ...
  int key() const { return 2 * size - (overlined ? 1 : 0); }
  friend bool operator==(const OverPart&, const OverPart&) = default;
  friend bool operator<(const OverPart& a, const OverPart& b) { return a.key() < b.key(); }
  friend bool operator<=(const OverPart& a, const OverPart& b) { return a.key() <= b.key(); }
};

struct Overpartition {
  std::vector<OverPart> parts;  // nondecreasing in OverPart order

  Overpartition() = default;
  explicit Overpartition(std::vector<OverPart> p);  // sorts and validates

  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool empty() const { return parts.empty(); }
  friend bool operator==(const Overpartition&, const Overpartition&) = default;
  friend bool operator<(const Overpartition& a, const Overpartition& b) {
    return std::lexicographical_compare(a.parts.begin(), a.parts.end(), b.parts.begin(), b.parts.end());
  }
};

// Throws PartitionError if an overlined size repeats or a size is < 1.
void validate(const Overpartition& p);

struct Partition {
  std::vector<int> parts;  // nondecreasing

  int weight() const;
  int length() const { return static_cast<int>(parts.size()); }
  friend bool operator==(const Partition&, const Partition&) = default;
  friend bool operator<(const Partition& a, const Partition& b) { return a.parts < b.parts; }
};

class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(const std::vector<OverPart>& parts);
  explicit FrequencyTable(const std::vector<int>& parts);
  explicit FrequencyTable(const Overpartition& p) : FrequencyTable(p.parts) {}
  explicit FrequencyTable(const Partition& p) : FrequencyTable(p.parts) {}

  int plain(int s) const { return s >= 1 && s < static_cast<int>(plain_.size()) ? plain_[s] : 0; }
  int over(int s) const { return s >= 1 && s < static_cast<int>(over_.size()) ? over_[s] : 0; }
  int max_size() const { return static_cast<int>(plain_.size()) - 1; }

 private:
  std::vector<int> plain_, over_;
};

enum class Family { O, P, C, D, A, B, F, H };

std::string family_name(Family f);
Family family_from_string(std::string_view s);
bool family_on_overpartitions(Family f);

struct FamilySpec {
  Family family;
  int k, i;
  FamilySpec(Family f, int k_, int i_);
};

bool satisfies_family(const Overpartition& p, const FamilySpec& spec);
bool satisfies_family(const Partition& p, const FamilySpec& spec);
// Frequency-level predicates; `smallest` is only consulted for F and H.
bool family_holds(const FrequencyTable& f, const FamilySpec& spec, const OverPart* smallest);

// Smallest-part split of the O family: F if the smallest part is overlined
// odd or plain even, H otherwise. The empty overpartition is in neither.
bool smallest_part_is_f_kind(const Overpartition& p);

// Visit every overpartition of weight exactly n (or all of weight <= n) in
// canonical order: lexicographic on the part sequence under OverPart order.
void for_each_overpartition(int n, const std::function<void(const std::vector<OverPart>&)>& f);
void for_each_overpartition_upto(int n, const std::function<void(const std::vector<OverPart>&, int)>& f);
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& f);
void for_each_partition_upto(int n, const std::function<void(const std::vector<int>&, int)>& f);

std::vector<Overpartition> enumerate_overpartitions(int n);
std::vector<Partition> enumerate_partitions(int n);

long count_family(const FamilySpec& spec, int n);
// m -> number of members of weight n with m parts
std::map<int, long> count_family_bivariate(const FamilySpec& spec, int n);

// Text form "1~,1,2~,2"; a combining overline (U+0305) or macron is accepted
// in place of the tilde on input.
Overpartition parse_overpartition(std::string_view text);
std::string format_overpartition(const Overpartition& p);
Partition parse_partition(std::string_view text);
std::string format_partition(const Partition& p);

nlohmann::json to_json(const Overpartition& p);
Overpartition overpartition_from_json(const nlohmann::json& j);

}  // namespace ggkit
