#include "ggkit/partition.hpp"

#include <cctype>

namespace ggkit {

Overpartition::Overpartition(std::vector<OverPart> p) : parts(std::move(p)) {
  std::stable_sort(parts.begin(), parts.end());
  validate(*this);
}

void validate(const Overpartition& p) {
  for (size_t j = 0; j < p.parts.size(); ++j) {
    if (p.parts[j].size < 1) throw PartitionError("part sizes must be positive");
    if (j > 0 && p.parts[j] < p.parts[j - 1]) throw PartitionError("parts out of order");
    if (j > 0 && p.parts[j].overlined && p.parts[j - 1] == p.parts[j])
      throw PartitionError("size " + std::to_string(p.parts[j].size) + " overlined twice");
  }
}

int Overpartition::weight() const {
  int w = 0;
  for (auto& q : parts) w += q.size;
  return w;
}

int Partition::weight() const {
  int w = 0;
  for (int q : parts) w += q;
  return w;
}

FrequencyTable::FrequencyTable(const std::vector<OverPart>& parts) {
  int mx = 0;
  for (auto& q : parts) mx = std::max(mx, q.size);
  plain_.assign(mx + 1, 0);
  over_.assign(mx + 1, 0);
  for (auto& q : parts) (q.overlined ? over_ : plain_)[q.size]++;
}

FrequencyTable::FrequencyTable(const std::vector<int>& parts) {
  int mx = 0;
  for (int q : parts) mx = std::max(mx, q);
  plain_.assign(mx + 1, 0);
  over_.assign(mx + 1, 0);
  for (int q : parts) plain_[q]++;
}

std::string family_name(Family f) {
  static const char* names[] = {"O", "P", "C", "D", "A", "B", "F", "H"};
  return names[static_cast<int>(f)];
}

Family family_from_string(std::string_view s) {
  for (int f = 0; f < 8; ++f)
    if (family_name(static_cast<Family>(f)) == s) return static_cast<Family>(f);
  throw PartitionError("unknown family '" + std::string(s) + "'");
}

bool family_on_overpartitions(Family f) {
  return f == Family::O || f == Family::P || f == Family::F || f == Family::H;
}

FamilySpec::FamilySpec(Family f, int k_, int i_) : family(f), k(k_), i(i_) {
  if (!(k >= i && i >= 1)) throw PartitionError("family parameters need k >= i >= 1");
}

namespace {

bool o_family(const FrequencyTable& f, int k, int i) {
  if (f.over(1) + f.plain(2) > i - 1) return false;
  int top = f.max_size();
  for (int t = 1; 2 * t <= top; ++t)
    if (f.over(2 * t) + f.plain(2 * t) + f.over(2 * t + 1) + f.plain(2 * t + 2) > k - 1) return false;
  for (int t = 0; 2 * t + 1 <= top; ++t)
    if (f.plain(2 * t + 1) >= 1 && f.plain(2 * t + 2) > k - 2) return false;
  return true;
}

bool p_family(const FrequencyTable& f, int k, int i) {
  int top = f.max_size();
  if (i == k) {
    for (int s = 2 * k - 1; s <= top; s += 2 * k - 1)
      if (f.plain(s) + f.over(s) > 0) return false;
    return true;
  }
  int m = 4 * k - 2;
  for (int s = 1; s <= top; ++s) {
    if (f.plain(s) == 0) continue;
    int r = s % m;
    if (r == 0 || r == 2 * i - 1 || r == m - 2 * i + 1) return false;
  }
  return true;
}

bool c_family(const FrequencyTable& f, int k, int i) {
  if (f.plain(1) + f.plain(2) > i - 1) return false;
  int top = f.max_size();
  for (int t = 0; 2 * t + 1 <= top; ++t)
    if (f.plain(2 * t + 1) > 1) return false;
  for (int t = 1; 2 * t <= top; ++t)
    if (f.plain(2 * t) + f.plain(2 * t + 1) + f.plain(2 * t + 2) > k - 1) return false;
  return true;
}

bool d_family(const FrequencyTable& f, int k, int i) {
  for (int s = 1; s <= f.max_size(); ++s) {
    if (f.plain(s) == 0) continue;
    int r = s % (4 * k);
    if (s % 4 == 2 || r == 0 || r == 2 * i - 1 || r == 4 * k - 2 * i + 1) return false;
  }
  return true;
}

bool b_family(const FrequencyTable& f, int k, int i) {
  if (f.plain(1) > i - 1) return false;
  for (int t = 1; t <= f.max_size(); ++t)
    if (f.plain(t) + f.plain(t + 1) > k - 1) return false;
  return true;
}

bool a_family(const FrequencyTable& f, int k, int i) {
  for (int s = 1; s <= f.max_size(); ++s) {
    if (f.plain(s) == 0) continue;
    int r = s % (2 * k + 1);
    if (r == 0 || r == i || r == 2 * k + 1 - i) return false;
  }
  return true;
}

bool f_kind(const OverPart& q) { return q.overlined == q.odd(); }

}  // namespace

bool smallest_part_is_f_kind(const Overpartition& p) { return !p.empty() && f_kind(p.parts.front()); }

bool family_holds(const FrequencyTable& f, const FamilySpec& spec, const OverPart* smallest) {
  switch (spec.family) {
    case Family::O: return o_family(f, spec.k, spec.i);
    case Family::P: return p_family(f, spec.k, spec.i);
    case Family::C: return c_family(f, spec.k, spec.i);
    case Family::D: return d_family(f, spec.k, spec.i);
    case Family::A: return a_family(f, spec.k, spec.i);
    case Family::B: return b_family(f, spec.k, spec.i);
    case Family::F: return smallest && f_kind(*smallest) && o_family(f, spec.k, spec.i);
    case Family::H: return smallest && !f_kind(*smallest) && o_family(f, spec.k, spec.i);
  }
  return false;
}

bool satisfies_family(const Overpartition& p, const FamilySpec& spec) {
  if (!family_on_overpartitions(spec.family))
    throw PartitionError("family " + family_name(spec.family) + " is defined on ordinary partitions");
  return family_holds(FrequencyTable(p), spec, p.empty() ? nullptr : &p.parts.front());
}

bool satisfies_family(const Partition& p, const FamilySpec& spec) {
  if (family_on_overpartitions(spec.family))
    throw PartitionError("family " + family_name(spec.family) + " is defined on overpartitions");
  return family_holds(FrequencyTable(p), spec, nullptr);
}

namespace {

// DFS over nondecreasing part sequences. `exact` restricts callbacks to
// sequences of total weight n.
void overpart_dfs(std::vector<OverPart>& cur, int remaining, int weight, bool exact, int min_key,
                  const std::function<void(const std::vector<OverPart>&, int)>& f) {
  if (!exact || remaining == 0) f(cur, weight);
  for (int key = min_key; (key + 1) / 2 <= remaining; ++key) {
    OverPart q{(key + 1) / 2, key % 2 == 1};
    // an overlined part must be the first of its size
    if (q.overlined && !cur.empty() && cur.back().size == q.size) continue;
    cur.push_back(q);
    // after an overlined s the next part may be s (plain); after plain s, also s
    int next_key = q.overlined ? key + 1 : key;
    overpart_dfs(cur, remaining - q.size, weight + q.size, exact, next_key, f);
    cur.pop_back();
  }
}

void part_dfs(std::vector<int>& cur, int remaining, int weight, bool exact, int min_part,
              const std::function<void(const std::vector<int>&, int)>& f) {
  if (!exact || remaining == 0) f(cur, weight);
  for (int s = min_part; s <= remaining; ++s) {
    cur.push_back(s);
    part_dfs(cur, remaining - s, weight + s, exact, s, f);
    cur.pop_back();
  }
}

}  // namespace

void for_each_overpartition(int n, const std::function<void(const std::vector<OverPart>&)>& f) {
  std::vector<OverPart> cur;
  overpart_dfs(cur, n, 0, true, 1, [&](const std::vector<OverPart>& v, int) { f(v); });
}

void for_each_overpartition_upto(int n, const std::function<void(const std::vector<OverPart>&, int)>& f) {
  std::vector<OverPart> cur;
  overpart_dfs(cur, n, 0, false, 1, f);
}

void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur;
  part_dfs(cur, n, 0, true, 1, [&](const std::vector<int>& v, int) { f(v); });
}

void for_each_partition_upto(int n, const std::function<void(const std::vector<int>&, int)>& f) {
  std::vector<int> cur;
  part_dfs(cur, n, 0, false, 1, f);
}

std::vector<Overpartition> enumerate_overpartitions(int n) {
  std::vector<Overpartition> out;
  for_each_overpartition(n, [&](const std::vector<OverPart>& v) {
    Overpartition p;
    p.parts = v;
    out.push_back(std::move(p));
  });
  return out;
}

std::vector<Partition> enumerate_partitions(int n) {
  std::vector<Partition> out;
  for_each_partition(n, [&](const std::vector<int>& v) { out.push_back(Partition{v}); });
  return out;
}

std::map<int, long> count_family_bivariate(const FamilySpec& spec, int n) {
  std::map<int, long> out;
  if (family_on_overpartitions(spec.family)) {
    for_each_overpartition(n, [&](const std::vector<OverPart>& v) {
      if (family_holds(FrequencyTable(v), spec, v.empty() ? nullptr : &v.front()))
        out[static_cast<int>(v.size())]++;
    });
  } else {
    for_each_partition(n, [&](const std::vector<int>& v) {
      if (family_holds(FrequencyTable(v), spec, nullptr)) out[static_cast<int>(v.size())]++;
    });
  }
  return out;
}

long count_family(const FamilySpec& spec, int n) {
  long c = 0;
  for (auto& [m, x] : count_family_bivariate(spec, n)) c += x;
  return c;
}

namespace {

std::string trim(std::string_view s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> out;
  std::string t = trim(text);
  if (t.empty()) return out;
  size_t start = 0;
  while (true) {
    size_t c = t.find(',', start);
    out.push_back(trim(std::string_view(t).substr(start, c == std::string::npos ? std::string::npos : c - start)));
    if (c == std::string::npos) break;
    start = c + 1;
  }
  return out;
}

int parse_size(const std::string& digits, const std::string& token) {
  if (digits.empty() || digits.size() > 9) throw PartitionError("malformed part '" + token + "'");
  for (char ch : digits)
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw PartitionError("malformed part '" + token + "'");
  int v = std::stoi(digits);
  if (v < 1) throw PartitionError("part sizes must be positive: '" + token + "'");
  return v;
}

}  // namespace

Overpartition parse_overpartition(std::string_view text) {
  std::vector<OverPart> parts;
  for (auto& tok : split_commas(text)) {
    std::string digits = tok;
    bool over = false;
    // trailing "~", or combining overline U+0305 / macron U+0304 after the digits
    if (!digits.empty() && digits.back() == '~') {
      over = true;
      digits.pop_back();
    } else if (digits.size() >= 2 && static_cast<unsigned char>(digits[digits.size() - 2]) == 0xCC &&
               (static_cast<unsigned char>(digits.back()) == 0x85 ||
                static_cast<unsigned char>(digits.back()) == 0x84)) {
      over = true;
      digits.resize(digits.size() - 2);
    }
    parts.push_back({parse_size(trim(digits), tok), over});
  }
  return Overpartition(std::move(parts));
}

std::string format_overpartition(const Overpartition& p) {
  std::string s;
  for (size_t j = 0; j < p.parts.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(p.parts[j].size);
    if (p.parts[j].overlined) s += "~";
  }
  return s;
}

Partition parse_partition(std::string_view text) {
  Partition p;
  for (auto& tok : split_commas(text)) p.parts.push_back(parse_size(tok, tok));
  std::sort(p.parts.begin(), p.parts.end());
  return p;
}

std::string format_partition(const Partition& p) {
  std::string s;
  for (size_t j = 0; j < p.parts.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(p.parts[j]);
  }
  return s;
}

nlohmann::json to_json(const Overpartition& p) {
  nlohmann::json parts = nlohmann::json::array();
  for (auto& q : p.parts) parts.push_back({{"size", q.size}, {"overlined", q.overlined}});
  return {{"parts", parts}};
}

Overpartition overpartition_from_json(const nlohmann::json& j) {
  std::vector<OverPart> parts;
  for (auto& q : j.at("parts")) parts.push_back({q.at("size").get<int>(), q.at("overlined").get<bool>()});
  return Overpartition(std::move(parts));
}

}  // namespace ggkit
