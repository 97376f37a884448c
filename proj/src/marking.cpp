#include "ggkit/marking.hpp"

#include <sstream>

namespace ggkit {

namespace {

int least_unused(const std::vector<char>& used) {
  for (size_t m = 1; m < used.size(); ++m)
    if (!used[m]) return static_cast<int>(m);
  return static_cast<int>(used.size());
}

void mark_used(std::vector<char>& used, int m) {
  if (m >= static_cast<int>(used.size())) used.resize(m + 1, 0);
  used[m] = 1;
}

}  // namespace

int MarkedOverpartition::max_mark() const {
  int best = 0;
  for (int m : marks) best = std::max(best, m);
  return best;
}

std::vector<int> gg_marks(const std::vector<OverPart>& parts) {
  std::vector<int> marks(parts.size(), 0);
  FrequencyTable freq(parts);
  std::vector<char> used;
  for (size_t p = 0; p < parts.size(); ++p) {
    const OverPart& x = parts[p];
    if (p == 0 || h_kind(x)) {
      marks[p] = 1;
      continue;
    }
    used.assign(2, 0);
    if (x.odd()) {
      // overlined odd: blocked only by parts one smaller
      for (size_t j = p; j-- > 0 && parts[j].size >= x.size - 1;)
        if (parts[j].size == x.size - 1) mark_used(used, marks[j]);
      marks[p] = least_unused(used);
      continue;
    }
    int g = 0;
    for (size_t j = p; j-- > 0 && parts[j].size >= x.size - 2;) {
      mark_used(used, marks[j]);
      if (parts[j].size == x.size - 2 && (g == 0 || marks[j] < g)) g = marks[j];
    }
    int f = least_unused(used);
    int s = x.size;
    bool take_g = g >= 2 && marks[p - 1] == g - 1 && (freq.plain(s - 1) > 0 || freq.over(s) > 0) &&
                  freq.over(s - 1) == 0;
    marks[p] = take_g ? g : f;
  }
  return marks;
}

MarkedOverpartition gg_mark(const Overpartition& p) { return {p, gg_marks(p.parts)}; }

std::vector<int> gordon_marks(const std::vector<int>& parts) {
  std::vector<int> marks(parts.size(), 0);
  std::vector<char> used;
  for (size_t p = 0; p < parts.size(); ++p) {
    used.assign(2, 0);
    for (size_t j = p; j-- > 0 && parts[j] >= parts[p] - 1;) mark_used(used, marks[j]);
    marks[p] = least_unused(used);
  }
  return marks;
}

MarkedPartition gordon_mark(const Partition& p) { return {p, gordon_marks(p.parts)}; }

std::vector<int> row_counts(const std::vector<int>& marks) {
  std::vector<int> n;
  for (int m : marks) {
    if (m > static_cast<int>(n.size())) n.resize(m, 0);
    ++n[m - 1];
  }
  return n;
}

std::vector<int> row_indices(const MarkedOverpartition& m, int r) {
  std::vector<int> idx;
  for (size_t j = 0; j < m.marks.size(); ++j)
    if (m.marks[j] == r) idx.push_back(static_cast<int>(j));
  return idx;
}

std::vector<OverPart> sub_overpartition(const MarkedOverpartition& m, int r) {
  std::vector<OverPart> row;
  for (int j : row_indices(m, r)) row.push_back(m.base.parts[j]);
  return row;
}

namespace {

bool has_overlined_odd_above(const FrequencyTable& f, const OverPart& x) {
  return x.overlined ? false : f.over(x.size + 1) > 0;
}

PartType type_of(const FrequencyTable& f, const OverPart& x) {
  if (x.overlined && x.odd()) return PartType::O;
  return has_overlined_odd_above(f, x) ? PartType::O : PartType::E;
}

bool no_removable_parts(const Overpartition& p) {
  for (auto& x : p.parts)
    if (h_kind(x)) return false;
  return true;
}

std::vector<int> padded(std::vector<int> v, size_t len) {
  if (v.size() < len) v.resize(len, 0);
  return v;
}

std::string profile_text(const std::vector<int>& v) {
  std::string s;
  for (size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
  return "(" + s + ")";
}

}  // namespace

PartType part_type(const MarkedOverpartition& m, int j) {
  if (!no_removable_parts(m.base))
    throw PartitionError("part type needs an overpartition without overlined even or plain odd parts");
  auto row = sub_overpartition(m, 1);
  if (j < 1 || j > static_cast<int>(row.size()))
    throw PartitionError("first-row index " + std::to_string(j) + " out of range");
  return type_of(FrequencyTable(m.base), row[j - 1]);
}

ClassCheck check_row_class(const MarkedOverpartition& m, RowClass c, const std::vector<int>& profile, int i) {
  const auto& parts = m.base.parts;
  int k = static_cast<int>(profile.size()) + 1;
  if (i < 1 || i > k) return ClassCheck::fail("need 1 <= i <= k");
  for (size_t r = 1; r < profile.size(); ++r)
    if (profile[r] > profile[r - 1] || profile[r] < 0) return ClassCheck::fail("profile not nonincreasing");
  if (parts.empty()) {
    if (c == RowClass::F) return ClassCheck::fail("empty overpartition");
    for (int n : profile)
      if (n) return ClassCheck::fail("row profile mismatch");
    return {};
  }
  if (h_kind(parts.front())) return ClassCheck::fail("smallest part is plain odd or overlined even");
  FrequencyTable f(m.base);
  if (f.over(1) + f.plain(2) > i - 1) return ClassCheck::fail("too many parts 1~ and 2 for i");
  if (m.max_mark() > k - 1) return ClassCheck::fail("more than k-1 rows");
  if (padded(row_counts(m), profile.size()) != profile)
    return ClassCheck::fail("row profile " + profile_text(row_counts(m)) + " differs from " + profile_text(profile));
  if (c == RowClass::F) return {};
  if (!no_removable_parts(m.base)) return ClassCheck::fail("has an overlined even or plain odd part");
  if (c == RowClass::G) return {};
  for (auto& x : parts)
    if (x.overlined) return ClassCheck::fail("has an overlined odd part");
  return {};
}

ClassCheck check_gordon_class(const MarkedPartition& m, const std::vector<int>& profile, int i) {
  int k = static_cast<int>(profile.size()) + 1;
  if (i < 1 || i > k) return ClassCheck::fail("need 1 <= i <= k");
  int ones = 0;
  int top = 0;
  for (size_t j = 0; j < m.marks.size(); ++j) {
    if (m.base.parts[j] == 1) ++ones;
    top = std::max(top, m.marks[j]);
  }
  if (ones > i - 1) return ClassCheck::fail("too many parts 1 for i");
  if (top > k - 1) return ClassCheck::fail("more than k-1 rows");
  if (padded(row_counts(m), profile.size()) != profile) return ClassCheck::fail("row profile mismatch");
  return {};
}

FClassReport classify_F(const MarkedOverpartition& m, int p) {
  auto row = sub_overpartition(m, 1);
  int n1 = static_cast<int>(row.size());
  if (p < 1 || p > n1) throw PartitionError("position " + std::to_string(p) + " outside [1, N_1]");
  FrequencyTable f(m.base);
  auto kept_from = [&](int from) {
    for (int j = from; j <= n1; ++j)
      if (h_kind(row[j - 1])) return false;
    return true;
  };
  FClassReport rep;
  rep.p = p;
  const OverPart& x = row[p - 1];
  int s = x.size;
  rep.in_f_arrow = kept_from(p);
  rep.in_f = h_kind(x) && kept_from(p + 1);
  rep.in_f_bar = !h_kind(x) && (p == n1 || (h_kind(row[p]) && kept_from(p + 2)));

  if (rep.in_f) {
    int prev = p >= 2 ? row[p - 2].size : 0;
    if (!x.overlined) {
      bool second = f.plain(s + 1) > 0 && prev <= s - 2;
      rep.sub = second ? 2 : 1;
    } else {
      rep.sub = f.over(s + 1) > 0 ? 4 : 3;
    }
  }
  if (rep.in_f_bar) {
    const long inf = 1L << 40;
    long next = p < n1 ? row[p].size : inf;
    if (x.overlined) {
      // overlined odd
      bool fourth = f.plain(s + 1) > 0 && next >= s + 2;
      rep.sub_bar = fourth ? 4 : 1;
    } else if (f.over(s + 1) == 0) {
      rep.sub_bar = 3;
    } else {
      bool fourth = f.plain(s + 2) > 0 && next > s + 2;
      rep.sub_bar = fourth ? 4 : 2;
    }
  }
  return rep;
}

GClassReport classify_G(const MarkedOverpartition& m, int p) {
  auto row = sub_overpartition(m, 1);
  int n1 = static_cast<int>(row.size());
  if (p < 1 || p > n1) throw PartitionError("position " + std::to_string(p) + " outside [1, N_1]");
  if (!no_removable_parts(m.base))
    throw PartitionError("G-class positions need an overpartition without overlined even or plain odd parts");
  FrequencyTable f(m.base);
  auto is_o = [&](int j) { return type_of(f, row[j - 1]) == PartType::O; };
  auto e_from = [&](int from) {
    for (int j = from; j <= n1; ++j)
      if (is_o(j)) return false;
    return true;
  };
  GClassReport rep;
  rep.p = p;
  rep.in_g = is_o(p) && e_from(p + 1);
  rep.in_g_bar = !is_o(p) && (p == n1 || (is_o(p + 1) && e_from(p + 2)));
  rep.in_g_arrow = e_from(p);
  return rep;
}

std::string render_rows(const MarkedOverpartition& m) {
  int top = m.max_mark();
  std::vector<std::string> cells;
  size_t width = 1;
  for (auto& x : m.base.parts) {
    cells.push_back(std::to_string(x.size) + (x.overlined ? "~" : ""));
    width = std::max(width, cells.back().size());
  }
  std::ostringstream out;
  for (int r = top; r >= 1; --r) {
    std::string line;
    for (size_t j = 0; j < cells.size(); ++j) {
      std::string c = m.marks[j] == r ? cells[j] : "";
      line += std::string(width + 1 - c.size(), ' ') + c;
    }
    out << line << "   | " << r << "\n";
  }
  return out.str();
}

nlohmann::json to_json(const MarkedOverpartition& m) {
  nlohmann::json j = to_json(m.base);
  j["marks"] = m.marks;
  j["rows"] = row_counts(m);
  return j;
}

}  // namespace ggkit
