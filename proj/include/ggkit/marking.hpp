#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ggkit/partition.hpp"

namespace ggkit {

struct MarkedOverpartition {
  Overpartition base;
  std::vector<int> marks;  // marks[j] belongs to base.parts[j]

  int max_mark() const;
  friend bool operator==(const MarkedOverpartition&, const MarkedOverpartition&) = default;
};

struct MarkedPartition {
  Partition base;
  std::vector<int> marks;
  friend bool operator==(const MarkedPartition&, const MarkedPartition&) = default;
};

// Marks for an already sorted part list.
std::vector<int> gg_marks(const std::vector<OverPart>& parts);
MarkedOverpartition gg_mark(const Overpartition& p);

std::vector<int> gordon_marks(const std::vector<int>& parts);
MarkedPartition gordon_mark(const Partition& p);

// N_r for r = 1..max mark (no trailing zeros).
std::vector<int> row_counts(const std::vector<int>& marks);
inline std::vector<int> row_counts(const MarkedOverpartition& m) { return row_counts(m.marks); }
inline std::vector<int> row_counts(const MarkedPartition& m) { return row_counts(m.marks); }

// Positions in base.parts of the r-marked parts, in order.
std::vector<int> row_indices(const MarkedOverpartition& m, int r);
std::vector<OverPart> sub_overpartition(const MarkedOverpartition& m, int r);

// Plain odd or overlined even: the kind the first-row bijections remove.
inline bool h_kind(const OverPart& x) { return x.odd() != x.overlined; }

enum class PartType { O, E };
// j is 1-based in the first row. Throws PartitionError when m has an
// overlined even or plain odd part, or j is out of range.
PartType part_type(const MarkedOverpartition& m, int j);

// Result of a membership test; `failed` names the first violated clause.
struct ClassCheck {
  bool ok = true;
  std::string failed;
  explicit operator bool() const { return ok; }
  static ClassCheck fail(std::string why) { return {false, std::move(why)}; }
};

enum class RowClass { F, G, E };

// Membership in the class with first-row profile `profile` (length k-1) and
// parameter i. F needs a nonempty object whose smallest part is overlined odd
// or plain even; G additionally forbids overlined even and plain odd parts;
// E also forbids overlined odd parts. The empty object is accepted for G and
// E at the all-zero profile.
ClassCheck check_row_class(const MarkedOverpartition& m, RowClass c, const std::vector<int>& profile, int i);
// Partitions with at most k-1 Gordon rows, f_1 <= i-1 and the given profile.
ClassCheck check_gordon_class(const MarkedPartition& m, const std::vector<int>& profile, int i);

struct FClassReport {
  int p = 0;
  bool in_f = false;      // row1[p] removable, tail not
  bool in_f_bar = false;  // row1[p] kept, row1[p+1] removable, rest kept
  bool in_f_arrow = false;
  int sub = 0;      // 1..4 when in_f
  int sub_bar = 0;  // 1..4 when in_f_bar
};
// p is 1-based, 1 <= p <= N_1.
FClassReport classify_F(const MarkedOverpartition& m, int p);

struct GClassReport {
  int p = 0;
  bool in_g = false;
  bool in_g_bar = false;
  bool in_g_arrow = false;
};
GClassReport classify_G(const MarkedOverpartition& m, int p);

// Rows drawn bottom (mark 1) to top, one column per part.
std::string render_rows(const MarkedOverpartition& m);
nlohmann::json to_json(const MarkedOverpartition& m);

}  // namespace ggkit
