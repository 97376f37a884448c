#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "ggkit/series.hpp"

namespace testing {

// Series from a dense coefficient list starting at `min`.
inline ggkit::LaurentSeries dense(long min, long T, std::vector<long> c) {
  std::vector<ggkit::Rational> r(c.begin(), c.end());
  r.resize(T - min + 1, 0);
  return ggkit::LaurentSeries(min, T, r);
}

inline bool same(const ggkit::LaurentSeries& a, const ggkit::LaurentSeries& b) { return ggkit::compare(a, b).equal; }

}  // namespace testing
