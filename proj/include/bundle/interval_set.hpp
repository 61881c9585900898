#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bundle/rational.hpp"

namespace bundle {

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Interval {
  Rat lo, hi;
  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
  bool operator<(const Interval& o) const {
    return lo != o.lo ? lo < o.lo : hi < o.hi;
  }
};

// Finite union of disjoint open intervals with exact rational endpoints,
// kept sorted. Adjacent intervals may share an endpoint: the represented
// set excludes boundary points, so (0,1),(1,2) is not the same set as
// (0,2). Immutable once built.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> intervals);

  static IntervalSet unit_cells(int lo, int hi);  // (lo,lo+1) ... (hi-1,hi)

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  size_t size() const { return intervals_.size(); }

  Rat measure() const;

  // Merge abutting intervals; changes the set only by finitely many
  // points. For measure bookkeeping only, never as an f-subdivision base.
  IntervalSet merged() const;

  bool operator==(const IntervalSet& o) const { return intervals_ == o.intervals_; }
  bool operator<(const IntervalSet& o) const { return intervals_ < o.intervals_; }

  // One interval per line as exact fractions "a/b .. c/d".
  std::string dump() const;

 private:
  std::vector<Interval> intervals_;
};

Rat intersect_measure(const IntervalSet& a, const IntervalSet& b);

// True if the two sets share a set of positive measure.
bool sets_overlap(const IntervalSet& a, const IntervalSet& b);

// Least N such that every maximal subinterval equals
// (qD/D^{N+1}, (qD+r)/D^{N+1}) with integer q >= 0 and r in 1..D.
// Throws GridError for sets not representable on any grid up to
// max_level (a construction bug when it happens during a build).
int grid_level(const IntervalSet& set, int grid_base, int max_level = 64);

}  // namespace bundle
