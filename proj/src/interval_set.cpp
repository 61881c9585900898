#include "bundle/interval_set.hpp"

#include <algorithm>

namespace bundle {

IntervalSet::IntervalSet(std::vector<Interval> intervals)
    : intervals_(std::move(intervals)) {
  for (size_t i = 0; i < intervals_.size(); ++i) {
    if (!(intervals_[i].lo < intervals_[i].hi))
      throw std::invalid_argument("IntervalSet: empty or inverted interval");
    if (i > 0 && intervals_[i].lo < intervals_[i - 1].hi)
      throw std::invalid_argument("IntervalSet: intervals overlap or unsorted");
  }
}

IntervalSet IntervalSet::unit_cells(int lo, int hi) {
  std::vector<Interval> iv;
  for (int t = lo; t < hi; ++t) iv.push_back({Rat(t), Rat(t + 1)});
  return IntervalSet(std::move(iv));
}

Rat IntervalSet::measure() const {
  Rat total(0);
  for (const Interval& iv : intervals_) total = total + (iv.hi - iv.lo);
  return total;
}

IntervalSet IntervalSet::merged() const {
  std::vector<Interval> out;
  for (const Interval& iv : intervals_) {
    if (!out.empty() && out.back().hi == iv.lo)
      out.back().hi = iv.hi;
    else
      out.push_back(iv);
  }
  return IntervalSet(std::move(out));
}

std::string IntervalSet::dump() const {
  std::string out;
  for (const Interval& iv : intervals_) {
    out += std::to_string(iv.lo.num()) + "/" + std::to_string(iv.lo.den());
    out += " .. ";
    out += std::to_string(iv.hi.num()) + "/" + std::to_string(iv.hi.den());
    out += "\n";
  }
  return out;
}

Rat intersect_measure(const IntervalSet& a, const IntervalSet& b) {
  Rat total(0);
  size_t i = 0, j = 0;
  const auto& av = a.intervals();
  const auto& bv = b.intervals();
  while (i < av.size() && j < bv.size()) {
    const Rat& lo = av[i].lo < bv[j].lo ? bv[j].lo : av[i].lo;
    const Rat& hi = av[i].hi < bv[j].hi ? av[i].hi : bv[j].hi;
    if (lo < hi) total = total + (hi - lo);
    if (av[i].hi < bv[j].hi)
      ++i;
    else
      ++j;
  }
  return total;
}

bool sets_overlap(const IntervalSet& a, const IntervalSet& b) {
  size_t i = 0, j = 0;
  const auto& av = a.intervals();
  const auto& bv = b.intervals();
  while (i < av.size() && j < bv.size()) {
    const Rat& lo = av[i].lo < bv[j].lo ? bv[j].lo : av[i].lo;
    const Rat& hi = av[i].hi < bv[j].hi ? av[i].hi : bv[j].hi;
    if (lo < hi) return true;
    if (av[i].hi < bv[j].hi)
      ++i;
    else
      ++j;
  }
  return false;
}

int grid_level(const IntervalSet& set, int grid_base, int max_level) {
  if (grid_base < 2) throw std::invalid_argument("grid_level: base must be >= 2");
  if (set.empty())
    throw std::invalid_argument("grid_level: empty set has no level");
  const Rat base((std::int64_t)grid_base);
  // den_n = D^{N+1}, grown incrementally while it fits. Once every
  // endpoint is integral on the grid and some subinterval already spans
  // more than D cells, deeper levels only widen it: fail permanently.
  Rat den(1);
  try {
    for (int n = 0; n <= max_level; ++n) {
      if (den.num() > INT64_MAX / (64 * (std::int64_t)grid_base))
        throw GridError("grid_level: set not representable within 64-bit grids");
      den = den * base;
      bool ok = true, integral = true, overwide = false;
      for (const Interval& iv : set.intervals()) {
        Rat q_scaled = iv.lo * den;  // must equal qD for integer q
        Rat r_scaled = (iv.hi - iv.lo) * den;
        if (!q_scaled.is_integer() || !r_scaled.is_integer()) {
          ok = false;
          integral = false;
          break;
        }
        if (r_scaled.num() > grid_base) overwide = true;
        if (q_scaled.num() % grid_base != 0 || r_scaled.num() < 1 ||
            r_scaled.num() > grid_base)
          ok = false;
      }
      if (ok) return n;
      if (integral && overwide)
        throw GridError("grid_level: set not grid-representable");
    }
  } catch (const std::overflow_error&) {
    throw GridError("grid_level: set not representable within 64-bit grids");
  }
  throw GridError("grid_level: set not grid-representable up to level " +
                  std::to_string(max_level));
}

}  // namespace bundle
