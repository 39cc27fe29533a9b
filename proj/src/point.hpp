#pragma once

#include <cmath>
#include <cstdint>

namespace lorcomp {

// An event in chart coordinates. Convention everywhere: first coordinate is
// spatial, second is time; the time separation formulas read .t as time.
// `station` indexes the metric factor of a taxicab product and is -1 for
// every other space kind.
struct Point {
  double x = 0.0;
  double t = 0.0;
  int32_t station = -1;
};

inline bool same_point(const Point& p, const Point& q) {
  return p.x == q.x && p.t == q.t && p.station == q.station;
}

inline bool finite_point(const Point& p) {
  return std::isfinite(p.x) && std::isfinite(p.t);
}

// Ordered classification of a pair of events.
enum class Relation { Equal, Chronological, CausalOnly, Unrelated };

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Equal: return "equal";
    case Relation::Chronological: return "chronological";
    case Relation::CausalOnly: return "causal_only";
    case Relation::Unrelated: return "unrelated";
  }
  return "?";
}

// Coordinate box in the instance chart.
struct Region {
  double x0 = -1.0, x1 = 1.0;
  double t0 = 0.0, t1 = 2.0;
  bool valid() const {
    return std::isfinite(x0) && std::isfinite(x1) && std::isfinite(t0) &&
           std::isfinite(t1) && x0 < x1 && t0 < t1;
  }
};

}  // namespace lorcomp
