#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "models.hpp"
#include "point.hpp"
#include "rng.hpp"

namespace lorcomp {

// Future-directed causal polyline: consecutive vertices causally related in
// the owning space.
struct Polyline {
  std::vector<Point> pts;
};

enum class MaximizerVariant { Canonical, Staircase };
const char* variant_name(MaximizerVariant v);
MaximizerVariant variant_from_name(const std::string& name);

// A Lorentzian pre-length space instance. Immutable after construction;
// every operation is a pure function, safe for concurrent use.
class Space {
 public:
  virtual ~Space() = default;

  virtual std::string kind() const = 0;
  virtual Relation relate(const Point& p, const Point& q) const = 0;
  // Time separation. >= 0, positive exactly for chronological pairs.
  virtual double tau(const Point& p, const Point& q) const = 0;
  // A maximal future causal curve from p to q (p <= q required).
  virtual Polyline maximizer(const Point& p, const Point& q,
                             MaximizerVariant v = MaximizerVariant::Canonical) const = 0;
  virtual int maximizer_variant_count() const { return 1; }
  // Point at parameter fraction `frac` on the canonical leg p -> q. Only for
  // spaces with continuous interpolation.
  virtual Point interpolate(const Point& p, const Point& q, double frac) const;
  virtual bool supports_interpolation() const { return true; }
  // Whether tau is homogeneous under chart scaling about the origin.
  virtual bool scalable() const { return false; }
  virtual Region default_region() const { return Region{}; }
  // Random point of the carrier inside the region. Uniform chart draw by
  // default; discrete spaces draw from their point table.
  virtual Point sample_point(const Region& region, Rng& rng) const;
  // Canonical config echo; load_space(descriptor()) rebuilds the instance.
  virtual nlohmann::json descriptor() const = 0;
};

using SpacePtr = std::unique_ptr<const Space>;

// Builds an instance from a JSON config document. "type" selects the kind:
// minkowski | taxicab | model (requires nonzero "k") | tabulated |
// taxicab_product. Validates structural invariants on load; a violated
// invariant reports its first witness.
SpacePtr load_space(const nlohmann::json& config);
SpacePtr load_space_text(const std::string& config_text);
// Presets: "minkowski", "taxicab", "ds:<k>", "ads:<k>".
SpacePtr load_preset(const std::string& preset);

// tau-length estimates of a causal polyline under dyadic refinement of the
// vertex partition. Estimates are non-increasing in depth; refinement is a
// no-op for spaces without interpolation.
struct TauLengthResult {
  std::vector<double> estimates;  // index = refinement depth
  double value = 0.0;             // depth-limit estimate
};
TauLengthResult tau_length(const Space& space, const Polyline& curve,
                           int depth = 10);

// Sum of tau over consecutive vertices (the depth-0 estimate).
double polyline_tau(const Space& space, const Polyline& curve);

// Point at tau-offset s from the start of the curve. In spaces without
// interpolation the point snaps to the nearest vertex and `snap` records
// the offset error; otherwise snap = 0.
struct CurvePoint {
  Point p;
  double snap = 0.0;
};
CurvePoint point_at_tau(const Space& space, const Polyline& curve, double s);

// Prefix of the curve up to tau-offset s (inclusive), future-directed.
Polyline curve_prefix(const Space& space, const Polyline& curve, double s);
// Suffix from tau-offset s to the end, future-directed.
Polyline curve_suffix(const Space& space, const Polyline& curve, double s);

}  // namespace lorcomp
