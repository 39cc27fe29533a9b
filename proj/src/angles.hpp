#pragma once

#include <limits>
#include <vector>

#include "spaces.hpp"

namespace lorcomp {

// A timelike geodesic triangle in an instance space: vertices x << y << z
// with maximal sides alpha (x->y), beta (y->z), gamma (x->z) and side
// lengths (a, b, c) = (tau(x,y), tau(y,z), tau(x,z)).
struct GeodesicTriangle {
  const Space* space = nullptr;
  Point x, y, z;
  Polyline alpha, beta, gamma;
  double a = 0.0, b = 0.0, c = 0.0;
  MaximizerVariant variant = MaximizerVariant::Canonical;
};

GeodesicTriangle make_geodesic_triangle(const Space& space, const Point& x,
                                        const Point& y, const Point& z,
                                        MaximizerVariant v = MaximizerVariant::Canonical);

enum class TriVertex { X, Y, Z };
const char* tri_vertex_name(TriVertex v);
TriVertex tri_vertex_from_name(const std::string& name);

// Comparison angle of the full triangle at a vertex: the non-normalized
// angle of the comparison triangle in the curvature-k model space.
double comparison_angle(const GeodesicTriangle& tri, TriVertex v, double k);

// Single evaluation of the angle comparison function theta at scales (s, t):
// the comparison angle of the sub-triangle cut at tau-offsets s and t from
// the vertex, divided by s*t. Negative at x and z, positive at y.
enum class ThetaStatus { Ok, NoChronology, SizeBoundsFail };
struct ThetaValue {
  ThetaStatus status = ThetaStatus::NoChronology;
  double value = std::numeric_limits<double>::quiet_NaN();
  double opposite = 0.0;  // tau between the two sub-points
};
ThetaValue theta(const GeodesicTriangle& tri, TriVertex v, double s, double t,
                 double k);

struct AngleSchedule {
  double s0 = 0.0;  // <= 0: min(side)/4
  double t0 = 0.0;  // <= 0: min(side)/4
  double rho = 0.5;
  double tol = 1e-6;  // relative convergence tolerance
  int max_steps = 40;
};

// A normalized-angle estimate is a bracket plus a status, never a bare
// number: the limit can fail to exist and divergence is data.
enum class EstimateStatus { Converged, Diverging, ChronologyExhausted, NoConvergence };
const char* estimate_status_name(EstimateStatus s);

struct ThetaSample {
  double s = 0.0, t = 0.0, value = 0.0;
};

struct AngleEstimate {
  VertexKind kind = VertexKind::Apex;
  std::vector<ThetaSample> samples;  // scales strictly decreasing
  double estimate = std::numeric_limits<double>::quiet_NaN();
  double bracket_min = std::numeric_limits<double>::quiet_NaN();
  double bracket_last = std::numeric_limits<double>::quiet_NaN();
  EstimateStatus status = EstimateStatus::ChronologyExhausted;
  int skipped = 0;       // infeasible steps skipped along the schedule
  double ratio = std::numeric_limits<double>::quiet_NaN();  // t/s kept at x/z
  bool converged() const { return status == EstimateStatus::Converged; }
};

// Limit of theta along a geometric schedule. At x and z the chronology
// condition is searched over ratios t = mu*s, mu in {2^j : j = -6..6}; the
// first feasible ratio is kept for the whole schedule and infeasible steps
// are skipped.
AngleEstimate normalized_angle(const GeodesicTriangle& tri, TriVertex v,
                               double k, AngleSchedule sched = {});

// defect = comparison_angle/(adj1*adj2) - normalized angle. Nonnegative up
// to tolerance wherever curvature is bounded below by k.
struct ToponogovResult {
  AngleEstimate angle;
  double comparison = 0.0;  // comparison angle / (adj1*adj2)
  double defect = std::numeric_limits<double>::quiet_NaN();
};
ToponogovResult toponogov_defect(const GeodesicTriangle& tri, TriVertex v,
                                 double k, AngleSchedule sched = {});

// Residuals tau(alpha(s), gamma(t)) - tau_bar(hinge at angle a*c*angle(x))
// over a grid. The hinge hypothesis (comparison angle equals the rescaled
// normalized angle) is checked and reported; residuals are returned either
// way for inspection.
struct HingeGridEntry {
  double s = 0.0, t = 0.0;
  double tau_inst = 0.0;
  double tau_hinge = 0.0;
  double residual = 0.0;
};
struct HingeCheckResult {
  bool hypothesis_met = false;
  AngleEstimate angle;
  double comparison = 0.0;
  std::vector<HingeGridEntry> grid;
  int skipped = 0;
};
HingeCheckResult hinge_check(const GeodesicTriangle& tri, double k,
                             int grid_n = 8, AngleSchedule sched = {});

// Adjacent-angle sum at a point m on beta: angle(y,m,x) + angle(x,m,z) with
// the cevian from x to m. Zero in model instances, >= 0 under lower
// curvature bounds. m at offset 0 degenerates to the single shoulder angle
// at y.
struct AngleSumResult {
  bool single_angle = false;
  AngleEstimate first;   // angle(y,m,x); sink kind
  AngleEstimate second;  // angle(x,m,z); shoulder kind
  double sum = std::numeric_limits<double>::quiet_NaN();
  bool converged() const {
    return single_angle ? second.converged()
                        : first.converged() && second.converged();
  }
};
AngleSumResult adjacent_angle_sum(const GeodesicTriangle& tri,
                                  double m_offset_on_beta, double k,
                                  AngleSchedule sched = {});

// First variation of ell(t) = tau(alpha(t), z) at t -> 0+. The slope limit
// equals the normalized angle at x.
struct FirstVariationSample {
  double t = 0.0;
  double ell = 0.0;
  double slope = 0.0;
};
struct FirstVariationSchedule {
  double t0 = 1e-2;
  double rho = 0.5;
  int steps = 20;
  bool max_over_variants = false;  // compare against max over gamma variants
};
struct FirstVariationResult {
  std::vector<FirstVariationSample> samples;  // t strictly decreasing
  double limit = std::numeric_limits<double>::quiet_NaN();  // last slope
  AngleEstimate angle;
  double residual = std::numeric_limits<double>::quiet_NaN();
  bool clipped = false;  // t0 exceeded the side length and was reduced
};
FirstVariationResult first_variation(const GeodesicTriangle& tri,
                                     FirstVariationSchedule fv = {},
                                     double k = 0.0, AngleSchedule sched = {});

// Hinge between two curves leaving a common vertex, each side flagged
// future- or past-directed from the vertex. The building block behind all
// vertex angle estimates.
struct ConfigSide {
  Polyline curve;      // stored future-directed
  bool future = true;  // orientation as seen from the vertex
  double len = 0.0;
};
struct VertexConfig {
  const Space* space = nullptr;
  Point v;
  ConfigSide s1, s2;
  VertexKind kind = VertexKind::Apex;
};

VertexConfig vertex_config(const GeodesicTriangle& tri, TriVertex v);
ThetaValue theta_at(const VertexConfig& cfg, double s, double t, double k);
AngleEstimate normalized_angle_at(const VertexConfig& cfg, double k,
                                  AngleSchedule sched);

}  // namespace lorcomp
