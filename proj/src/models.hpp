#pragma once

#include <string>

#include "point.hpp"

namespace lorcomp {

// Curvature parameters of a two-dimensional Lorentzian model space:
// k = 0 the Minkowski plane, k > 0 the unwrapped de Sitter hyperboloid
// S^2_1(r), k < 0 the unwrapped anti-de Sitter hyperboloid H^2_1(r),
// with r = 1/sqrt(|k|).
struct ModelParams {
  double k = 0.0;
  double r = 0.0;  // scale; 0 when flat

  static ModelParams flat() { return ModelParams{}; }
  static ModelParams curvature(double k);
  bool is_flat() const { return k == 0.0; }
};

// Role of a triangle vertex: apex has both sides future-directed (the
// earliest vertex), sink both past-directed (the latest), shoulder one of
// each (the middle vertex).
enum class VertexKind { Apex, Shoulder, Sink };

// Ambient triple on the quadric. Signature (-,+,+) for k > 0 with `a` the
// ambient time coordinate; (-,-,+) for k < 0 with (a,b) the two time
// coordinates. Unused when flat.
struct Embed3 {
  double a = 0.0, b = 0.0, c = 0.0;
};

struct SizeBounds {
  bool ok = false;
  bool degenerate = false;  // c = a + b within tolerance: collinear triangle
  std::string diagnosis;    // set when !ok
};

// Realizability of side lengths (a, b, c) = (tau(x,y), tau(y,z), tau(x,z)):
// c >= a + b always, and c < pi/sqrt(-k) when k < 0.
SizeBounds size_bounds_ok(const ModelParams& mp, double a, double b, double c);

// Chart convention: (x, t) = (r*spatial angle, r*time coordinate) of the
// global cover chart. Operations are restricted to |dx| < pi*r (k > 0) and
// |dt| < pi*r (k < 0); violating the restriction is an out-of-chart error,
// never a silent wrap.
Embed3 chart_to_embed(const ModelParams& mp, const Point& p);
Point embed_to_chart(const ModelParams& mp, const Embed3& e);

// Time separation of the model space. 0 for non-chronological pairs.
double model_tau(const ModelParams& mp, const Point& p, const Point& q);
Relation model_relate(const ModelParams& mp, const Point& p, const Point& q);

// Two sides of given lengths leaving a common vertex with hyperbolic angle
// phi between them (cosh(phi) >= 1).
struct HingeSpec {
  double adj1 = 0.0;
  double adj2 = 0.0;
  double coshphi = 1.0;
  VertexKind kind = VertexKind::Apex;
};

// Length of the side opposite the hinge vertex. Apex and sink obey the
// difference-type law of cosines (opposite shrinks as phi grows), the
// shoulder the sum-type law (opposite grows). Returns 0 when the opposite
// pair leaves the chronological range (degenerate hinge).
double hinge_opposite(const ModelParams& mp, const HingeSpec& h);

// Inverse of hinge_opposite: cosh(phi) at a vertex from the three side
// lengths, in the roles dictated by `kind`.
double vertex_coshphi(const ModelParams& mp, double adj1, double adj2,
                      double opp, VertexKind kind);

// Signed non-normalized angle: inner product of the two side velocities
// parametrized on [0,1]. Negative at apex and sink, positive at shoulder;
// flat case equals (opp^2 - adj1^2 - adj2^2)/2 for all three kinds.
double nonnormalized_angle(const ModelParams& mp, double adj1, double adj2,
                           double opp, VertexKind kind);

// Bilinear rescaling of a non-normalized angle when the endpoints move to
// fractions lam, mu in (0,1] of the two sides (measured from the vertex).
double rescale_angle(double angle, double lam, double mu);

enum class Side { XY, YZ, XZ };
const char* side_name(Side s);
Side side_from_name(const std::string& name);

// A point on a triangle side, at tau-offset `offset` from the side's
// initial vertex (x for XY and XZ, y for YZ).
struct SideOffset {
  Side side = Side::XY;
  double offset = 0.0;
};

// A triangle realized in the model space with the canonical placement:
// x at the chart origin, z on the time axis, y at nonnegative spatial
// coordinate. Unique up to isometry, so the placement is lossless.
struct ModelTriangle {
  ModelParams params;
  double a = 0.0, b = 0.0, c = 0.0;
  bool degenerate = false;
  Point x, y, z;          // chart coordinates
  Embed3 ex, ey, ez;      // ambient points (k != 0)
};

ModelTriangle realize_triangle(const ModelParams& mp, double a, double b,
                               double c);
double side_length(const ModelTriangle& tri, Side s);
Point side_point(const ModelTriangle& tri, Side s, double offset);

// tau-bar between the realized points at offsets p and q, computed from the
// side lengths alone (hinge at the shared vertex, rescaled, law of cosines).
// Directed: returns 0 unless the q point is in the chronological future of
// the p point. Agrees with model_tau over side_point coordinates.
double corresponding_tau(const ModelParams& mp, double a, double b, double c,
                         const SideOffset& p, const SideOffset& q);

// Point at parameter fraction `frac` on the geodesic from p to q, where the
// pair is chronologically or null related and tau_pq = model_tau(p, q).
Embed3 embed_interpolate(const ModelParams& mp, const Embed3& p,
                         const Embed3& q, double frac, double tau_pq);

// Directed separation between the endpoints of an apex hinge with legs of
// lengths `from` and `to` and angle cosh(phi): tau-bar from the `from`-leg
// endpoint to the `to`-leg endpoint, 0 when not chronological that way.
double hinge_pair_tau(const ModelParams& mp, double from, double to,
                      double coshphi);

}  // namespace lorcomp
