#include "models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace lorcomp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// acosh(1 + u) for u >= 0, stable near u = 0.
double acosh1p(double u) {
  return std::log1p(u + std::sqrt(u * (2.0 + u)));
}

// acos(1 - v) for v in [0, 2], stable near v = 0.
double acos1m(double v) {
  return 2.0 * std::asin(std::sqrt(0.5 * v));
}

std::string fmt3(double a, double b, double c) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ", " << c << ")";
  return os.str();
}

}  // namespace

ModelParams ModelParams::curvature(double k) {
  if (!std::isfinite(k)) fail(Err::InvalidArgument, "curvature must be finite");
  ModelParams mp;
  mp.k = k;
  mp.r = k == 0.0 ? 0.0 : 1.0 / std::sqrt(std::fabs(k));
  return mp;
}

const char* side_name(Side s) {
  switch (s) {
    case Side::XY: return "xy";
    case Side::YZ: return "yz";
    case Side::XZ: return "xz";
  }
  return "?";
}

Side side_from_name(const std::string& name) {
  if (name == "xy") return Side::XY;
  if (name == "yz") return Side::YZ;
  if (name == "xz") return Side::XZ;
  fail(Err::InvalidArgument, "unknown side name: " + name);
}

SizeBounds size_bounds_ok(const ModelParams& mp, double a, double b,
                          double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0))
    fail(Err::InvalidArgument, "side lengths must be positive: " + fmt3(a, b, c));
  SizeBounds res;
  double eps = 1e-12 * std::max(1.0, c);
  if (c + eps < a + b) {
    res.diagnosis = "reverse triangle inequality fails: c < a + b for " + fmt3(a, b, c);
    return res;
  }
  if (mp.k < 0.0) {
    double limit = kPi * mp.r;
    if (!(c < limit)) {
      std::ostringstream os;
      os << "size bound fails: c = " << c << " >= pi/sqrt(-k) = " << limit;
      res.diagnosis = os.str();
      return res;
    }
  }
  res.ok = true;
  res.degenerate = std::fabs(c - (a + b)) <= eps;
  return res;
}

Embed3 chart_to_embed(const ModelParams& mp, const Point& p) {
  if (mp.is_flat()) fail(Err::Internal, "no embedding for the flat model");
  double r = mp.r;
  if (mp.k > 0.0) {
    double eta = p.t / r, th = p.x / r;
    return {r * std::sinh(eta), r * std::cosh(eta) * std::cos(th),
            r * std::cosh(eta) * std::sin(th)};
  }
  double tt = p.t / r, chi = p.x / r;
  return {r * std::cos(tt) * std::cosh(chi), r * std::sin(tt) * std::cosh(chi),
          r * std::sinh(chi)};
}

Point embed_to_chart(const ModelParams& mp, const Embed3& e) {
  if (mp.is_flat()) fail(Err::Internal, "no embedding for the flat model");
  double r = mp.r;
  Point p;
  if (mp.k > 0.0) {
    p.t = r * std::asinh(e.a / r);
    p.x = r * std::atan2(e.c, e.b);
  } else {
    p.t = r * std::atan2(e.b, e.a);
    p.x = r * std::asinh(e.c / r);
  }
  return p;
}

namespace {

// Chronology data for a chart pair, computed in forms that stay accurate
// for nearly-null pairs.
struct PairGeom {
  bool future = false;   // q strictly later in chart time
  double gap = -1.0;     // >0: timelike; =0: null; <0: spacelike
                         // (k>0: <P,Q>/r^2 - 1; k<0: 1 + <P,Q>/r^2; k=0: dt^2-dx^2)
  bool in_range = true;  // k<0 only: within the timelike-geodesic range
  double tau = 0.0;      // separation when future && gap > 0 && in_range
};

PairGeom pair_geom(const ModelParams& mp, const Point& p, const Point& q) {
  PairGeom g;
  if (mp.is_flat()) {
    double dt = q.t - p.t, dx = q.x - p.x;
    g.future = dt > 0.0;
    g.gap = (dt - dx) * (dt + dx);
    if (g.future && g.gap > 0.0) g.tau = std::sqrt(g.gap);
    return g;
  }
  double r = mp.r;
  if (mp.k > 0.0) {
    double dth = (q.x - p.x) / r;
    if (!(std::fabs(dth) < kPi))
      fail(Err::OutOfChart, "spatial angle difference reaches pi on the cover");
    double deta = (q.t - p.t) / r;
    double sh = std::sinh(0.5 * deta);
    double sx = std::sin(0.5 * dth);
    // <P,Q>/r^2 - 1 = 2 sinh^2(deta/2) - cosh(eta_p) cosh(eta_q) 2 sin^2(dth/2)
    g.gap = 2.0 * sh * sh -
            std::cosh(p.t / r) * std::cosh(q.t / r) * 2.0 * sx * sx;
    g.future = deta > 0.0;
    if (g.future && g.gap > 0.0) g.tau = r * acosh1p(g.gap);
    return g;
  }
  double dtt = (q.t - p.t) / r;
  if (!(std::fabs(dtt) < kPi))
    fail(Err::OutOfChart, "time angle difference reaches pi on the cover");
  double dchi = (q.x - p.x) / r;
  double st = std::sin(0.5 * dtt);
  double shx = std::sinh(0.5 * dchi);
  // 1 + <P,Q>/r^2 = cosh(chi_p) cosh(chi_q) 2 sin^2(dtt/2) - 2 sinh^2(dchi/2)
  g.gap = std::cosh(p.x / r) * std::cosh(q.x / r) * 2.0 * st * st -
          2.0 * shx * shx;
  g.in_range = g.gap < 2.0;  // beyond: no connecting timelike geodesic
  g.future = dtt > 0.0;
  if (g.future && g.gap > 0.0 && g.in_range) g.tau = r * acos1m(g.gap);
  return g;
}

}  // namespace

double model_tau(const ModelParams& mp, const Point& p, const Point& q) {
  return pair_geom(mp, p, q).tau;
}

Relation model_relate(const ModelParams& mp, const Point& p, const Point& q) {
  if (p.x == q.x && p.t == q.t) return Relation::Equal;
  PairGeom g = pair_geom(mp, p, q);
  if (!g.future) return Relation::Unrelated;
  if (g.gap > 0.0 && g.in_range) return Relation::Chronological;
  if (g.gap == 0.0) return Relation::CausalOnly;
  return Relation::Unrelated;
}

double hinge_opposite(const ModelParams& mp, const HingeSpec& h) {
  if (!(h.adj1 >= 0.0) || !(h.adj2 >= 0.0))
    fail(Err::InvalidArgument, "hinge sides must be nonnegative");
  if (!(h.coshphi >= 1.0))
    fail(Err::InvalidArgument, "cosh(phi) must be >= 1");
  double cm1 = h.coshphi - 1.0;
  bool sum_type = h.kind == VertexKind::Shoulder;
  if (mp.is_flat()) {
    double base = sum_type ? h.adj1 + h.adj2 : h.adj1 - h.adj2;
    double sq = base * base + (sum_type ? 2.0 : -2.0) * h.adj1 * h.adj2 * cm1;
    return sq > 0.0 ? std::sqrt(sq) : 0.0;
  }
  double r = mp.r;
  double a = h.adj1 / r, b = h.adj2 / r;
  if (mp.k > 0.0) {
    double d = sum_type ? a + b : a - b;
    double sh = std::sinh(0.5 * d);
    double u = 2.0 * sh * sh +
               (sum_type ? 1.0 : -1.0) * std::sinh(a) * std::sinh(b) * cm1;
    return u > 0.0 ? r * acosh1p(u) : 0.0;
  }
  // k < 0: both legs and the result must stay below the conjugate distance.
  if (!(a < kPi) || !(b < kPi) || (sum_type && !(a + b < kPi)))
    fail(Err::SizeBounds, "hinge sides exceed pi/sqrt(-k)");
  double d = sum_type ? a + b : a - b;
  double s = std::sin(0.5 * d);
  double v = 2.0 * s * s +
             (sum_type ? 1.0 : -1.0) * std::sin(a) * std::sin(b) * cm1;
  if (sum_type) {
    if (!(v < 2.0)) fail(Err::SizeBounds, "shoulder opposite exceeds pi/sqrt(-k)");
    return r * acos1m(v);
  }
  if (v <= 0.0) return 0.0;
  return r * acos1m(std::min(v, 2.0));
}

double vertex_coshphi(const ModelParams& mp, double adj1, double adj2,
                      double opp, VertexKind kind) {
  if (!(adj1 > 0.0) || !(adj2 > 0.0) || !(opp >= 0.0))
    fail(Err::InvalidArgument, "bad lengths for vertex angle: " + fmt3(adj1, adj2, opp));
  bool sum_type = kind == VertexKind::Shoulder;
  double c;
  if (mp.is_flat()) {
    double base = sum_type ? adj1 + adj2 : adj1 - adj2;
    // c - 1 = +-(opp^2 - base^2) / (2 adj1 adj2)
    double num = (opp - base) * (opp + base);
    c = 1.0 + (sum_type ? num : -num) / (2.0 * adj1 * adj2);
  } else {
    double r = mp.r;
    double a = adj1 / r, b = adj2 / r, o = opp / r;
    if (mp.k > 0.0) {
      double sd = std::sinh(0.5 * (sum_type ? a + b : a - b));
      double so = std::sinh(0.5 * o);
      double num = 2.0 * (so * so - sd * sd);
      c = 1.0 + (sum_type ? num : -num) / (std::sinh(a) * std::sinh(b));
    } else {
      if (!(a < kPi) || !(b < kPi) || !(o < kPi))
        fail(Err::SizeBounds, "lengths exceed pi/sqrt(-k)");
      double sd = std::sin(0.5 * (sum_type ? a + b : a - b));
      double so = std::sin(0.5 * o);
      double num = 2.0 * (so * so - sd * sd);
      c = 1.0 + (sum_type ? num : -num) / (std::sin(a) * std::sin(b));
    }
  }
  if (c < 1.0 - 1e-9)
    fail(Err::Infeasible,
         "lengths do not form a hinge (cosh(phi) = " + std::to_string(c) + ")");
  return c < 1.0 ? 1.0 : c;
}

double nonnormalized_angle(const ModelParams& mp, double adj1, double adj2,
                           double opp, VertexKind kind) {
  double c = vertex_coshphi(mp, adj1, adj2, opp, kind);
  double sign = kind == VertexKind::Shoulder ? 1.0 : -1.0;
  return sign * adj1 * adj2 * c;
}

double rescale_angle(double angle, double lam, double mu) {
  return lam * mu * angle;
}

namespace {

// Tangent-frame construction at the chart origin: u0 the future unit time
// direction, e the unit spatial direction with positive chart x.
Embed3 base_point(const ModelParams& mp) {
  return mp.k > 0.0 ? Embed3{0.0, mp.r, 0.0} : Embed3{mp.r, 0.0, 0.0};
}

Embed3 geodesic_from_base(const ModelParams& mp, double coshphi, double dist,
                          bool past) {
  // Point at tau-distance `dist` from the origin along the future unit
  // tangent u = cosh(phi) u0 + sinh(phi) e (or its past reflection).
  double r = mp.r;
  double sphi = std::sqrt(std::max(0.0, (coshphi - 1.0) * (coshphi + 1.0)));
  double s = dist / r;
  double dir = past ? -1.0 : 1.0;
  if (mp.k > 0.0) {
    // u0 = (1,0,0), e = (0,0,1), base = (0,r,0)
    double ch = std::cosh(s), sh = std::sinh(s) * dir;
    return {r * sh * coshphi, r * ch, r * sh * sphi};
  }
  // u0 = (0,1,0), e = (0,0,1), base = (r,0,0)
  double co = std::cos(s), si = std::sin(s) * dir;
  return {r * co, r * si * coshphi, r * si * sphi};
}

}  // namespace

ModelTriangle realize_triangle(const ModelParams& mp, double a, double b,
                               double c) {
  SizeBounds sb = size_bounds_ok(mp, a, b, c);
  if (!sb.ok) fail(Err::SizeBounds, sb.diagnosis);
  ModelTriangle tri;
  tri.params = mp;
  tri.a = a;
  tri.b = b;
  tri.c = c;
  tri.degenerate = sb.degenerate;
  double cphi = vertex_coshphi(mp, a, c, b, VertexKind::Apex);
  tri.x = Point{0.0, 0.0};
  if (mp.is_flat()) {
    double ty = a * cphi;
    double xy2 = (ty - a) * (ty + a);
    tri.y = Point{std::sqrt(std::max(0.0, xy2)), ty};
    tri.z = Point{0.0, c};
    return tri;
  }
  tri.ex = base_point(mp);
  tri.ey = geodesic_from_base(mp, cphi, a, false);
  tri.ez = geodesic_from_base(mp, 1.0, c, false);
  tri.y = embed_to_chart(mp, tri.ey);
  tri.z = embed_to_chart(mp, tri.ez);
  return tri;
}

double side_length(const ModelTriangle& tri, Side s) {
  switch (s) {
    case Side::XY: return tri.a;
    case Side::YZ: return tri.b;
    case Side::XZ: return tri.c;
  }
  return 0.0;
}

Embed3 embed_interpolate(const ModelParams& mp, const Embed3& p,
                         const Embed3& q, double frac, double tau_pq) {
  if (mp.is_flat()) fail(Err::Internal, "flat interpolation is linear in chart");
  double r = mp.r;
  double L = tau_pq / r;
  if (L <= 0.0) {
    // Null geodesics on the quadric are ambient straight lines.
    return {p.a + frac * (q.a - p.a), p.b + frac * (q.b - p.b),
            p.c + frac * (q.c - p.c)};
  }
  double w0, w1;
  if (mp.k > 0.0) {
    w0 = std::sinh((1.0 - frac) * L) / std::sinh(L);
    w1 = std::sinh(frac * L) / std::sinh(L);
  } else {
    w0 = std::sin((1.0 - frac) * L) / std::sin(L);
    w1 = std::sin(frac * L) / std::sin(L);
  }
  return {w0 * p.a + w1 * q.a, w0 * p.b + w1 * q.b, w0 * p.c + w1 * q.c};
}

Point side_point(const ModelTriangle& tri, Side s, double offset) {
  double len = side_length(tri, s);
  double eps = 1e-9 * std::max(1.0, len);
  if (offset < -eps || offset > len + eps)
    fail(Err::InvalidArgument, "side offset out of range");
  offset = std::clamp(offset, 0.0, len);
  Point from, to;
  Embed3 efrom, eto;
  switch (s) {
    case Side::XY: from = tri.x; to = tri.y; efrom = tri.ex; eto = tri.ey; break;
    case Side::YZ: from = tri.y; to = tri.z; efrom = tri.ey; eto = tri.ez; break;
    case Side::XZ: from = tri.x; to = tri.z; efrom = tri.ex; eto = tri.ez; break;
  }
  if (offset == 0.0) return from;
  if (offset == len) return to;
  double frac = offset / len;
  if (tri.params.is_flat()) {
    return Point{from.x + frac * (to.x - from.x), from.t + frac * (to.t - from.t)};
  }
  return embed_to_chart(tri.params,
                        embed_interpolate(tri.params, efrom, eto, frac, len));
}

namespace {

// Which of the two hinge legs reaches the later point. For a hinge at the
// apex with legs s (angled, cosh(phi) = C) and t (straight), the t-leg
// endpoint is later iff its chart time exceeds the s-leg endpoint's.
bool apex_t_leg_later(const ModelParams& mp, double s, double t, double C) {
  if (mp.is_flat()) return t > s * C;
  double r = mp.r;
  if (mp.k > 0.0) return std::sinh(t / r) > std::sinh(s / r) * C;
  return std::sin(t / r) * std::cos(s / r) >
         std::cos(t / r) * std::sin(s / r) * C;
}

}  // namespace

double hinge_pair_tau(const ModelParams& mp, double from, double to,
                      double coshphi) {
  double cand = hinge_opposite(mp, {from, to, coshphi, VertexKind::Apex});
  if (cand == 0.0) return 0.0;
  return apex_t_leg_later(mp, from, to, coshphi) ? cand : 0.0;
}

double corresponding_tau(const ModelParams& mp, double a, double b, double c,
                         const SideOffset& p, const SideOffset& q) {
  SizeBounds sb = size_bounds_ok(mp, a, b, c);
  if (!sb.ok) fail(Err::SizeBounds, sb.diagnosis);
  auto check_range = [&](const SideOffset& so) {
    double len = so.side == Side::XY ? a : (so.side == Side::YZ ? b : c);
    double eps = 1e-9 * std::max(1.0, len);
    if (so.offset < -eps || so.offset > len + eps)
      fail(Err::InvalidArgument, "side offset out of range");
    return std::clamp(so.offset, 0.0, len);
  };
  double po = check_range(p), qo = check_range(q);

  if (p.side == q.side) {
    double d = qo - po;
    return d > 0.0 ? d : 0.0;
  }

  // Shoulder at y joins XY and YZ: the XY point is always the earlier one.
  auto shoulder_pair = [&](double from_y_past, double along_yz) -> double {
    if (from_y_past == 0.0) return along_yz;
    if (along_yz == 0.0) return from_y_past;
    double C = vertex_coshphi(mp, a, b, c, VertexKind::Shoulder);
    return hinge_opposite(mp, {from_y_past, along_yz, C, VertexKind::Shoulder});
  };
  if ((p.side == Side::XY && q.side == Side::YZ))
    return shoulder_pair(a - po, qo);
  if ((p.side == Side::YZ && q.side == Side::XY)) {
    // q is on XY, in the past of (or equal to) the YZ point.
    if (a - qo == 0.0 && po == 0.0) return 0.0;  // both are y
    return 0.0;
  }

  // Apex at x joins XY and XZ.
  if ((p.side == Side::XY && q.side == Side::XZ) ||
      (p.side == Side::XZ && q.side == Side::XY)) {
    double s = p.side == Side::XY ? po : qo;  // offset along XY
    double t = p.side == Side::XY ? qo : po;  // offset along XZ
    double C = vertex_coshphi(mp, a, c, b, VertexKind::Apex);
    double cand = hinge_opposite(mp, {s, t, C, VertexKind::Apex});
    if (cand == 0.0) return 0.0;
    bool xz_later = apex_t_leg_later(mp, s, t, C);
    bool q_later = (q.side == Side::XZ) == xz_later;
    return q_later ? cand : 0.0;
  }

  // Sink at z joins YZ and XZ; legs point into the past.
  double s = b - (p.side == Side::YZ ? po : qo);  // back along YZ
  double t = c - (p.side == Side::XZ ? po : qo);  // back along XZ
  double C = vertex_coshphi(mp, b, c, a, VertexKind::Sink);
  double cand = hinge_opposite(mp, {s, t, C, VertexKind::Sink});
  if (cand == 0.0) return 0.0;
  // Past-directed legs: the leg reaching "later in the apex sense" is now
  // the earlier point, so the comparison flips.
  bool xz_later = !apex_t_leg_later(mp, s, t, C);
  bool q_later = (q.side == Side::XZ) == xz_later;
  return q_later ? cand : 0.0;
}

}  // namespace lorcomp
