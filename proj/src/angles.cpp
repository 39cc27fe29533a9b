#include "angles.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace lorcomp {

namespace {

void check_chronological(const Space& space, const Point& p, const Point& q,
                         const char* what) {
  if (space.relate(p, q) != Relation::Chronological)
    fail(Err::InvalidArgument,
         std::string("vertices are not in chronological order: ") + what);
}

}  // namespace

GeodesicTriangle make_geodesic_triangle(const Space& space, const Point& x,
                                        const Point& y, const Point& z,
                                        MaximizerVariant v) {
  check_chronological(space, x, y, "x << y");
  check_chronological(space, y, z, "y << z");
  check_chronological(space, x, z, "x << z");
  GeodesicTriangle tri;
  tri.space = &space;
  tri.x = x;
  tri.y = y;
  tri.z = z;
  tri.variant = v;
  tri.alpha = space.maximizer(x, y, v);
  tri.beta = space.maximizer(y, z, v);
  tri.gamma = space.maximizer(x, z, v);
  tri.a = space.tau(x, y);
  tri.b = space.tau(y, z);
  tri.c = space.tau(x, z);
  // Sides must telescope to the endpoint separation.
  for (auto [curve, len] : {std::pair<const Polyline*, double>{&tri.alpha, tri.a},
                            {&tri.beta, tri.b},
                            {&tri.gamma, tri.c}}) {
    double sum = polyline_tau(space, *curve);
    if (std::fabs(sum - len) > 1e-12 * std::max(1.0, len))
      fail(Err::Internal, "maximizer tau-length check failed");
  }
  return tri;
}

const char* tri_vertex_name(TriVertex v) {
  switch (v) {
    case TriVertex::X: return "x";
    case TriVertex::Y: return "y";
    case TriVertex::Z: return "z";
  }
  return "?";
}

TriVertex tri_vertex_from_name(const std::string& name) {
  if (name == "x" || name == "apex") return TriVertex::X;
  if (name == "y" || name == "shoulder") return TriVertex::Y;
  if (name == "z" || name == "sink") return TriVertex::Z;
  fail(Err::InvalidArgument, "unknown vertex name: " + name);
}

const char* estimate_status_name(EstimateStatus s) {
  switch (s) {
    case EstimateStatus::Converged: return "converged";
    case EstimateStatus::Diverging: return "diverging";
    case EstimateStatus::ChronologyExhausted: return "chronology-exhausted";
    case EstimateStatus::NoConvergence: return "no-convergence";
  }
  return "?";
}

double comparison_angle(const GeodesicTriangle& tri, TriVertex v, double k) {
  ModelParams mp = ModelParams::curvature(k);
  SizeBounds sb = size_bounds_ok(mp, tri.a, tri.b, tri.c);
  if (!sb.ok) fail(Err::SizeBounds, sb.diagnosis);
  switch (v) {
    case TriVertex::X:
      return nonnormalized_angle(mp, tri.a, tri.c, tri.b, VertexKind::Apex);
    case TriVertex::Y:
      return nonnormalized_angle(mp, tri.a, tri.b, tri.c, VertexKind::Shoulder);
    case TriVertex::Z:
      return nonnormalized_angle(mp, tri.b, tri.c, tri.a, VertexKind::Sink);
  }
  fail(Err::Internal, "bad vertex");
}

VertexConfig vertex_config(const GeodesicTriangle& tri, TriVertex v) {
  VertexConfig cfg;
  cfg.space = tri.space;
  switch (v) {
    case TriVertex::X:
      cfg.v = tri.x;
      cfg.s1 = {tri.alpha, true, tri.a};
      cfg.s2 = {tri.gamma, true, tri.c};
      cfg.kind = VertexKind::Apex;
      break;
    case TriVertex::Y:
      cfg.v = tri.y;
      cfg.s1 = {tri.beta, true, tri.b};
      cfg.s2 = {tri.alpha, false, tri.a};
      cfg.kind = VertexKind::Shoulder;
      break;
    case TriVertex::Z:
      cfg.v = tri.z;
      cfg.s1 = {tri.gamma, false, tri.c};
      cfg.s2 = {tri.beta, false, tri.b};
      cfg.kind = VertexKind::Sink;
      break;
  }
  return cfg;
}

namespace {

Point side_point_at(const Space& space, const ConfigSide& side, double off) {
  double s = side.future ? off : side.len - off;
  return point_at_tau(space, side.curve, s).p;
}

}  // namespace

ThetaValue theta_at(const VertexConfig& cfg, double s, double t, double k) {
  const Space& space = *cfg.space;
  if (!(s > 0.0) || !(t > 0.0) || s > cfg.s1.len * (1.0 + 1e-12) ||
      t > cfg.s2.len * (1.0 + 1e-12))
    fail(Err::InvalidArgument, "theta scales out of range");
  Point p1 = side_point_at(space, cfg.s1, std::min(s, cfg.s1.len));
  Point p2 = side_point_at(space, cfg.s2, std::min(t, cfg.s2.len));

  ThetaValue out;
  double opp;
  double sa, sb, sc;  // sub-triangle sides in causal order
  if (cfg.s1.future != cfg.s2.future) {
    // Shoulder: the past point precedes the future point through the vertex.
    const Point& past = cfg.s1.future ? p2 : p1;
    const Point& fut = cfg.s1.future ? p1 : p2;
    double plen = cfg.s1.future ? t : s;
    opp = space.tau(past, fut);
    if (!(opp > 0.0)) return out;  // inconsistent instance data
    sa = plen;
    sb = cfg.s1.future ? s : t;
    sc = opp;
  } else {
    double t12 = space.tau(p1, p2);
    double t21 = space.tau(p2, p1);
    if (t12 <= 0.0 && t21 <= 0.0) return out;  // chronology failure
    opp = std::max(t12, t21);
    double e = t12 > 0.0 ? s : t;  // offset of the earlier sub-point
    double l = t12 > 0.0 ? t : s;
    if (cfg.s1.future) {
      sa = e; sb = opp; sc = l;  // triangle (v, earlier, later)
    } else {
      sa = opp; sb = l; sc = e;  // triangle (earlier, later, v)
    }
  }
  ModelParams mp = ModelParams::curvature(k);
  SizeBounds bounds = size_bounds_ok(mp, sa, sb, sc);
  if (!bounds.ok) {
    out.status = ThetaStatus::SizeBoundsFail;
    return out;
  }
  double cphi;
  try {
    cphi = vertex_coshphi(mp, s, t, opp, cfg.kind);
  } catch (const LorError&) {
    out.status = ThetaStatus::SizeBoundsFail;
    return out;
  }
  out.status = ThetaStatus::Ok;
  out.opposite = opp;
  out.value = (cfg.kind == VertexKind::Shoulder ? 1.0 : -1.0) * cphi;
  return out;
}

ThetaValue theta(const GeodesicTriangle& tri, TriVertex v, double s, double t,
                 double k) {
  return theta_at(vertex_config(tri, v), s, t, k);
}

AngleEstimate normalized_angle_at(const VertexConfig& cfg, double k,
                                  AngleSchedule sched) {
  AngleEstimate est;
  est.kind = cfg.kind;
  double minside = std::min(cfg.s1.len, cfg.s2.len);
  double s0 = sched.s0 > 0.0 ? std::min(sched.s0, cfg.s1.len) : minside / 4.0;
  double t0 = sched.t0 > 0.0 ? std::min(sched.t0, cfg.s2.len) : minside / 4.0;
  if (!(sched.rho > 0.0 && sched.rho < 1.0))
    fail(Err::InvalidArgument, "schedule ratio must lie in (0,1)");

  bool needs_search = cfg.kind != VertexKind::Shoulder;
  bool have_ratio = !needs_search;
  double ratio = t0 / s0;

  auto record = [&](double s, double t, double value) {
    est.samples.push_back({s, t, value});
    if (est.samples.size() == 1 || value < est.bracket_min)
      est.bracket_min = value;
    est.bracket_last = value;
  };

  for (int step = 0; step < sched.max_steps; ++step) {
    double scale = std::pow(sched.rho, step);
    double s = s0 * scale;
    if (!(s > 0.0)) break;
    if (!have_ratio) {
      // Search t = mu*s over dyadic ratios at this scale; keep the first
      // feasible ratio for the rest of the schedule.
      for (int j = -6; j <= 6 && !have_ratio; ++j) {
        double mu = std::ldexp(1.0, j);
        double t = mu * s;
        if (t <= 0.0 || t > cfg.s2.len) continue;
        ThetaValue tv = theta_at(cfg, s, t, k);
        if (tv.status == ThetaStatus::Ok) {
          have_ratio = true;
          ratio = mu;
          record(s, t, tv.value);
        }
      }
      if (!have_ratio) {
        ++est.skipped;
        continue;
      }
    } else {
      double t = needs_search ? ratio * s : t0 * scale;
      if (t <= 0.0 || t > cfg.s2.len * (1.0 + 1e-12)) {
        ++est.skipped;
        continue;
      }
      ThetaValue tv = theta_at(cfg, s, std::min(t, cfg.s2.len), k);
      if (tv.status != ThetaStatus::Ok) {
        ++est.skipped;
        continue;
      }
      record(s, std::min(t, cfg.s2.len), tv.value);
    }
    est.ratio = ratio;
    double v = est.samples.back().value;
    if (v < -1e6) {
      est.status = EstimateStatus::Diverging;
      est.estimate = v;
      return est;
    }
    if (est.samples.size() >= 2) {
      double prev = est.samples[est.samples.size() - 2].value;
      if (std::fabs(v - prev) < sched.tol * std::max(1.0, std::fabs(v))) {
        est.status = EstimateStatus::Converged;
        est.estimate = v;
        return est;
      }
    }
  }
  if (est.samples.empty()) {
    est.status = EstimateStatus::ChronologyExhausted;
  } else {
    est.status = EstimateStatus::NoConvergence;
    est.estimate = est.samples.back().value;
  }
  return est;
}

AngleEstimate normalized_angle(const GeodesicTriangle& tri, TriVertex v,
                               double k, AngleSchedule sched) {
  return normalized_angle_at(vertex_config(tri, v), k, sched);
}

ToponogovResult toponogov_defect(const GeodesicTriangle& tri, TriVertex v,
                                 double k, AngleSchedule sched) {
  ToponogovResult res;
  res.angle = normalized_angle(tri, v, k, sched);
  double prod;
  switch (v) {
    case TriVertex::X: prod = tri.a * tri.c; break;
    case TriVertex::Y: prod = tri.a * tri.b; break;
    default: prod = tri.b * tri.c; break;
  }
  res.comparison = comparison_angle(tri, v, k) / prod;
  if (res.angle.converged()) res.defect = res.comparison - res.angle.estimate;
  return res;
}

HingeCheckResult hinge_check(const GeodesicTriangle& tri, double k, int grid_n,
                             AngleSchedule sched) {
  HingeCheckResult res;
  res.angle = normalized_angle(tri, TriVertex::X, k, sched);
  res.comparison = comparison_angle(tri, TriVertex::X, k);
  if (!res.angle.converged()) return res;
  double ang = res.angle.estimate;
  double rescaled = tri.a * tri.c * ang;
  res.hypothesis_met =
      std::fabs(rescaled - res.comparison) <=
      1e-6 * std::max(1.0, std::fabs(res.comparison));
  double coshphi = std::max(1.0, -ang);
  ModelParams mp = ModelParams::curvature(k);
  const Space& space = *tri.space;
  // Linear fractions along alpha, geometric along gamma: the interesting
  // pairs sit at scale ratios far from 1.
  for (int i = 1; i <= grid_n; ++i) {
    for (int j = 1; j <= grid_n; ++j) {
      double s = tri.a * i / (grid_n + 1.0);
      double t = tri.c * std::ldexp(1.0, -j);
      Point ps = point_at_tau(space, tri.alpha, s).p;
      Point pt = point_at_tau(space, tri.gamma, t).p;
      double t12 = space.tau(ps, pt);
      double t21 = space.tau(pt, ps);
      if (t12 <= 0.0 && t21 <= 0.0) {
        ++res.skipped;
        continue;
      }
      // Orient the comparison pair the same way as the instance pair.
      double tau_inst = t12 > 0.0 ? t12 : t21;
      double tau_hinge = t12 > 0.0 ? hinge_pair_tau(mp, s, t, coshphi)
                                   : hinge_pair_tau(mp, t, s, coshphi);
      res.grid.push_back({s, t, tau_inst, tau_hinge, tau_inst - tau_hinge});
    }
  }
  return res;
}

AngleSumResult adjacent_angle_sum(const GeodesicTriangle& tri,
                                  double m_offset_on_beta, double k,
                                  AngleSchedule sched) {
  AngleSumResult res;
  if (m_offset_on_beta < 0.0 || m_offset_on_beta >= tri.b)
    fail(Err::InvalidArgument, "m must lie on beta at offset in [0, b)");
  if (m_offset_on_beta == 0.0) {
    // m = y: the pair collapses to the single shoulder angle at y.
    res.single_angle = true;
    res.second = normalized_angle(tri, TriVertex::Y, k, sched);
    if (res.second.converged()) res.sum = res.second.estimate;
    return res;
  }
  const Space& space = *tri.space;
  Point m = point_at_tau(space, tri.beta, m_offset_on_beta).p;
  Polyline cevian = space.maximizer(tri.x, m, tri.variant);
  double h = space.tau(tri.x, m);
  if (!(h > 0.0)) fail(Err::NoCurve, "no chronological cevian from x to m");

  Polyline beta_ym = curve_prefix(space, tri.beta, m_offset_on_beta);
  Polyline beta_mz = curve_suffix(space, tri.beta, m_offset_on_beta);

  // angle(y, m, x): both legs leave m into the past.
  VertexConfig sink_cfg;
  sink_cfg.space = &space;
  sink_cfg.v = m;
  sink_cfg.s1 = {beta_ym, false, m_offset_on_beta};
  sink_cfg.s2 = {cevian, false, h};
  sink_cfg.kind = VertexKind::Sink;
  res.first = normalized_angle_at(sink_cfg, k, sched);

  // angle(x, m, z): future leg along beta, past leg down the cevian.
  VertexConfig shoulder_cfg;
  shoulder_cfg.space = &space;
  shoulder_cfg.v = m;
  shoulder_cfg.s1 = {beta_mz, true, tri.b - m_offset_on_beta};
  shoulder_cfg.s2 = {cevian, false, h};
  shoulder_cfg.kind = VertexKind::Shoulder;
  res.second = normalized_angle_at(shoulder_cfg, k, sched);

  if (res.first.converged() && res.second.converged())
    res.sum = res.first.estimate + res.second.estimate;
  return res;
}

FirstVariationResult first_variation(const GeodesicTriangle& tri,
                                     FirstVariationSchedule fv, double k,
                                     AngleSchedule sched) {
  FirstVariationResult res;
  if (!(fv.t0 > 0.0) || !(fv.rho > 0.0 && fv.rho < 1.0) || fv.steps < 1)
    fail(Err::InvalidArgument, "bad first-variation schedule");
  double t0 = fv.t0;
  if (t0 > 0.5 * tri.a) {
    t0 = 0.5 * tri.a;
    res.clipped = true;
  }
  const Space& space = *tri.space;
  for (int i = 0; i < fv.steps; ++i) {
    double t = t0 * std::pow(fv.rho, i);
    Point p = point_at_tau(space, tri.alpha, t).p;
    double ell = space.tau(p, tri.z);
    res.samples.push_back({t, ell, (ell - tri.c) / t});
  }
  res.limit = res.samples.back().slope;

  res.angle = normalized_angle(tri, TriVertex::X, k, sched);
  if (fv.max_over_variants && tri.space->maximizer_variant_count() > 1) {
    // The slope does not depend on gamma, but the angle does; quantify over
    // the instance's maximizer variants and keep the largest angle.
    for (int v = 0; v < tri.space->maximizer_variant_count(); ++v) {
      GeodesicTriangle alt = make_geodesic_triangle(
          space, tri.x, tri.y, tri.z, static_cast<MaximizerVariant>(v));
      AngleEstimate e = normalized_angle(alt, TriVertex::X, k, sched);
      if (e.converged() &&
          (!res.angle.converged() || e.estimate > res.angle.estimate))
        res.angle = e;
    }
  }
  if (res.angle.converged()) res.residual = res.limit - res.angle.estimate;
  return res;
}

}  // namespace lorcomp
