#include "certify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace lorcomp {

const char* pair_mode_name(PairMode m) {
  return m == PairMode::FullPairs ? "full" : "cevian";
}

PairMode pair_mode_from_name(const std::string& name) {
  if (name == "full" || name == "full_pairs") return PairMode::FullPairs;
  if (name == "cevian" || name == "cevian_only") return PairMode::CevianOnly;
  fail(Err::InvalidArgument, "unknown pair mode: " + name);
}

const char* direction_name(Direction d) {
  return d == Direction::Below ? "below" : "above";
}

Direction direction_from_name(const std::string& name) {
  if (name == "below") return Direction::Below;
  if (name == "above") return Direction::Above;
  fail(Err::InvalidArgument, "unknown direction: " + name);
}

const char* detector_verdict_name(DetectorVerdict v) {
  switch (v) {
    case DetectorVerdict::Consistent: return "consistent";
    case DetectorVerdict::Violated: return "violated";
    case DetectorVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

void inject_paper_triangle(SampleConfig& cfg, double scale) {
  cfg.injected_triangles.push_back({Point{0.0, 0.0},
                                    Point{-2.0 * scale, 3.0 * scale},
                                    Point{1.0 * scale, 7.0 * scale}});
  // Vertex x against the two marked points on the opposite side.
  cfg.injected_pairs.push_back({Side::XY, 0.0, Side::YZ, 0.25});
  cfg.injected_pairs.push_back({Side::XY, 0.0, Side::YZ, 0.875});
}

namespace {

double default_tolerance(const Space& space, const SampleConfig& cfg) {
  if (cfg.tolerance > 0.0) return cfg.tolerance;
  return space.kind() == "model" ? 1e-9 : 1e-7;
}

Point scale_point(const Point& p, double scale) {
  return Point{p.x * scale, p.t * scale, p.station};
}

// Draws one triangle for substream id; returns rejection count in *rej.
std::optional<GeodesicTriangle> draw_triangle(const Space& space,
                                              const Region& region, double k,
                                              const SampleConfig& cfg,
                                              double scale, uint64_t id,
                                              long* rej) {
  Rng rng = substream(cfg.seed, id, /*salt=*/0);
  ModelParams mp = ModelParams::curvature(k);
  const int kMaxAttempts = 4000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Point pts[3];
    for (Point& p : pts) p = space.sample_point(region, rng);
    std::sort(pts, pts + 3,
              [](const Point& a, const Point& b) { return a.t < b.t; });
    for (Point& p : pts) p = scale_point(p, scale);
    if (space.relate(pts[0], pts[1]) != Relation::Chronological ||
        space.relate(pts[1], pts[2]) != Relation::Chronological ||
        space.relate(pts[0], pts[2]) != Relation::Chronological) {
      ++*rej;
      continue;
    }
    double a = space.tau(pts[0], pts[1]);
    double b = space.tau(pts[1], pts[2]);
    double c = space.tau(pts[0], pts[2]);
    if (a < cfg.min_side * scale || b < cfg.min_side * scale) {
      ++*rej;
      continue;
    }
    SizeBounds sb = size_bounds_ok(mp, a, b, c);
    if (!sb.ok) {
      ++*rej;
      continue;
    }
    return make_geodesic_triangle(space, pts[0], pts[1], pts[2], cfg.variant);
  }
  return std::nullopt;
}

struct TriangleSlot {
  bool ok = false;
  bool injected = false;
  GeodesicTriangle tri;
  long rejections = 0;
};

// parallel_for with worker errors carried back to the caller.
void run_items(int n, const std::function<void(int)>& fn) {
  std::mutex mu;
  bool has_err = false;
  Err code = Err::Internal;
  std::string msg;
  parallel_for(n, [&](int i) {
    try {
      fn(i);
    } catch (const LorError& e) {
      std::lock_guard<std::mutex> lock(mu);
      if (!has_err) {
        has_err = true;
        code = e.code();
        msg = e.what();
      }
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(mu);
      if (!has_err) {
        has_err = true;
        msg = e.what();
      }
    }
  });
  if (has_err) fail(code, msg);
}

std::vector<TriangleSlot> build_sample(const Space& space,
                                       const Region& region, double k,
                                       const SampleConfig& cfg, double scale) {
  if (cfg.triangles < 1 || cfg.pairs < 1)
    fail(Err::InvalidArgument, "triangle and pair counts must be >= 1");
  if (!region.valid()) fail(Err::InvalidArgument, "empty or invalid region");
  int n_inj = static_cast<int>(cfg.injected_triangles.size());
  int total = cfg.triangles + n_inj;
  std::vector<TriangleSlot> slots(total);
  ModelParams mp = ModelParams::curvature(k);
  for (int i = 0; i < n_inj; ++i) {
    const auto& v = cfg.injected_triangles[i];
    Point x = scale_point(v[0], scale);
    Point y = scale_point(v[1], scale);
    Point z = scale_point(v[2], scale);
    slots[i].tri = make_geodesic_triangle(space, x, y, z, cfg.variant);
    SizeBounds sb =
        size_bounds_ok(mp, slots[i].tri.a, slots[i].tri.b, slots[i].tri.c);
    if (!sb.ok) fail(Err::SizeBounds, "injected triangle: " + sb.diagnosis);
    slots[i].injected = true;
    slots[i].ok = true;
  }
  std::atomic<bool> exhausted{false};
  run_items(total - n_inj, [&](int j) {
    int i = j + n_inj;
    TriangleSlot& slot = slots[i];
    auto tri = draw_triangle(space, region, k, cfg, scale,
                             static_cast<uint64_t>(j) + 1, &slot.rejections);
    if (!tri) {
      exhausted.store(true);
      return;
    }
    slot.tri = std::move(*tri);
    slot.ok = true;
  });
  if (exhausted.load())
    fail(Err::EmptySample,
         "region produced no admissible triangles within the rejection budget");
  return slots;
}

SideOffset vertex_as_offset(TriVertex v, const GeodesicTriangle& tri) {
  switch (v) {
    case TriVertex::X: return {Side::XY, 0.0};
    case TriVertex::Y: return {Side::YZ, 0.0};
    case TriVertex::Z: return {Side::XZ, tri.c};
  }
  return {Side::XY, 0.0};
}

double side_len(const GeodesicTriangle& tri, Side s) {
  switch (s) {
    case Side::XY: return tri.a;
    case Side::YZ: return tri.b;
    case Side::XZ: return tri.c;
  }
  return 0.0;
}

const Polyline& side_curve(const GeodesicTriangle& tri, Side s) {
  switch (s) {
    case Side::XY: return tri.alpha;
    case Side::YZ: return tri.beta;
    default: return tri.gamma;
  }
}

// Evaluates one ordered pair; returns records where tau or tau_bar is
// positive (at most one orientation qualifies in a chronology-consistent
// instance, but both are tried).
void evaluate_pair(const Space& space, const GeodesicTriangle& tri,
                   const ModelParams& mp, int tri_id, int pair_index,
                   MaximizerVariant variant, SideOffset p, SideOffset q,
                   std::vector<PairRecord>* out, long* skipped) {
  CurvePoint cp = point_at_tau(space, side_curve(tri, p.side), p.offset);
  CurvePoint cq = point_at_tau(space, side_curve(tri, q.side), q.offset);
  // Snapped offsets feed both sides of the comparison so the pair stays
  // consistent in spaces without interpolation.
  auto snapped_offset = [&](const SideOffset& so, const CurvePoint& cpt) {
    if (cpt.snap == 0.0) return so.offset;
    double cum = 0.0;
    const Polyline& curve = side_curve(tri, so.side);
    for (size_t i = 0; i + 1 < curve.pts.size(); ++i) {
      cum += space.tau(curve.pts[i], curve.pts[i + 1]);
      if (same_point(curve.pts[i + 1], cpt.p)) return cum;
    }
    return same_point(curve.pts.front(), cpt.p) ? 0.0 : so.offset;
  };
  SideOffset ps{p.side, snapped_offset(p, cp)};
  SideOffset qs{q.side, snapped_offset(q, cq)};
  bool any = false;
  for (int orient = 0; orient < 2; ++orient) {
    const SideOffset& sp = orient ? qs : ps;
    const SideOffset& sq = orient ? ps : qs;
    const CurvePoint& a = orient ? cq : cp;
    const CurvePoint& b = orient ? cp : cq;
    double tau = space.tau(a.p, b.p);
    double tau_bar = corresponding_tau(mp, tri.a, tri.b, tri.c, sp, sq);
    if (tau <= 0.0 && tau_bar <= 0.0) continue;
    PairRecord rec;
    rec.triangle_id = tri_id;
    rec.pair_index = pair_index;
    rec.orientation = orient;
    rec.variant = variant;
    rec.p = sp;
    rec.q = sq;
    rec.p_point = a.p;
    rec.q_point = b.p;
    rec.snap = cp.snap + cq.snap;
    rec.tau = tau;
    rec.tau_bar = tau_bar;
    rec.defect = tau_bar - tau;
    out->push_back(rec);
    any = true;
  }
  if (!any) ++*skipped;
}

struct PairDraw {
  SideOffset p, q;
};

std::vector<PairDraw> draw_pairs(const GeodesicTriangle& tri,
                                 const SampleConfig& cfg, uint64_t id,
                                 bool injected) {
  std::vector<PairDraw> draws;
  if (injected) {
    for (const InjectedPair& ip : cfg.injected_pairs) {
      draws.push_back({{ip.p_side, ip.p_frac * side_len(tri, ip.p_side)},
                       {ip.q_side, ip.q_frac * side_len(tri, ip.q_side)}});
    }
  }
  Rng rng = substream(cfg.seed, id, /*salt=*/1);
  for (int j = 0; j < cfg.pairs; ++j) {
    if (cfg.mode == PairMode::CevianOnly) {
      Side target = static_cast<Side>(rng.below(3));
      TriVertex opposite = target == Side::XY
                               ? TriVertex::Z
                               : (target == Side::YZ ? TriVertex::X : TriVertex::Y);
      double off = rng.next_double() * side_len(tri, target);
      draws.push_back({vertex_as_offset(opposite, tri), {target, off}});
    } else {
      SideOffset p{static_cast<Side>(rng.below(3)), 0.0};
      SideOffset q{static_cast<Side>(rng.below(3)), 0.0};
      p.offset = rng.next_double() * side_len(tri, p.side);
      q.offset = rng.next_double() * side_len(tri, q.side);
      draws.push_back({p, q});
    }
  }
  return draws;
}

}  // namespace

std::vector<GeodesicTriangle> sample_triangles(const Space& space,
                                               const Region& region, double k,
                                               const SampleConfig& cfg) {
  auto slots = build_sample(space, region, k, cfg, 1.0);
  std::vector<GeodesicTriangle> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(s.tri));
  return out;
}

CertifyRun certify_run(const Space& space, const Region& region, double k,
                       const SampleConfig& cfg, double scale) {
  CertifyRun run;
  run.k = k;
  run.scale = scale;
  run.region = region;
  run.cfg = cfg;
  ModelParams mp = ModelParams::curvature(k);
  auto slots = build_sample(space, region, k, cfg, scale);

  int n = static_cast<int>(slots.size());
  std::vector<std::vector<PairRecord>> data(n);
  std::vector<long> skips(n, 0);
  std::vector<long> drawn(n, 0);
  std::vector<MaximizerVariant> variants;
  if (cfg.sweep_variants) {
    for (int v = 0; v < space.maximizer_variant_count(); ++v)
      variants.push_back(static_cast<MaximizerVariant>(v));
  } else {
    variants.push_back(cfg.variant);
  }

  run_items(n, [&](int i) {
    const TriangleSlot& slot = slots[i];
    for (MaximizerVariant variant : variants) {
      GeodesicTriangle tri =
          variant == slot.tri.variant
              ? slot.tri
              : make_geodesic_triangle(space, slot.tri.x, slot.tri.y,
                                       slot.tri.z, variant);
      auto draws = draw_pairs(tri, cfg, static_cast<uint64_t>(i), slot.injected);
      drawn[i] += static_cast<long>(draws.size());
      for (size_t j = 0; j < draws.size(); ++j) {
        evaluate_pair(space, tri, mp, i, static_cast<int>(j), variant,
                      draws[j].p, draws[j].q, &data[i], &skips[i]);
      }
    }
  });

  for (int i = 0; i < n; ++i) {
    const TriangleSlot& slot = slots[i];
    TriangleRecord rec;
    rec.id = i;
    rec.injected = slot.injected;
    rec.x = slot.tri.x;
    rec.y = slot.tri.y;
    rec.z = slot.tri.z;
    rec.a = slot.tri.a;
    rec.b = slot.tri.b;
    rec.c = slot.tri.c;
    SizeBounds sb = size_bounds_ok(mp, rec.a, rec.b, rec.c);
    rec.degenerate = sb.degenerate;
    if (rec.degenerate) ++run.counts.degenerate_triangles;
    run.triangles.push_back(rec);
    run.counts.rejections += slot.rejections;
    run.counts.pairs_drawn += drawn[i];
    run.counts.pairs_skipped += skips[i];
    for (PairRecord& pr : data[i]) run.data.push_back(pr);
  }
  run.counts.data_recorded = static_cast<long>(run.data.size());
  run.cfg.tolerance = default_tolerance(space, cfg);
  return run;
}

Verdict make_verdict(const CertifyRun& run, Direction dir) {
  Verdict v;
  v.direction = dir;
  v.k = run.k;
  v.tolerance = run.cfg.tolerance;
  v.counts = run.counts;
  bool first = true;
  for (const PairRecord& rec : run.data) {
    if (first || rec.defect < v.min_defect) {
      v.min_defect = rec.defect;
      v.min_witness = rec;
    }
    if (first || rec.defect > v.max_defect) {
      v.max_defect = rec.defect;
      v.max_witness = rec;
    }
    first = false;
    double tol = v.tolerance + rec.snap;
    bool bad = dir == Direction::Below ? rec.defect < -tol : rec.defect > tol;
    if (bad) {
      ++v.violation_count;
      if (static_cast<int>(v.witnesses.size()) < run.cfg.max_witnesses)
        v.witnesses.push_back(rec);
    }
  }
  v.violated = v.violation_count > 0;
  return v;
}

Verdict certify_bound(const Space& space, const Region& region, double k,
                      Direction dir, const SampleConfig& cfg) {
  return make_verdict(certify_run(space, region, k, cfg), dir);
}

std::vector<KScanEntry> k_scan(const Space& space, const Region& region,
                               const std::vector<double>& ks,
                               const SampleConfig& cfg, double fixed_scale) {
  if (ks.empty()) fail(Err::InvalidArgument, "empty curvature grid");
  std::vector<KScanEntry> out;
  // Shared base sample: the same vertex draws feed every k, rescaled when
  // needed so that all triangles satisfy that k's size bounds.
  double base_cmax = 0.0;
  {
    SampleConfig probe = cfg;
    auto tris = sample_triangles(space, region, 0.0, probe);
    for (const auto& t : tris) base_cmax = std::max(base_cmax, t.c);
  }
  for (double k : ks) {
    double scale = fixed_scale > 0.0 ? fixed_scale : 1.0;
    if (fixed_scale <= 0.0 && k < 0.0 && space.scalable()) {
      double limit = 3.14159265358979323846 / std::sqrt(-k);
      if (base_cmax >= 0.9 * limit) scale = 0.9 * limit / base_cmax;
    }
    CertifyRun run = certify_run(space, region, k, cfg, scale);
    KScanEntry e;
    e.k = k;
    e.scale = scale;
    e.below = make_verdict(run, Direction::Below);
    e.above = make_verdict(run, Direction::Above);
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

DetectorVerdict summarize(long violations, long checks, long inconclusive) {
  if (violations > 0) return DetectorVerdict::Violated;
  if (checks == 0 || inconclusive > 0) return DetectorVerdict::Inconclusive;
  return DetectorVerdict::Consistent;
}

}  // namespace

CrossCheckReport criteria_cross_check(const Space& space, const Region& region,
                                      double k, const SampleConfig& cfg,
                                      const AngleSchedule& sched) {
  CrossCheckReport rep;
  rep.k = k;

  // A: full-pair defects. B: cevian defects.
  SampleConfig full_cfg = cfg;
  full_cfg.mode = PairMode::FullPairs;
  CertifyRun full_run = certify_run(space, region, k, full_cfg);
  Verdict va = make_verdict(full_run, Direction::Below);
  SampleConfig cev_cfg = cfg;
  cev_cfg.mode = PairMode::CevianOnly;
  Verdict vb = certify_bound(space, region, k, Direction::Below, cev_cfg);

  rep.detectors[0] = {"full_pairs",
                      va.violated ? DetectorVerdict::Violated
                                  : DetectorVerdict::Consistent,
                      va.counts.data_recorded, va.violation_count, 0,
                      va.min_defect};
  rep.detectors[1] = {"cevian",
                      vb.violated ? DetectorVerdict::Violated
                                  : DetectorVerdict::Consistent,
                      vb.counts.data_recorded, vb.violation_count, 0,
                      vb.min_defect};

  // C: theta monotonicity over nested scale pairs.
  auto tris = sample_triangles(space, region, k, full_cfg);
  const double mono_tol = 1e-9;
  DetectorReport& dc = rep.detectors[2];
  dc.name = "theta_monotonicity";
  for (size_t i = 0; i < tris.size(); ++i) {
    Rng rng = substream(cfg.seed, i, /*salt=*/2);
    for (TriVertex v : {TriVertex::X, TriVertex::Y, TriVertex::Z}) {
      VertexConfig vc = vertex_config(tris[i], v);
      for (int trial = 0; trial < 8; ++trial) {
        double s = vc.s1.len * rng.uniform(0.2, 1.0);
        double t = vc.s2.len * rng.uniform(0.2, 1.0);
        ThetaValue big = theta_at(vc, s, t, k);
        if (big.status != ThetaStatus::Ok) {
          ++dc.skipped;
          continue;
        }
        double s2 = s * rng.uniform(0.2, 1.0);
        double t2 = t * rng.uniform(0.2, 1.0);
        ThetaValue small = theta_at(vc, s2, t2, k);
        if (small.status != ThetaStatus::Ok) {
          ++dc.skipped;
          continue;
        }
        ++dc.checks;
        double excess = small.value - big.value;  // must be <= 0
        if (excess > mono_tol) {
          ++dc.violations;
          dc.worst = std::max(dc.worst, excess);
        }
      }
    }
  }
  dc.verdict = summarize(dc.violations, dc.checks, 0);

  // D: Toponogov defects and adjacent-angle sums.
  DetectorReport& dd = rep.detectors[3];
  dd.name = "toponogov_adjacent";
  const double topo_tol = 1e-6;
  long inconclusive = 0;
  for (size_t i = 0; i < tris.size(); ++i) {
    for (TriVertex v : {TriVertex::X, TriVertex::Y, TriVertex::Z}) {
      ToponogovResult tr = toponogov_defect(tris[i], v, k, sched);
      if (!tr.angle.converged()) {
        if (tr.angle.status == EstimateStatus::Diverging) {
          // A divergent angle cannot witness a violation.
          ++dd.skipped;
        } else {
          ++inconclusive;
        }
        continue;
      }
      ++dd.checks;
      if (tr.defect < -topo_tol) {
        ++dd.violations;
        dd.worst = std::min(dd.worst, tr.defect);
      }
    }
    Rng rng = substream(cfg.seed, i, /*salt=*/3);
    double off = tris[i].b * rng.uniform(0.25, 0.75);
    AngleSumResult sum = adjacent_angle_sum(tris[i], off, k, sched);
    if (!sum.converged()) {
      ++inconclusive;
      continue;
    }
    ++dd.checks;
    if (sum.sum < -topo_tol) {
      ++dd.violations;
      dd.worst = std::min(dd.worst, sum.sum);
    }
  }
  dd.verdict = summarize(dd.violations, dd.checks, inconclusive);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      rep.agreement[i][j] =
          rep.detectors[i].verdict == rep.detectors[j].verdict;
  rep.all_agree = rep.agreement[0][1] && rep.agreement[0][2] &&
                  rep.agreement[0][3];
  return rep;
}

}  // namespace lorcomp
