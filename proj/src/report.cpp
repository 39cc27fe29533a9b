#include "report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "errors.hpp"

namespace lorcomp {

using nlohmann::json;

namespace {

json point_json(const Point& p) {
  json j = json::array({p.x, p.t});
  if (p.station >= 0) j.push_back(p.station);
  return j;
}

Point point_from_json(const json& j) {
  Point p;
  p.x = j.at(0).get<double>();
  p.t = j.at(1).get<double>();
  if (j.size() > 2) p.station = j.at(2).get<int32_t>();
  return p;
}

json counts_json(const RunCounts& c) {
  return json{{"rejections", c.rejections},
              {"degenerate_triangles", c.degenerate_triangles},
              {"pairs_drawn", c.pairs_drawn},
              {"data_recorded", c.data_recorded},
              {"pairs_skipped", c.pairs_skipped}};
}

json config_json(const SampleConfig& cfg, const Region& region, double scale) {
  json inj = json::array();
  for (const auto& t : cfg.injected_triangles)
    inj.push_back(json::array({point_json(t[0]), point_json(t[1]), point_json(t[2])}));
  json pairs = json::array();
  for (const auto& ip : cfg.injected_pairs)
    pairs.push_back(json{{"p_side", side_name(ip.p_side)},
                         {"p_frac", ip.p_frac},
                         {"q_side", side_name(ip.q_side)},
                         {"q_frac", ip.q_frac}});
  return json{{"seed", cfg.seed},
              {"triangles", cfg.triangles},
              {"pairs", cfg.pairs},
              {"mode", pair_mode_name(cfg.mode)},
              {"tolerance", cfg.tolerance},
              {"variant", variant_name(cfg.variant)},
              {"sweep_variants", cfg.sweep_variants},
              {"min_side", cfg.min_side},
              {"max_witnesses", cfg.max_witnesses},
              {"scale", scale},
              {"region", {{"x0", region.x0},
                          {"x1", region.x1},
                          {"t0", region.t0},
                          {"t1", region.t1}}},
              {"injected_triangles", inj},
              {"injected_pairs", pairs}};
}

json triangle_json(const TriangleRecord& t) {
  return json{{"id", t.id},
              {"injected", t.injected},
              {"degenerate", t.degenerate},
              {"x", point_json(t.x)},
              {"y", point_json(t.y)},
              {"z", point_json(t.z)},
              {"sides", json::array({t.a, t.b, t.c})}};
}

json verdict_json(const Verdict& v) {
  json out{{"direction", direction_name(v.direction)},
           {"k", v.k},
           {"status", v.violated ? "violated" : "consistent"},
           {"tolerance", v.tolerance},
           {"violation_count", v.violation_count},
           {"min_defect", v.min_defect},
           {"max_defect", v.max_defect},
           {"counts", counts_json(v.counts)}};
  if (v.min_witness) out["min_witness"] = pair_record_json(*v.min_witness);
  if (v.max_witness) out["max_witness"] = pair_record_json(*v.max_witness);
  return out;
}

const TriangleRecord* find_triangle(const CertifyRun& run, int id) {
  for (const auto& t : run.triangles)
    if (t.id == id) return &t;
  return nullptr;
}

}  // namespace

json pair_record_json(const PairRecord& rec) {
  return json{{"triangle_id", rec.triangle_id},
              {"pair_index", rec.pair_index},
              {"orientation", rec.orientation},
              {"variant", variant_name(rec.variant)},
              {"p_side", side_name(rec.p.side)},
              {"p_offset", rec.p.offset},
              {"q_side", side_name(rec.q.side)},
              {"q_offset", rec.q.offset},
              {"p_point", point_json(rec.p_point)},
              {"q_point", point_json(rec.q_point)},
              {"snap", rec.snap},
              {"tau", rec.tau},
              {"tau_bar", rec.tau_bar},
              {"defect", rec.defect}};
}

json report_document(const Space& space, const CertifyRun& run,
                     const Verdict& verdict, double elapsed_ms) {
  json witnesses = json::array();
  std::vector<int> used_ids;
  for (const PairRecord& rec : verdict.witnesses) {
    json wj = pair_record_json(rec);
    const TriangleRecord* tr = find_triangle(run, rec.triangle_id);
    if (tr) {
      wj["x"] = point_json(tr->x);
      wj["y"] = point_json(tr->y);
      wj["z"] = point_json(tr->z);
      wj["sides"] = json::array({tr->a, tr->b, tr->c});
    }
    witnesses.push_back(wj);
    used_ids.push_back(rec.triangle_id);
  }
  // A few triangles for rendering even when no witness exists.
  json sample_tris = json::array();
  for (const auto& t : run.triangles) {
    if (sample_tris.size() >= 4) break;
    sample_tris.push_back(triangle_json(t));
  }
  return json{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
              {"space", space.descriptor()},
              {"k", run.k},
              {"direction", direction_name(verdict.direction)},
              {"config", config_json(run.cfg, run.region, run.scale)},
              {"verdict", verdict_json(verdict)},
              {"witnesses", witnesses},
              {"sample_triangles", sample_tris},
              {"timing", {{"total_ms", elapsed_ms}}}};
}

json kscan_document(const Space& space, const std::vector<KScanEntry>& entries,
                    const SampleConfig& cfg, const Region& region,
                    double elapsed_ms) {
  json rows = json::array();
  for (const auto& e : entries) {
    rows.push_back(json{{"k", e.k},
                        {"scale", e.scale},
                        {"below", verdict_json(e.below)},
                        {"above", verdict_json(e.above)}});
  }
  return json{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
              {"space", space.descriptor()},
              {"kscan", rows},
              {"config", config_json(cfg, region, 1.0)},
              {"timing", {{"total_ms", elapsed_ms}}}};
}

json crosscheck_document(const Space& space, const CrossCheckReport& rep,
                         const SampleConfig& cfg, const Region& region,
                         double elapsed_ms) {
  json dets = json::array();
  for (const auto& d : rep.detectors) {
    dets.push_back(json{{"name", d.name},
                        {"verdict", detector_verdict_name(d.verdict)},
                        {"checks", d.checks},
                        {"violations", d.violations},
                        {"skipped", d.skipped},
                        {"worst", d.worst}});
  }
  json agree = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(rep.agreement[i][j]);
    agree.push_back(row);
  }
  return json{{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
              {"space", space.descriptor()},
              {"k", rep.k},
              {"detectors", dets},
              {"agreement", agree},
              {"all_agree", rep.all_agree},
              {"config", config_json(cfg, region, 1.0)},
              {"timing", {{"total_ms", elapsed_ms}}}};
}

namespace {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string witnesses_csv(const json& report) {
  std::ostringstream os;
  os << "triangle_id,x_x,x_t,y_x,y_t,z_x,z_t,p_side,p_offset,q_side,q_offset,"
        "tau,tau_bar,defect\n";
  if (!report.contains("witnesses")) return os.str();
  for (const json& w : report["witnesses"]) {
    Point x = point_from_json(w.at("x"));
    Point y = point_from_json(w.at("y"));
    Point z = point_from_json(w.at("z"));
    os << w.at("triangle_id").get<int>() << ',' << num17(x.x) << ',' << num17(x.t)
       << ',' << num17(y.x) << ',' << num17(y.t) << ',' << num17(z.x) << ','
       << num17(z.t) << ',' << w.at("p_side").get<std::string>() << ','
       << num17(w.at("p_offset").get<double>()) << ','
       << w.at("q_side").get<std::string>() << ','
       << num17(w.at("q_offset").get<double>()) << ','
       << num17(w.at("tau").get<double>()) << ','
       << num17(w.at("tau_bar").get<double>()) << ','
       << num17(w.at("defect").get<double>()) << '\n';
  }
  return os.str();
}

ReplayResult replay_report(const json& report) {
  ReplayResult res;
  if (!report.contains("space") || !report.contains("witnesses") ||
      !report.contains("k"))
    fail(Err::InvalidArgument, "report lacks space/k/witnesses fields");
  SpacePtr space = load_space(report["space"]);
  ModelParams mp = ModelParams::curvature(report["k"].get<double>());
  res.ok = true;
  for (const json& w : report["witnesses"]) {
    ++res.checked;
    Point x = point_from_json(w.at("x"));
    Point y = point_from_json(w.at("y"));
    Point z = point_from_json(w.at("z"));
    MaximizerVariant variant =
        variant_from_name(w.at("variant").get<std::string>());
    GeodesicTriangle tri = make_geodesic_triangle(*space, x, y, z, variant);
    SideOffset p{side_from_name(w.at("p_side").get<std::string>()),
                 w.at("p_offset").get<double>()};
    SideOffset q{side_from_name(w.at("q_side").get<std::string>()),
                 w.at("q_offset").get<double>()};
    CurvePoint cp = point_at_tau(*space, p.side == Side::XY ? tri.alpha
                                         : p.side == Side::YZ ? tri.beta
                                                              : tri.gamma,
                                 p.offset);
    CurvePoint cq = point_at_tau(*space, q.side == Side::XY ? tri.alpha
                                         : q.side == Side::YZ ? tri.beta
                                                              : tri.gamma,
                                 q.offset);
    double tau = space->tau(cp.p, cq.p);
    double tau_bar = corresponding_tau(mp, tri.a, tri.b, tri.c, p, q);
    double defect = tau_bar - tau;
    bool match = tau == w.at("tau").get<double>() &&
                 tau_bar == w.at("tau_bar").get<double>() &&
                 defect == w.at("defect").get<double>();
    if (!match) {
      ++res.mismatched;
      if (res.first_mismatch.empty()) {
        std::ostringstream os;
        os << "witness triangle " << w.at("triangle_id") << " pair "
           << w.at("pair_index") << ": recomputed tau=" << num17(tau)
           << " tau_bar=" << num17(tau_bar);
        res.first_mismatch = os.str();
      }
      res.ok = false;
    }
  }
  return res;
}

}  // namespace lorcomp
