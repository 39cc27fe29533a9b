#include "lorcomp.h"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include "angles.hpp"
#include "certify.hpp"
#include "errors.hpp"
#include "report.hpp"
#include "spaces.hpp"

using nlohmann::json;

struct lorcomp_space {
  lorcomp::SpacePtr impl;
};

namespace {

thread_local std::string g_last_error;

lorcomp_status set_error(lorcomp::Err code, const char* what) {
  g_last_error = what;
  return static_cast<lorcomp_status>(code);
}

template <typename Fn>
lorcomp_status guarded(Fn&& fn) {
  try {
    fn();
    return LORCOMP_OK;
  } catch (const lorcomp::LorError& e) {
    return set_error(e.code(), e.what());
  } catch (const json::exception& e) {
    return set_error(lorcomp::Err::InvalidArgument, e.what());
  } catch (const std::exception& e) {
    return set_error(lorcomp::Err::Internal, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

json parse_options(const char* text) {
  if (text == nullptr || *text == '\0') return json::object();
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    lorcomp::fail(lorcomp::Err::InvalidArgument, "options must be a JSON object");
  return j;
}

const lorcomp::Space& space_of(const lorcomp_space* s) {
  if (s == nullptr || !s->impl)
    lorcomp::fail(lorcomp::Err::InvalidArgument, "null space handle");
  return *s->impl;
}

lorcomp::Region region_from(const json& opts, const lorcomp::Space& space) {
  if (!opts.contains("region")) return space.default_region();
  const json& r = opts["region"];
  lorcomp::Region out{r.at("x0").get<double>(), r.at("x1").get<double>(),
                      r.at("t0").get<double>(), r.at("t1").get<double>()};
  if (!out.valid())
    lorcomp::fail(lorcomp::Err::InvalidArgument, "degenerate region");
  return out;
}

lorcomp::SampleConfig config_from(const json& opts) {
  lorcomp::SampleConfig cfg;
  if (opts.contains("seed")) cfg.seed = opts["seed"].get<uint64_t>();
  if (opts.contains("triangles")) cfg.triangles = opts["triangles"].get<int>();
  if (opts.contains("pairs")) cfg.pairs = opts["pairs"].get<int>();
  if (opts.contains("mode"))
    cfg.mode = lorcomp::pair_mode_from_name(opts["mode"].get<std::string>());
  if (opts.contains("tolerance")) cfg.tolerance = opts["tolerance"].get<double>();
  if (opts.contains("variant"))
    cfg.variant = lorcomp::variant_from_name(opts["variant"].get<std::string>());
  if (opts.contains("sweep_variants"))
    cfg.sweep_variants = opts["sweep_variants"].get<bool>();
  if (opts.contains("min_side")) cfg.min_side = opts["min_side"].get<double>();
  if (opts.contains("max_witnesses"))
    cfg.max_witnesses = opts["max_witnesses"].get<int>();
  if (opts.value("inject_paper_triangle", false))
    lorcomp::inject_paper_triangle(cfg);
  return cfg;
}

lorcomp::AngleSchedule schedule_from(const json& opts) {
  lorcomp::AngleSchedule sched;
  if (!opts.contains("schedule")) return sched;
  const json& s = opts["schedule"];
  if (s.contains("s0")) sched.s0 = s["s0"].get<double>();
  if (s.contains("t0")) sched.t0 = s["t0"].get<double>();
  if (s.contains("rho")) sched.rho = s["rho"].get<double>();
  if (s.contains("tol")) sched.tol = s["tol"].get<double>();
  if (s.contains("max_steps")) sched.max_steps = s["max_steps"].get<int>();
  return sched;
}

json estimate_json(const lorcomp::AngleEstimate& est) {
  json samples = json::array();
  for (const auto& s : est.samples)
    samples.push_back(json{{"s", s.s}, {"t", s.t}, {"theta", s.value}});
  json out{{"status", lorcomp::estimate_status_name(est.status)},
           {"samples", samples},
           {"skipped", est.skipped}};
  if (!est.samples.empty()) {
    out["estimate"] = est.estimate;
    out["bracket"] = json::array({est.bracket_min, est.bracket_last});
  }
  if (std::isfinite(est.ratio)) out["ratio"] = est.ratio;
  return out;
}

double elapsed_ms_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

extern "C" {

const char* lorcomp_version(void) { return lorcomp::kToolVersion; }

const char* lorcomp_last_error(void) { return g_last_error.c_str(); }

void lorcomp_string_free(char* s) { std::free(s); }

lorcomp_status lorcomp_space_create(const char* config_json,
                                    lorcomp_space** out_space) {
  return guarded([&] {
    if (config_json == nullptr || out_space == nullptr)
      lorcomp::fail(lorcomp::Err::InvalidArgument, "null argument");
    auto space = lorcomp::load_space_text(config_json);
    *out_space = new lorcomp_space{std::move(space)};
  });
}

lorcomp_status lorcomp_space_create_preset(const char* preset,
                                           lorcomp_space** out_space) {
  return guarded([&] {
    if (preset == nullptr || out_space == nullptr)
      lorcomp::fail(lorcomp::Err::InvalidArgument, "null argument");
    auto space = lorcomp::load_preset(preset);
    *out_space = new lorcomp_space{std::move(space)};
  });
}

void lorcomp_space_destroy(lorcomp_space* space) { delete space; }

lorcomp_status lorcomp_space_descriptor(const lorcomp_space* space,
                                        char** out_json) {
  return guarded([&] {
    *out_json = dup_string(space_of(space).descriptor().dump());
  });
}

lorcomp_status lorcomp_tau(const lorcomp_space* space, double px, double pt,
                           double qx, double qt, double* out_tau) {
  return guarded([&] {
    *out_tau = space_of(space).tau(lorcomp::Point{px, pt},
                                   lorcomp::Point{qx, qt});
  });
}

lorcomp_status lorcomp_relation(const lorcomp_space* space, double px,
                                double pt, double qx, double qt,
                                int* out_relation) {
  return guarded([&] {
    *out_relation = static_cast<int>(space_of(space).relate(
        lorcomp::Point{px, pt}, lorcomp::Point{qx, qt}));
  });
}

lorcomp_status lorcomp_certify(const lorcomp_space* space,
                               const char* options_json,
                               char** out_report_json) {
  return guarded([&] {
    const lorcomp::Space& sp = space_of(space);
    json opts = parse_options(options_json);
    lorcomp::SampleConfig cfg = config_from(opts);
    lorcomp::Region region = region_from(opts, sp);
    double k = opts.value("k", 0.0);
    auto start = std::chrono::steady_clock::now();
    if (opts.contains("k_grid")) {
      std::vector<double> ks = opts["k_grid"].get<std::vector<double>>();
      double scale = opts.value("scale", 0.0);
      auto entries = lorcomp::k_scan(sp, region, ks, cfg, scale);
      json doc = lorcomp::kscan_document(sp, entries, cfg, region,
                                         elapsed_ms_since(start));
      *out_report_json = dup_string(doc.dump(2));
      return;
    }
    lorcomp::Direction dir =
        lorcomp::direction_from_name(opts.value("direction", "below"));
    double scale = opts.value("scale", 1.0);
    lorcomp::CertifyRun run = lorcomp::certify_run(sp, region, k, cfg, scale);
    lorcomp::Verdict verdict = lorcomp::make_verdict(run, dir);
    json doc = lorcomp::report_document(sp, run, verdict,
                                        elapsed_ms_since(start));
    *out_report_json = dup_string(doc.dump(2));
  });
}

lorcomp_status lorcomp_cross_check(const lorcomp_space* space,
                                   const char* options_json, char** out_json) {
  return guarded([&] {
    const lorcomp::Space& sp = space_of(space);
    json opts = parse_options(options_json);
    lorcomp::SampleConfig cfg = config_from(opts);
    lorcomp::Region region = region_from(opts, sp);
    double k = opts.value("k", 0.0);
    auto start = std::chrono::steady_clock::now();
    auto rep = lorcomp::criteria_cross_check(sp, region, k, cfg,
                                             schedule_from(opts));
    json doc = lorcomp::crosscheck_document(sp, rep, cfg, region,
                                            elapsed_ms_since(start));
    *out_json = dup_string(doc.dump(2));
  });
}

lorcomp_status lorcomp_replay_report(const char* report_json,
                                     char** out_json) {
  return guarded([&] {
    if (report_json == nullptr)
      lorcomp::fail(lorcomp::Err::InvalidArgument, "null report");
    json report = json::parse(report_json, nullptr, false);
    if (report.is_discarded())
      lorcomp::fail(lorcomp::Err::InvalidArgument, "report is not valid JSON");
    lorcomp::ReplayResult res = lorcomp::replay_report(report);
    json doc{{"ok", res.ok},
             {"checked", res.checked},
             {"mismatched", res.mismatched}};
    if (!res.first_mismatch.empty()) doc["first_mismatch"] = res.first_mismatch;
    *out_json = dup_string(doc.dump(2));
  });
}

lorcomp_status lorcomp_triangle_info(const char* options_json,
                                     char** out_json) {
  return guarded([&] {
    json opts = parse_options(options_json);
    if (!opts.contains("sides") || !opts["sides"].is_array() ||
        opts["sides"].size() != 3)
      lorcomp::fail(lorcomp::Err::InvalidArgument, "options need sides [a,b,c]");
    double a = opts["sides"][0].get<double>();
    double b = opts["sides"][1].get<double>();
    double c = opts["sides"][2].get<double>();
    lorcomp::ModelParams mp = lorcomp::ModelParams::curvature(opts.value("k", 0.0));
    lorcomp::SizeBounds sb = lorcomp::size_bounds_ok(mp, a, b, c);
    if (!sb.ok) lorcomp::fail(lorcomp::Err::SizeBounds, sb.diagnosis);
    json doc{{"k", mp.k}, {"sides", json::array({a, b, c})}};
    doc["size_bounds"] = json{{"ok", true}, {"degenerate", sb.degenerate}};
    doc["angles"] = json{
        {"x", lorcomp::nonnormalized_angle(mp, a, c, b, lorcomp::VertexKind::Apex)},
        {"y", lorcomp::nonnormalized_angle(mp, a, b, c, lorcomp::VertexKind::Shoulder)},
        {"z", lorcomp::nonnormalized_angle(mp, b, c, a, lorcomp::VertexKind::Sink)}};
    if (opts.value("realize", false)) {
      lorcomp::ModelTriangle tri = lorcomp::realize_triangle(mp, a, b, c);
      doc["vertices"] = json{{"x", json::array({tri.x.x, tri.x.t})},
                             {"y", json::array({tri.y.x, tri.y.t})},
                             {"z", json::array({tri.z.x, tri.z.t})}};
    }
    *out_json = dup_string(doc.dump(2));
  });
}

lorcomp_status lorcomp_angle(const lorcomp_space* space,
                             const char* options_json, char** out_json) {
  return guarded([&] {
    const lorcomp::Space& sp = space_of(space);
    json opts = parse_options(options_json);
    if (!opts.contains("vertices") || !opts["vertices"].is_array() ||
        opts["vertices"].size() != 3)
      lorcomp::fail(lorcomp::Err::InvalidArgument,
                    "options need vertices [[x,t],[x,t],[x,t]]");
    lorcomp::Point v[3];
    for (int i = 0; i < 3; ++i) {
      v[i].x = opts["vertices"][i].at(0).get<double>();
      v[i].t = opts["vertices"][i].at(1).get<double>();
    }
    lorcomp::MaximizerVariant variant =
        lorcomp::variant_from_name(opts.value("variant", "canonical"));
    lorcomp::GeodesicTriangle tri =
        lorcomp::make_geodesic_triangle(sp, v[0], v[1], v[2], variant);
    double k = opts.value("k", 0.0);
    std::string op = opts.value("op", "angle");
    lorcomp::AngleSchedule sched = schedule_from(opts);
    json doc{{"op", op},
             {"k", k},
             {"sides", json::array({tri.a, tri.b, tri.c})}};
    if (op == "angle") {
      lorcomp::TriVertex vertex =
          lorcomp::tri_vertex_from_name(opts.value("vertex", "x"));
      auto est = lorcomp::normalized_angle(tri, vertex, k, sched);
      doc["vertex"] = lorcomp::tri_vertex_name(vertex);
      doc["comparison_angle"] = lorcomp::comparison_angle(tri, vertex, k);
      doc["angle"] = estimate_json(est);
    } else if (op == "theta") {
      lorcomp::TriVertex vertex =
          lorcomp::tri_vertex_from_name(opts.value("vertex", "x"));
      double s = opts.at("s").get<double>();
      double t = opts.at("t").get<double>();
      auto tv = lorcomp::theta(tri, vertex, s, t, k);
      doc["vertex"] = lorcomp::tri_vertex_name(vertex);
      doc["s"] = s;
      doc["t"] = t;
      if (tv.status == lorcomp::ThetaStatus::Ok) {
        doc["theta"] = tv.value;
        doc["opposite"] = tv.opposite;
      } else {
        doc["error"] = tv.status == lorcomp::ThetaStatus::NoChronology
                           ? "chronology-failure"
                           : "size-bounds";
      }
    } else if (op == "firstvar") {
      lorcomp::FirstVariationSchedule fv;
      if (opts.contains("fv")) {
        const json& f = opts["fv"];
        if (f.contains("t0")) fv.t0 = f["t0"].get<double>();
        if (f.contains("rho")) fv.rho = f["rho"].get<double>();
        if (f.contains("steps")) fv.steps = f["steps"].get<int>();
        if (f.contains("max_over_variants"))
          fv.max_over_variants = f["max_over_variants"].get<bool>();
      }
      auto res = lorcomp::first_variation(tri, fv, k, sched);
      json samples = json::array();
      for (const auto& s : res.samples)
        samples.push_back(json{{"t", s.t}, {"ell", s.ell}, {"slope", s.slope}});
      doc["samples"] = samples;
      doc["limit"] = res.limit;
      doc["clipped"] = res.clipped;
      doc["angle"] = estimate_json(res.angle);
      if (std::isfinite(res.residual)) doc["residual"] = res.residual;
    } else if (op == "adjacent") {
      double off = opts.value("m_offset", tri.b / 2.0);
      auto res = lorcomp::adjacent_angle_sum(tri, off, k, sched);
      doc["m_offset"] = off;
      doc["single_angle"] = res.single_angle;
      if (!res.single_angle) doc["first"] = estimate_json(res.first);
      doc["second"] = estimate_json(res.second);
      if (std::isfinite(res.sum)) doc["sum"] = res.sum;
    } else {
      lorcomp::fail(lorcomp::Err::InvalidArgument, "unknown op: " + op);
    }
    *out_json = dup_string(doc.dump(2));
  });
}

lorcomp_status lorcomp_render_svg(const char* report_json, char** out_svg) {
  return guarded([&] {
    if (report_json == nullptr)
      lorcomp::fail(lorcomp::Err::InvalidArgument, "null report");
    json report = json::parse(report_json, nullptr, false);
    if (report.is_discarded())
      lorcomp::fail(lorcomp::Err::InvalidArgument, "report is not valid JSON");
    *out_svg = dup_string(lorcomp::render_svg(report));
  });
}

}  // extern "C"
