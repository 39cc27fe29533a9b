// Command-line front end for the lorcomp shared library. Talks to the core
// exclusively through the C API in lorcomp.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lorcomp.h"

using nlohmann::json;

namespace {

constexpr int kExitConsistent = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInvalid = 2;

struct SpaceHandle {
  lorcomp_space* ptr = nullptr;
  ~SpaceHandle() { lorcomp_space_destroy(ptr); }
};

struct ApiString {
  char* ptr = nullptr;
  ~ApiString() { lorcomp_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "lorcomp: " << msg << "\n";
  std::exit(kExitInvalid);
}

void require_ok(lorcomp_status st) {
  if (st != LORCOMP_OK) die(lorcomp_last_error());
}

// --space takes a preset name or a path to a JSON config file.
void open_space(const std::string& spec, SpaceHandle* out) {
  lorcomp_status st = lorcomp_space_create_preset(spec.c_str(), &out->ptr);
  if (st == LORCOMP_OK) return;
  std::ifstream in(spec);
  if (!in) die("unknown preset and unreadable config file: " + spec);
  std::stringstream ss;
  ss << in.rdbuf();
  require_ok(lorcomp_space_create(ss.str().c_str(), &out->ptr));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      die("expected a comma-separated number list, got: " + text);
    }
  }
  return out;
}

json vertices_json(const std::vector<std::string>& coords) {
  if (coords.size() != 3) die("--vertices needs three x,t pairs");
  json out = json::array();
  for (const std::string& c : coords) {
    std::vector<double> nums = parse_numbers(c);
    if (nums.size() != 2) die("vertex must be x,t: " + c);
    out.push_back(json::array({nums[0], nums[1]}));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical triangle comparison for Lorentzian pre-length spaces"};
  app.require_subcommand(1);

  // Shared flags.
  std::string space_spec = "minkowski";
  std::string region_spec;
  double k = 0.0;
  uint64_t seed = 1;

  auto add_space_flags = [&](CLI::App* cmd) {
    cmd->add_option("--space", space_spec, "preset (minkowski|taxicab|ds:<k>|ads:<k>) or config file");
    cmd->add_option("--k", k, "comparison curvature");
  };

  // certify ------------------------------------------------------------
  auto* certify = app.add_subcommand("certify", "sample triangles and certify a curvature bound");
  std::string direction = "below";
  int triangles = 1000, pairs = 10, max_witnesses = 64;
  std::string mode = "full", variant = "canonical";
  double tol = -1.0, scale = 1.0;
  bool inject = false, sweep = false;
  std::string kgrid_spec, out_path, csv_path, svg_path, replay_path;
  add_space_flags(certify);
  certify->add_option("--direction", direction, "below|above");
  certify->add_option("--triangles", triangles, "sampled triangle count");
  certify->add_option("--pairs", pairs, "pairs per triangle");
  certify->add_option("--mode", mode, "full|cevian");
  certify->add_option("--seed", seed, "sampling seed");
  certify->add_option("--tol", tol, "violation tolerance");
  certify->add_option("--variant", variant, "maximizer variant");
  certify->add_flag("--sweep-variants", sweep, "evaluate every maximizer variant");
  certify->add_option("--scale", scale, "triangle scale factor");
  certify->add_option("--region", region_spec, "x0,x1,t0,t1 sampling box");
  certify->add_flag("--inject-paper-triangle", inject,
                    "include the taxicab counterexample triangle and its witness pairs");
  certify->add_option("--k-grid", kgrid_spec, "comma-separated curvature grid (k scan)");
  certify->add_option("--out", out_path, "write the JSON report here");
  certify->add_option("--csv", csv_path, "write the witness table here");
  certify->add_option("--svg", svg_path, "render the report here");
  certify->add_option("--replay", replay_path, "re-verify the witnesses of an existing report");

  // triangle -----------------------------------------------------------
  auto* triangle = app.add_subcommand("triangle", "comparison triangle from side lengths");
  std::string sides_spec;
  bool realize = false;
  triangle->add_option("--k", k, "model curvature");
  triangle->add_option("--sides", sides_spec, "a,b,c side lengths")->required();
  triangle->add_flag("--realize", realize, "print canonical vertex coordinates");

  // angle / theta / firstvar -------------------------------------------
  std::vector<std::string> vertex_coords;
  std::string vertex_name = "x";
  double theta_s = 0.0, theta_t = 0.0;
  double s0 = 0.0, t0 = 0.0, rho = 0.5, conv_tol = 1e-6;
  int max_steps = 40;
  double fv_t0 = 1e-2, fv_rho = 0.5;
  int fv_steps = 20;
  bool fv_max = false;
  double m_offset = -1.0;

  auto add_schedule_flags = [&](CLI::App* cmd) {
    cmd->add_option("--s0", s0, "initial s scale");
    cmd->add_option("--t0", t0, "initial t scale");
    cmd->add_option("--rho", rho, "scale shrink ratio");
    cmd->add_option("--conv-tol", conv_tol, "convergence tolerance");
    cmd->add_option("--steps", max_steps, "schedule length");
    cmd->add_option("--variant", variant, "maximizer variant");
  };

  auto* angle = app.add_subcommand("angle", "normalized angle of a triangle vertex");
  add_space_flags(angle);
  angle->add_option("--vertices", vertex_coords, "three x,t pairs")->expected(3);
  angle->add_option("--vertex", vertex_name, "x|y|z (apex|shoulder|sink)");
  add_schedule_flags(angle);

  auto* theta_cmd = app.add_subcommand("theta", "single angle comparison function value");
  add_space_flags(theta_cmd);
  theta_cmd->add_option("--vertices", vertex_coords, "three x,t pairs")->expected(3);
  theta_cmd->add_option("--vertex", vertex_name, "x|y|z");
  theta_cmd->add_option("--s", theta_s, "scale along the first side")->required();
  theta_cmd->add_option("--t", theta_t, "scale along the second side")->required();

  auto* firstvar = app.add_subcommand("firstvar", "first variation of tau(alpha(t), z)");
  add_space_flags(firstvar);
  firstvar->add_option("--vertices", vertex_coords, "three x,t pairs")->expected(3);
  firstvar->add_option("--t0", fv_t0, "initial variation scale");
  firstvar->add_option("--rho", fv_rho, "scale shrink ratio");
  firstvar->add_option("--steps", fv_steps, "sample count");
  firstvar->add_flag("--max-over-variants", fv_max, "compare against the max angle over maximizer variants");
  firstvar->add_option("--variant", variant, "maximizer variant");

  auto* adjacent = app.add_subcommand("adjacent", "adjacent-angle sum at a point on beta");
  add_space_flags(adjacent);
  adjacent->add_option("--vertices", vertex_coords, "three x,t pairs")->expected(3);
  adjacent->add_option("--m-offset", m_offset, "tau offset of m along beta");
  adjacent->add_option("--variant", variant, "maximizer variant");

  // crosscheck ----------------------------------------------------------
  auto* crosscheck = app.add_subcommand("crosscheck", "run the four lower-bound detectors and compare verdicts");
  add_space_flags(crosscheck);
  crosscheck->add_option("--triangles", triangles, "sampled triangle count");
  crosscheck->add_option("--pairs", pairs, "pairs per triangle");
  crosscheck->add_option("--seed", seed, "sampling seed");
  crosscheck->add_option("--region", region_spec, "x0,x1,t0,t1 sampling box");
  crosscheck->add_flag("--inject-paper-triangle", inject,
                       "include the taxicab counterexample triangle");
  crosscheck->add_option("--out", out_path, "write the JSON report here");

  // render ----------------------------------------------------------------
  auto* render = app.add_subcommand("render", "SVG figure from a certification report");
  std::string render_in;
  render->add_option("--in", render_in, "report JSON path")->required();
  render->add_option("--svg", svg_path, "output SVG path")->required();

  CLI11_PARSE(app, argc, argv);

  auto region_json = [&]() -> json {
    if (region_spec.empty()) return nullptr;
    std::vector<double> r = parse_numbers(region_spec);
    if (r.size() != 4) die("--region needs x0,x1,t0,t1");
    return json{{"x0", r[0]}, {"x1", r[1]}, {"t0", r[2]}, {"t1", r[3]}};
  };

  if (certify->parsed()) {
    if (!replay_path.empty()) {
      std::string report = read_file(replay_path);
      ApiString out;
      require_ok(lorcomp_replay_report(report.c_str(), &out.ptr));
      json res = json::parse(out.str());
      std::cout << out.str() << "\n";
      return res["ok"].get<bool>() ? kExitConsistent : kExitViolated;
    }
    SpaceHandle space;
    open_space(space_spec, &space);
    json opts{{"k", k},          {"direction", direction},
              {"seed", seed},    {"triangles", triangles},
              {"pairs", pairs},  {"mode", mode},
              {"variant", variant}, {"sweep_variants", sweep},
              {"max_witnesses", max_witnesses}};
    if (tol > 0.0) opts["tolerance"] = tol;
    if (inject) opts["inject_paper_triangle"] = true;
    if (scale != 1.0) opts["scale"] = scale;
    json region = region_json();
    if (!region.is_null()) opts["region"] = region;
    if (!kgrid_spec.empty()) opts["k_grid"] = parse_numbers(kgrid_spec);
    ApiString out;
    require_ok(lorcomp_certify(space.ptr, opts.dump().c_str(), &out.ptr));
    std::string report = out.str();
    if (!out_path.empty())
      write_file(out_path, report);
    else
      std::cout << report << "\n";
    json doc = json::parse(report);
    if (!csv_path.empty() || !svg_path.empty()) {
      if (!csv_path.empty()) {
        // The witness table is assembled CLI-side from the report document.
        std::ostringstream csv;
        csv << "triangle_id,x_x,x_t,y_x,y_t,z_x,z_t,p_side,p_offset,q_side,"
               "q_offset,tau,tau_bar,defect\n";
        for (const json& w : doc.value("witnesses", json::array())) {
          char line[640];
          std::snprintf(line, sizeof(line),
                        "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%.17g,%s,%.17g,%.17g,%.17g,%.17g\n",
                        w["triangle_id"].get<int>(), w["x"][0].get<double>(),
                        w["x"][1].get<double>(), w["y"][0].get<double>(),
                        w["y"][1].get<double>(), w["z"][0].get<double>(),
                        w["z"][1].get<double>(),
                        w["p_side"].get<std::string>().c_str(),
                        w["p_offset"].get<double>(),
                        w["q_side"].get<std::string>().c_str(),
                        w["q_offset"].get<double>(), w["tau"].get<double>(),
                        w["tau_bar"].get<double>(), w["defect"].get<double>());
          csv << line;
        }
        write_file(csv_path, csv.str());
      }
      if (!svg_path.empty()) {
        ApiString svg;
        require_ok(lorcomp_render_svg(report.c_str(), &svg.ptr));
        write_file(svg_path, svg.str());
      }
    }
    bool violated = false;
    if (doc.contains("kscan")) {
      for (const json& row : doc["kscan"])
        violated = violated ||
                   row["below"]["status"].get<std::string>() == "violated" ||
                   row["above"]["status"].get<std::string>() == "violated";
    } else {
      violated = doc["verdict"]["status"].get<std::string>() == "violated";
    }
    return violated ? kExitViolated : kExitConsistent;
  }

  if (triangle->parsed()) {
    std::vector<double> sides = parse_numbers(sides_spec);
    if (sides.size() != 3) die("--sides needs a,b,c");
    json opts{{"k", k}, {"sides", sides}, {"realize", realize}};
    ApiString out;
    lorcomp_status st = lorcomp_triangle_info(opts.dump().c_str(), &out.ptr);
    if (st != LORCOMP_OK) die(lorcomp_last_error());
    std::cout << out.str() << "\n";
    return kExitConsistent;
  }

  if (render->parsed()) {
    std::string report = read_file(render_in);
    ApiString svg;
    require_ok(lorcomp_render_svg(report.c_str(), &svg.ptr));
    write_file(svg_path, svg.str());
    return kExitConsistent;
  }

  if (crosscheck->parsed()) {
    SpaceHandle space;
    open_space(space_spec, &space);
    json opts{{"k", k}, {"seed", seed}, {"triangles", triangles}, {"pairs", pairs}};
    if (inject) opts["inject_paper_triangle"] = true;
    json region = region_json();
    if (!region.is_null()) opts["region"] = region;
    ApiString out;
    require_ok(lorcomp_cross_check(space.ptr, opts.dump().c_str(), &out.ptr));
    if (!out_path.empty())
      write_file(out_path, out.str());
    else
      std::cout << out.str() << "\n";
    json doc = json::parse(out.str());
    for (const json& d : doc["detectors"])
      if (d["verdict"].get<std::string>() == "violated") return kExitViolated;
    return kExitConsistent;
  }

  // angle-family subcommands share the option assembly.
  SpaceHandle space;
  open_space(space_spec, &space);
  json opts{{"k", k}, {"vertices", vertices_json(vertex_coords)}, {"variant", variant}};
  json sched;
  if (s0 > 0.0) sched["s0"] = s0;
  if (t0 > 0.0) sched["t0"] = t0;
  sched["rho"] = rho;
  sched["tol"] = conv_tol;
  sched["max_steps"] = max_steps;
  opts["schedule"] = sched;
  if (angle->parsed()) {
    opts["op"] = "angle";
    opts["vertex"] = vertex_name;
  } else if (theta_cmd->parsed()) {
    opts["op"] = "theta";
    opts["vertex"] = vertex_name;
    opts["s"] = theta_s;
    opts["t"] = theta_t;
  } else if (firstvar->parsed()) {
    opts["op"] = "firstvar";
    opts["fv"] = json{{"t0", fv_t0},
                      {"rho", fv_rho},
                      {"steps", fv_steps},
                      {"max_over_variants", fv_max}};
  } else if (adjacent->parsed()) {
    opts["op"] = "adjacent";
    if (m_offset >= 0.0) opts["m_offset"] = m_offset;
  } else {
    die("unknown subcommand");
  }
  ApiString out;
  require_ok(lorcomp_angle(space.ptr, opts.dump().c_str(), &out.ptr));
  std::cout << out.str() << "\n";
  return kExitConsistent;
}
