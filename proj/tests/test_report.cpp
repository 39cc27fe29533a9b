#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "report.hpp"

using namespace lorcomp;
using nlohmann::json;

namespace {

json taxicab_report() {
  auto taxi = load_preset("taxicab");
  SampleConfig cfg;
  cfg.seed = 1;
  cfg.triangles = 10;
  cfg.pairs = 6;
  inject_paper_triangle(cfg);
  CertifyRun run = certify_run(*taxi, taxi->default_region(), 0.0, cfg);
  Verdict below = make_verdict(run, Direction::Below);
  return report_document(*taxi, run, below, 12.5);
}

// Minimal well-formedness scan: tags must nest and attributes stay quoted.
bool xml_well_formed(const std::string& text) {
  std::vector<std::string> stack;
  size_t i = 0;
  while ((i = text.find('<', i)) != std::string::npos) {
    size_t end = text.find('>', i);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(i + 1, end - i - 1);
    i = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    bool closing = tag[0] == '/';
    bool self_closing = tag.back() == '/';
    std::string name = tag.substr(closing ? 1 : 0);
    size_t sp = name.find_first_of(" \t\n/");
    if (sp != std::string::npos) name = name.substr(0, sp);
    if (name.empty()) return false;
    if (closing) {
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else if (!self_closing) {
      stack.push_back(name);
    }
  }
  return stack.empty();
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
  size_t n = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("report documents carry the full reproduction data") {
  json rep = taxicab_report();
  CHECK(rep["tool"]["name"] == "lorcomp");
  CHECK(rep["space"]["type"] == "taxicab");
  CHECK(rep["direction"] == "below");
  CHECK(rep["verdict"]["status"] == "violated");
  CHECK(rep["config"]["seed"] == 1);
  REQUIRE(rep["witnesses"].is_array());
  REQUIRE_FALSE(rep["witnesses"].empty());
  for (const json& w : rep["witnesses"]) {
    CHECK(w.contains("x"));
    CHECK(w.contains("sides"));
    CHECK(w.contains("tau"));
    CHECK(w.contains("tau_bar"));
  }
  CHECK(rep.contains("timing"));
}

TEST_CASE("witness tables use the documented csv header") {
  json rep = taxicab_report();
  std::string csv = witnesses_csv(rep);
  std::string header = csv.substr(0, csv.find('\n'));
  CHECK(header ==
        "triangle_id,x_x,x_t,y_x,y_t,z_x,z_t,p_side,p_offset,q_side,q_offset,"
        "tau,tau_bar,defect");
  size_t rows = count_occurrences(csv, "\n") - 1;
  CHECK(rows == rep["witnesses"].size());
}

TEST_CASE("witness replay is bit-exact") {
  json rep = taxicab_report();
  ReplayResult res = replay_report(rep);
  CHECK(res.ok);
  CHECK(res.checked == static_cast<int>(rep["witnesses"].size()));
  CHECK(res.mismatched == 0);

  // Tampering with a witness value must be caught.
  json bad = rep;
  bad["witnesses"][0]["tau"] = bad["witnesses"][0]["tau"].get<double>() + 1e-7;
  ReplayResult broken = replay_report(bad);
  CHECK_FALSE(broken.ok);
  CHECK(broken.mismatched >= 1);
}

TEST_CASE("svg rendering is well-formed and marks defects") {
  json rep = taxicab_report();
  std::string svg = render_svg(rep);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(xml_well_formed(svg));
  CHECK(count_occurrences(svg, "<polyline") >= 2);
  CHECK(count_occurrences(svg, "defect-neg") >= 1);

  // Consistent flat run: triangles only, no markers.
  auto mink = load_preset("minkowski");
  SampleConfig cfg;
  cfg.seed = 2;
  cfg.triangles = 5;
  cfg.pairs = 4;
  CertifyRun run = certify_run(*mink, mink->default_region(), 0.0, cfg);
  json clean = report_document(*mink, run, make_verdict(run, Direction::Below), 1.0);
  CHECK(clean["witnesses"].empty());
  std::string svg2 = render_svg(clean);
  CHECK(xml_well_formed(svg2));
  CHECK(count_occurrences(svg2, "<polyline") >= 2);
  CHECK(count_occurrences(svg2, "defect-") == 0);

  CHECK_THROWS_AS(render_svg(json{{"k", 0.0}}), LorError);
}

TEST_CASE("reports are byte-identical across runs modulo timing") {
  auto make = [](double ms) {
    auto taxi = load_preset("taxicab");
    SampleConfig cfg;
    cfg.seed = 42;
    cfg.triangles = 20;
    cfg.pairs = 5;
    inject_paper_triangle(cfg);
    CertifyRun run = certify_run(*taxi, taxi->default_region(), 0.0, cfg);
    json rep = report_document(*taxi, run, make_verdict(run, Direction::Below), ms);
    rep.erase("timing");
    return rep.dump(2);
  };
  CHECK(make(1.0) == make(99.0));
}
