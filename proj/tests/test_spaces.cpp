#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "oracles.hpp"
#include "rng.hpp"
#include "spaces.hpp"

using namespace lorcomp;
using nlohmann::json;

namespace {

Point random_point(Rng& rng, const Region& r) {
  return Point{rng.uniform(r.x0, r.x1), rng.uniform(r.t0, r.t1)};
}

bool causal(Relation r) {
  return r == Relation::Chronological || r == Relation::CausalOnly ||
         r == Relation::Equal;
}

// Pre-length axioms on random triples: push-up, positivity iff chronology,
// and the reverse triangle inequality.
void check_axioms_sampled(const Space& space, uint64_t seed, int n,
                          double tol) {
  Rng rng(seed);
  Region box = space.default_region();
  long pushups = 0, triangles = 0;
  for (int i = 0; i < n; ++i) {
    Point p = random_point(rng, box);
    Point q = random_point(rng, box);
    Point r = random_point(rng, box);
    if (space.kind() == "taxicab_product") {
      p.station = static_cast<int32_t>(rng.below(2));
      q.station = static_cast<int32_t>(rng.below(2));
      r.station = static_cast<int32_t>(rng.below(2));
    }
    // Positivity iff chronology, both orders.
    CHECK((space.tau(p, q) > 0.0) ==
          (space.relate(p, q) == Relation::Chronological));
    Relation pq = space.relate(p, q);
    Relation qr = space.relate(q, r);
    // Push-up through the middle point.
    if ((pq == Relation::Chronological && causal(qr)) ||
        (causal(pq) && qr == Relation::Chronological)) {
      ++pushups;
      CHECK(space.relate(p, r) == Relation::Chronological);
    }
    if (causal(pq) && causal(qr)) {
      ++triangles;
      CHECK(space.tau(p, r) >= space.tau(p, q) + space.tau(q, r) - tol);
    }
  }
  // The sample must actually exercise the properties.
  CHECK(pushups > n / 200);
  CHECK(triangles > n / 200);
}

}  // namespace

TEST_CASE("relations classify the worked pairs") {
  auto mink = load_preset("minkowski");
  auto taxi = load_preset("taxicab");
  CHECK(mink->relate({0, 0}, {0, 6}) == Relation::Chronological);
  CHECK(taxi->relate({0, 0}, {2, 2}) == Relation::CausalOnly);
  CHECK(taxi->tau({0, 0}, {2, 2}) == 0.0);
  CHECK(mink->relate({0, 0}, {3, 2}) == Relation::Unrelated);
  CHECK(mink->relate({1, 1}, {1, 1}) == Relation::Equal);
}

TEST_CASE("taxicab time separation reproduces the printed values") {
  auto taxi = load_preset("taxicab");
  CHECK(taxi->tau({0, 0}, {0.25, 6.5}) == 6.25);
  CHECK(taxi->tau({0, 0}, {-1.25, 4.0}) == 2.75);
  CHECK(taxi->tau({0, 0}, {-2, 3}) == 1.0);
  auto mink = load_preset("minkowski");
  CHECK(mink->tau({0, 0}, {2.0 * std::sqrt(2.0), 3}) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("maximizers telescope to tau") {
  auto taxi = load_preset("taxicab");
  Polyline seg = taxi->maximizer({0, 0}, {-2, 3});
  CHECK(seg.pts.size() == 2);
  TauLengthResult tl = tau_length(*taxi, seg, 8);
  for (double e : tl.estimates) CHECK(e == doctest::Approx(1.0).epsilon(1e-12));

  auto mink = load_preset("minkowski");
  Polyline vseg = mink->maximizer({0, 0}, {0, 6});
  CHECK(tau_length(*mink, vseg, 6).value == doctest::Approx(6.0).epsilon(1e-12));

  // Staircase variant: null slope first, then straight up; telescopes to
  // tau on every leg split. With no spatial displacement it degenerates to
  // the straight segment.
  Polyline stair = taxi->maximizer({0, 0}, {-2, 3}, MaximizerVariant::Staircase);
  CHECK(stair.pts.size() == 3);
  CHECK(tau_length(*taxi, stair, 8).value == doctest::Approx(1.0).epsilon(1e-12));
  Polyline vert = taxi->maximizer({0, 0}, {0, 4}, MaximizerVariant::Staircase);
  CHECK(vert.pts.size() == 2);
  TauLengthResult vtl = tau_length(*taxi, vert, 10);
  for (double e : vtl.estimates) CHECK(e == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(taxi->maximizer({0, 0}, {3, 2}), LorError);
}

TEST_CASE("tau-length estimates decrease under refinement") {
  auto mink = load_preset("minkowski");
  Polyline bent{{Point{0, 0}, Point{1, 2}, Point{0, 4}}};
  TauLengthResult tl = tau_length(*mink, bent, 10);
  CHECK(tl.value == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(tl.value < mink->tau({0, 0}, {0, 4}));
  for (size_t i = 1; i < tl.estimates.size(); ++i)
    CHECK(tl.estimates[i] <= tl.estimates[i - 1] + 1e-12);

  auto taxi = load_preset("taxicab");
  Polyline seg{{Point{-2, 3}, Point{1, 7}}};
  TauLengthResult ttl = tau_length(*taxi, seg, 10);
  for (double e : ttl.estimates) CHECK(e == doctest::Approx(1.0).epsilon(1e-12));

  Polyline bad{{Point{0, 0}, Point{3, 1}}};
  CHECK_THROWS_AS(tau_length(*taxi, bad, 2), LorError);
}

TEST_CASE("model instances expose the chart geometry") {
  auto ds = load_preset("ds:1");
  auto ads = load_preset("ads:1");
  CHECK(ds->tau({0, 0}, {0, 1.2}) == doctest::Approx(1.2).epsilon(1e-13));
  CHECK(ads->tau({0, 0}, {0, 1.1}) == doctest::Approx(1.1).epsilon(1e-13));
  // Geodesic midpoint halves the separation.
  Point mid = ds->interpolate({0.1, 0.05}, {0.3, 1.1}, 0.5);
  double whole = ds->tau({0.1, 0.05}, {0.3, 1.1});
  CHECK(ds->tau({0.1, 0.05}, mid) == doctest::Approx(0.5 * whole).epsilon(1e-11));
  CHECK(ds->tau(mid, {0.3, 1.1}) == doctest::Approx(0.5 * whole).epsilon(1e-11));
}

TEST_CASE("load_space validates configs and invariants") {
  CHECK(load_space_text(R"({"type":"minkowski"})")->kind() == "minkowski");
  CHECK(load_space_text(R"({"type":"taxicab"})")->kind() == "taxicab");
  CHECK_THROWS_AS(load_space_text("{nonsense"), LorError);
  CHECK_THROWS_AS(load_space_text(R"({"type":"nosuch"})"), LorError);
  CHECK_THROWS_AS(load_space_text(R"({"type":"model","k":0})"), LorError);

  // Reverse triangle violation must name the witness triple.
  json bad{{"type", "tabulated"},
           {"points", json::array({json{{"id", "p"}, {"x", 0}, {"t", 0}},
                                   json{{"id", "q"}, {"x", 0}, {"t", 1}},
                                   json{{"id", "r"}, {"x", 0}, {"t", 2}}})},
           {"tau", json::array({json::array({0, 1, 1.5}),
                                json::array({0, 0, 1}),
                                json::array({0, 0, 0})})}};
  try {
    load_space(bad);
    CHECK(false);
  } catch (const LorError& e) {
    CHECK(e.code() == Err::Invariant);
    CHECK(std::string(e.what()).find("(p, q, r)") != std::string::npos);
  }
}

TEST_CASE("tabulated spaces: chains, snapping, unknown points") {
  json cfg{{"type", "tabulated"},
           {"points", json::array({json{{"id", "p"}, {"x", 0}, {"t", 0}},
                                   json{{"id", "q"}, {"x", 0.2}, {"t", 1}},
                                   json{{"id", "r"}, {"x", 0}, {"t", 2.5}}})},
           {"tau", json::array({json::array({0, 1, 2.5}),
                                json::array({0, 0, 1.2}),
                                json::array({0, 0, 0})})}};
  auto tab = load_space(cfg);
  CHECK(tab->tau({0, 0}, {0, 2.5}) == 2.5);
  CHECK(tab->relate({0, 0}, {0.2, 1}) == Relation::Chronological);
  CHECK_THROWS_AS(tab->tau({5, 5}, {0, 0}), LorError);

  // The longest chain routes through the middle point only when it pays.
  Polyline chain = tab->maximizer({0, 0}, {0, 2.5});
  CHECK(chain.pts.size() == 2);  // direct tau 2.5 beats 1 + 1.2
  CHECK(polyline_tau(*tab, chain) == 2.5);

  json cfg2 = cfg;
  cfg2["tau"][0][2] = 2.2;  // now the two-hop chain is longest
  auto tab2 = load_space(cfg2);
  Polyline chain2 = tab2->maximizer({0, 0}, {0, 2.5});
  CHECK(chain2.pts.size() == 3);
  CHECK(polyline_tau(*tab2, chain2) == 2.2);

  // Side points snap to chain nodes and report the offset error.
  CurvePoint cp = point_at_tau(*tab2, chain2, 0.8);
  CHECK(cp.snap == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(same_point(cp.p, Point{0.2, 1}));
}

TEST_CASE("taxicab product with a one-point factor reduces to its component") {
  json cfg{{"type", "taxicab_product"},
           {"metric_points", {{"ids", json::array({"o"})},
                              {"distance", json::array({json::array({0})})}}},
           {"y", {{"type", "taxicab"}}}};
  auto prod = load_space(cfg);
  auto taxi = load_preset("taxicab");
  Rng rng(7);
  Region box = taxi->default_region();
  for (int i = 0; i < 2000; ++i) {
    Point p = random_point(rng, box);
    Point q = random_point(rng, box);
    Point pp = p, qq = q;
    pp.station = 0;
    qq.station = 0;
    CHECK(prod->tau(pp, qq) == taxi->tau(p, q));
    CHECK(prod->relate(pp, qq) == taxi->relate(p, q));
  }
}

TEST_CASE("taxicab product over two stations") {
  json cfg{{"type", "taxicab_product"},
           {"metric_points",
            {{"ids", json::array({"u", "v"})},
             {"distance", json::array({json::array({0.0, 0.5}),
                                       json::array({0.5, 0.0})})}}},
           {"y", {{"type", "taxicab"}}}};
  auto prod = load_space(cfg);
  Point a{0, 0, 0}, b{0, 2, 1};
  // Crossing stations costs the metric distance.
  CHECK(prod->tau(a, b) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(prod->relate(a, b) == Relation::Chronological);
  Point c{0, 0.5, 1};
  CHECK(prod->tau(a, c) == 0.0);
  CHECK(prod->relate(a, c) == Relation::CausalOnly);
  Polyline hop = prod->maximizer(a, b);
  CHECK(polyline_tau(*prod, hop) == prod->tau(a, b));
  CHECK_THROWS_AS(prod->tau(Point{0, 0, 5}, b), LorError);
}

TEST_CASE("pre-length axioms hold on sampled triples") {
  check_axioms_sampled(*load_preset("minkowski"), 1, 10000, 1e-12);
  check_axioms_sampled(*load_preset("taxicab"), 2, 10000, 1e-12);
  check_axioms_sampled(*load_preset("ds:1"), 3, 10000, 1e-12);
  check_axioms_sampled(*load_preset("ads:1"), 4, 10000, 1e-12);

  json prod_cfg{{"type", "taxicab_product"},
                {"metric_points",
                 {{"ids", json::array({"u", "v"})},
                  {"distance", json::array({json::array({0.0, 0.4}),
                                            json::array({0.4, 0.0})})}}},
                {"y", {{"type", "taxicab"}}}};
  check_axioms_sampled(*load_space(prod_cfg), 5, 10000, 1e-12);

  json tab_cfg{{"type", "tabulated"},
               {"points", json::array({json{{"id", "p"}, {"x", 0}, {"t", 0}},
                                       json{{"id", "q"}, {"x", 0.2}, {"t", 1}},
                                       json{{"id", "r"}, {"x", 0}, {"t", 2.5}},
                                       json{{"id", "s"}, {"x", 1}, {"t", 3}}})},
               {"tau", json::array({json::array({0, 1, 2.5, 3.0}),
                                    json::array({0, 0, 1.2, 1.4}),
                                    json::array({0, 0, 0, 0.2}),
                                    json::array({0, 0, 0, 0})})}};
  auto tab = load_space(tab_cfg);
  // Exact axioms over every triple of table points.
  std::vector<Point> pts{{0, 0}, {0.2, 1}, {0, 2.5}, {1, 3}};
  for (const Point& p : pts)
    for (const Point& q : pts) {
      CHECK((tab->tau(p, q) > 0.0) ==
            (tab->relate(p, q) == Relation::Chronological));
      for (const Point& r : pts) {
        Relation pq = tab->relate(p, q);
        Relation qr = tab->relate(q, r);
        if ((pq == Relation::Chronological && causal(qr)) ||
            (causal(pq) && qr == Relation::Chronological))
          CHECK(tab->relate(p, r) == Relation::Chronological);
        if (causal(pq) && causal(qr))
          CHECK(tab->tau(p, r) >= tab->tau(p, q) + tab->tau(q, r));
      }
    }
}

TEST_CASE("descriptor round-trips through load_space") {
  for (const char* preset : {"minkowski", "taxicab", "ds:0.5", "ads:2"}) {
    auto space = load_preset(preset);
    auto again = load_space(space->descriptor());
    CHECK(again->kind() == space->kind());
    CHECK(again->descriptor() == space->descriptor());
  }
}

TEST_CASE("curve prefix and suffix split at the requested offset") {
  auto taxi = load_preset("taxicab");
  Polyline stair = taxi->maximizer({0, 0}, {-2, 3}, MaximizerVariant::Staircase);
  Polyline pre = curve_prefix(*taxi, stair, 0.4);
  Polyline suf = curve_suffix(*taxi, stair, 0.4);
  CHECK(polyline_tau(*taxi, pre) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(polyline_tau(*taxi, suf) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(same_point(pre.pts.front(), Point{0, 0}));
  CHECK(same_point(suf.pts.back(), Point{-2, 3}));
  CHECK(same_point(pre.pts.back(), suf.pts.front()));
}
