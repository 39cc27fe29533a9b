#include "spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace lorcomp {

using nlohmann::json;

const char* variant_name(MaximizerVariant v) {
  return v == MaximizerVariant::Canonical ? "canonical" : "staircase";
}

MaximizerVariant variant_from_name(const std::string& name) {
  if (name == "canonical") return MaximizerVariant::Canonical;
  if (name == "staircase") return MaximizerVariant::Staircase;
  fail(Err::InvalidArgument, "unknown maximizer variant: " + name);
}

Point Space::interpolate(const Point&, const Point&, double) const {
  fail(Err::Internal, kind() + " does not interpolate curves");
}

Point Space::sample_point(const Region& region, Rng& rng) const {
  return Point{rng.uniform(region.x0, region.x1),
               rng.uniform(region.t0, region.t1)};
}

namespace {

void check_finite(const Point& p) {
  if (!finite_point(p)) fail(Err::InvalidArgument, "non-finite point");
}

// ---------------------------------------------------------------------------
// Minkowski plane

class MinkowskiSpace final : public Space {
 public:
  std::string kind() const override { return "minkowski"; }

  Relation relate(const Point& p, const Point& q) const override {
    check_finite(p);
    check_finite(q);
    if (same_point(p, q)) return Relation::Equal;
    double dt = q.t - p.t, dx = std::fabs(q.x - p.x);
    if (dt > dx) return Relation::Chronological;
    if (dt == dx) return Relation::CausalOnly;
    return Relation::Unrelated;
  }

  double tau(const Point& p, const Point& q) const override {
    check_finite(p);
    check_finite(q);
    double dt = q.t - p.t, dx = std::fabs(q.x - p.x);
    if (dt <= dx) return 0.0;
    return std::sqrt((dt - dx) * (dt + dx));
  }

  Polyline maximizer(const Point& p, const Point& q,
                     MaximizerVariant) const override {
    Relation rel = relate(p, q);
    if (rel != Relation::Chronological && rel != Relation::CausalOnly)
      fail(Err::NoCurve, "no causal curve: points are not causally related");
    return Polyline{{p, q}};
  }

  Point interpolate(const Point& p, const Point& q, double frac) const override {
    return Point{p.x + frac * (q.x - p.x), p.t + frac * (q.t - p.t)};
  }

  bool scalable() const override { return true; }
  json descriptor() const override { return json{{"type", "minkowski"}}; }
};

// ---------------------------------------------------------------------------
// Lorentzian taxicab plane: Minkowski causality with tau = dt - |dx|.

class TaxicabSpace final : public Space {
 public:
  std::string kind() const override { return "taxicab"; }

  Relation relate(const Point& p, const Point& q) const override {
    check_finite(p);
    check_finite(q);
    if (same_point(p, q)) return Relation::Equal;
    double dt = q.t - p.t, dx = std::fabs(q.x - p.x);
    if (dt > dx) return Relation::Chronological;
    if (dt == dx) return Relation::CausalOnly;
    return Relation::Unrelated;
  }

  double tau(const Point& p, const Point& q) const override {
    check_finite(p);
    check_finite(q);
    double dt = q.t - p.t, dx = std::fabs(q.x - p.x);
    return dt > dx ? dt - dx : 0.0;
  }

  Polyline maximizer(const Point& p, const Point& q,
                     MaximizerVariant v) const override {
    Relation rel = relate(p, q);
    if (rel != Relation::Chronological && rel != Relation::CausalOnly)
      fail(Err::NoCurve, "no causal curve: points are not causally related");
    // Any causal curve with monotone spatial coordinate is maximal: its
    // tau-length telescopes to dt - |dx|. The straight segment is canonical;
    // the staircase runs the null slope first, then straight up. Both
    // degenerate to the segment when dx = 0.
    if (v == MaximizerVariant::Staircase && q.x != p.x) {
      Point mid{q.x, p.t + std::fabs(q.x - p.x)};
      return Polyline{{p, mid, q}};
    }
    return Polyline{{p, q}};
  }

  int maximizer_variant_count() const override { return 2; }

  Point interpolate(const Point& p, const Point& q, double frac) const override {
    return Point{p.x + frac * (q.x - p.x), p.t + frac * (q.t - p.t)};
  }

  bool scalable() const override { return true; }
  json descriptor() const override { return json{{"type", "taxicab"}}; }
};

// ---------------------------------------------------------------------------
// Constant-curvature model space behind the chart (x, t).

class ModelInstanceSpace final : public Space {
 public:
  explicit ModelInstanceSpace(double k) : mp_(ModelParams::curvature(k)) {
    if (k == 0.0) fail(Err::Config, "model space requires nonzero curvature");
  }

  std::string kind() const override { return "model"; }
  const ModelParams& params() const { return mp_; }

  Relation relate(const Point& p, const Point& q) const override {
    check_finite(p);
    check_finite(q);
    return model_relate(mp_, p, q);
  }

  double tau(const Point& p, const Point& q) const override {
    check_finite(p);
    check_finite(q);
    return model_tau(mp_, p, q);
  }

  Polyline maximizer(const Point& p, const Point& q,
                     MaximizerVariant) const override {
    Relation rel = relate(p, q);
    if (rel != Relation::Chronological && rel != Relation::CausalOnly)
      fail(Err::NoCurve, "no causal curve: points are not causally related");
    return Polyline{{p, q}};
  }

  Point interpolate(const Point& p, const Point& q, double frac) const override {
    double tpq = tau(p, q);
    Embed3 e = embed_interpolate(mp_, chart_to_embed(mp_, p),
                                 chart_to_embed(mp_, q), frac, tpq);
    return embed_to_chart(mp_, e);
  }

  Region default_region() const override {
    double r = mp_.r;
    if (mp_.k > 0.0) return Region{-0.6 * r, 0.6 * r, 0.0, 1.5 * r};
    // Keep anti-de Sitter sampling inside a geodesically convex chart box so
    // every chronological pair is joined by a timelike geodesic.
    return Region{-0.4 * r, 0.4 * r, 0.0, 1.2 * r};
  }

  json descriptor() const override {
    return json{{"type", "model"}, {"k", mp_.k}};
  }

 private:
  ModelParams mp_;
};

// ---------------------------------------------------------------------------
// Tabulated space: finite point set with an explicit tau matrix.

class TabulatedSpace final : public Space {
 public:
  TabulatedSpace(std::vector<std::string> ids, std::vector<Point> pts,
                 std::vector<std::vector<double>> tau_m,
                 std::vector<std::vector<bool>> causal)
      : ids_(std::move(ids)),
        pts_(std::move(pts)),
        tau_(std::move(tau_m)),
        causal_(std::move(causal)) {
    validate();
  }

  std::string kind() const override { return "tabulated"; }

  Relation relate(const Point& p, const Point& q) const override {
    size_t i = index_of(p), j = index_of(q);
    if (i == j) return Relation::Equal;
    if (!causal_[i][j]) return Relation::Unrelated;
    return tau_[i][j] > 0.0 ? Relation::Chronological : Relation::CausalOnly;
  }

  double tau(const Point& p, const Point& q) const override {
    return tau_[index_of(p)][index_of(q)];
  }

  Polyline maximizer(const Point& p, const Point& q,
                     MaximizerVariant) const override {
    size_t i = index_of(p), j = index_of(q);
    if (i == j) fail(Err::NoCurve, "degenerate pair");
    if (!causal_[i][j]) fail(Err::NoCurve, "points are not causally related");
    // Longest-tau chain through the causal partial order.
    size_t n = pts_.size();
    std::vector<double> best(n, -1.0);
    std::vector<int> next(n, -1);
    best[j] = 0.0;
    // Process in any topological-safe manner: memoized DFS.
    std::vector<int> state(n, 0);  // 0 unseen, 1 done
    std::function<double(size_t)> go = [&](size_t v) -> double {
      if (state[v]) return best[v];
      state[v] = 1;
      if (v == j) return best[v] = 0.0;
      double b = -1.0;
      for (size_t w = 0; w < n; ++w) {
        if (w == v || !causal_[v][w]) continue;
        if (w != j && !causal_[w][j]) continue;
        double sub = go(w);
        if (sub < 0.0) continue;
        double cand = tau_[v][w] + sub;
        if (cand > b) {
          b = cand;
          next[v] = static_cast<int>(w);
        }
      }
      return best[v] = b;
    };
    double total = go(i);
    if (total < 0.0) fail(Err::NoCurve, "no causal chain between the points");
    Polyline out;
    for (int v = static_cast<int>(i); v != -1; v = next[v]) {
      out.pts.push_back(pts_[v]);
      if (v == static_cast<int>(j)) break;
    }
    return out;
  }

  bool supports_interpolation() const override { return false; }

  Point sample_point(const Region& region, Rng& rng) const override {
    // Table points inside the region; fall back to the whole table.
    std::vector<size_t> in;
    for (size_t i = 0; i < pts_.size(); ++i)
      if (pts_[i].x >= region.x0 && pts_[i].x <= region.x1 &&
          pts_[i].t >= region.t0 && pts_[i].t <= region.t1)
        in.push_back(i);
    if (in.empty()) return pts_[rng.below(pts_.size())];
    return pts_[in[rng.below(in.size())]];
  }

  Region default_region() const override {
    Region r;
    r.x0 = r.x1 = pts_[0].x;
    r.t0 = r.t1 = pts_[0].t;
    for (const Point& p : pts_) {
      r.x0 = std::min(r.x0, p.x);
      r.x1 = std::max(r.x1, p.x);
      r.t0 = std::min(r.t0, p.t);
      r.t1 = std::max(r.t1, p.t);
    }
    r.x1 += 1e-9;
    r.t1 += 1e-9;
    return r;
  }

  json descriptor() const override {
    json points = json::array();
    for (size_t i = 0; i < pts_.size(); ++i)
      points.push_back({{"id", ids_[i]}, {"x", pts_[i].x}, {"t", pts_[i].t}});
    json out{{"type", "tabulated"}, {"points", points}, {"tau", tau_}};
    out["causal"] = causal_;
    return out;
  }

 private:
  size_t index_of(const Point& p) const {
    for (size_t i = 0; i < pts_.size(); ++i) {
      if (std::fabs(pts_[i].x - p.x) <= 1e-12 &&
          std::fabs(pts_[i].t - p.t) <= 1e-12)
        return i;
    }
    std::ostringstream os;
    os << "unknown point (" << p.x << ", " << p.t << ") in tabulated space";
    fail(Err::UnknownPoint, os.str());
  }

  void validate() const {
    size_t n = pts_.size();
    if (n == 0) fail(Err::Config, "tabulated space needs at least one point");
    if (tau_.size() != n || causal_.size() != n)
      fail(Err::Config, "tau/causal matrix size mismatch");
    for (size_t i = 0; i < n; ++i) {
      if (tau_[i].size() != n || causal_[i].size() != n)
        fail(Err::Config, "tau/causal matrix must be square");
      if (tau_[i][i] != 0.0)
        fail(Err::Invariant, "tau diagonal must be zero at " + ids_[i]);
      if (!causal_[i][i])
        fail(Err::Invariant, "causal relation must be reflexive at " + ids_[i]);
      for (size_t j = 0; j < n; ++j) {
        if (!(tau_[i][j] >= 0.0))
          fail(Err::Invariant, "negative tau at (" + ids_[i] + ", " + ids_[j] + ")");
        if (tau_[i][j] > 0.0 && !causal_[i][j])
          fail(Err::Invariant,
               "tau > 0 requires causal relation at (" + ids_[i] + ", " + ids_[j] + ")");
        if (i != j && causal_[i][j] && causal_[j][i])
          fail(Err::Invariant,
               "causal relation must be antisymmetric: (" + ids_[i] + ", " + ids_[j] + ")");
      }
    }
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j || !causal_[i][j]) continue;
        for (size_t k = 0; k < n; ++k) {
          if (k == j || k == i || !causal_[j][k]) continue;
          if (!causal_[i][k])
            fail(Err::Invariant, "causal relation not transitive on (" + ids_[i] +
                                     ", " + ids_[j] + ", " + ids_[k] + ")");
          if (tau_[i][k] < tau_[i][j] + tau_[j][k])
            fail(Err::Invariant, "reverse triangle inequality fails on (" +
                                     ids_[i] + ", " + ids_[j] + ", " + ids_[k] + ")");
        }
      }
  }

  std::vector<std::string> ids_;
  std::vector<Point> pts_;
  std::vector<std::vector<double>> tau_;
  std::vector<std::vector<bool>> causal_;
};

// ---------------------------------------------------------------------------
// Taxicab product of a finite metric space X with a nested instance Y:
// tau((a,b),(x,y)) = tau_Y(b,y) - d_X(a,x) when that is the causal relation.

class TaxicabProductSpace final : public Space {
 public:
  TaxicabProductSpace(std::vector<std::string> ids,
                      std::vector<std::vector<double>> dist, SpacePtr y)
      : ids_(std::move(ids)), dist_(std::move(dist)), y_(std::move(y)) {
    validate();
  }

  std::string kind() const override { return "taxicab_product"; }
  const Space& component() const { return *y_; }
  int station_count() const { return static_cast<int>(ids_.size()); }

  Relation relate(const Point& p, const Point& q) const override {
    double d = dist(p, q);
    Point pb = base(p), qb = base(q);
    if (same_point(pb, qb) && p.station == q.station) return Relation::Equal;
    double ty = y_->tau(pb, qb);
    if (ty > d) return Relation::Chronological;
    Relation ry = y_->relate(pb, qb);
    bool y_causal = ry == Relation::Chronological || ry == Relation::CausalOnly ||
                    ry == Relation::Equal;
    if (ty >= d && y_causal) return Relation::CausalOnly;
    return Relation::Unrelated;
  }

  double tau(const Point& p, const Point& q) const override {
    double d = dist(p, q);
    double ty = y_->tau(base(p), base(q));
    return ty > d ? ty - d : 0.0;
  }

  Polyline maximizer(const Point& p, const Point& q,
                     MaximizerVariant) const override {
    Relation rel = relate(p, q);
    if (rel != Relation::Chronological && rel != Relation::CausalOnly)
      fail(Err::NoCurve, "no causal curve: points are not causally related");
    // A direct causal hop telescopes to tau by construction.
    return Polyline{{p, q}};
  }

  bool supports_interpolation() const override { return false; }
  Region default_region() const override { return y_->default_region(); }

  Point sample_point(const Region& region, Rng& rng) const override {
    Point p = y_->sample_point(region, rng);
    p.station = static_cast<int32_t>(rng.below(ids_.size()));
    return p;
  }

  json descriptor() const override {
    return json{{"type", "taxicab_product"},
                {"metric_points", {{"ids", ids_}, {"distance", dist_}}},
                {"y", y_->descriptor()}};
  }

 private:
  static Point base(const Point& p) { return Point{p.x, p.t, -1}; }

  double dist(const Point& p, const Point& q) const {
    int n = station_count();
    if (p.station < 0 || p.station >= n || q.station < 0 || q.station >= n)
      fail(Err::UnknownPoint, "product point with unknown station index");
    return dist_[p.station][q.station];
  }

  void validate() const {
    size_t n = ids_.size();
    if (n == 0) fail(Err::Config, "metric space needs at least one point");
    if (dist_.size() != n) fail(Err::Config, "distance matrix size mismatch");
    for (size_t i = 0; i < n; ++i) {
      if (dist_[i].size() != n) fail(Err::Config, "distance matrix must be square");
      if (dist_[i][i] != 0.0)
        fail(Err::Invariant, "distance diagonal must be zero at " + ids_[i]);
      for (size_t j = 0; j < n; ++j) {
        if (!(dist_[i][j] >= 0.0) || dist_[i][j] != dist_[j][i])
          fail(Err::Invariant, "distances must be symmetric and nonnegative");
        if (i != j && dist_[i][j] == 0.0)
          fail(Err::Invariant, "distinct metric points need positive distance");
        for (size_t k = 0; k < n; ++k)
          if (dist_[i][k] > dist_[i][j] + dist_[j][k] + 1e-15)
            fail(Err::Invariant, "metric triangle inequality fails on (" + ids_[i] +
                                     ", " + ids_[j] + ", " + ids_[k] + ")");
      }
    }
  }

  std::vector<std::string> ids_;
  std::vector<std::vector<double>> dist_;
  SpacePtr y_;
};

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number())
    fail(Err::Config, "config field '" + key + "' must be a number");
  return j[key].get<double>();
}

}  // namespace

SpacePtr load_space(const json& config) {
  if (!config.is_object() || !config.contains("type") ||
      !config["type"].is_string())
    fail(Err::Config, "space config must be an object with a 'type' string");
  std::string type = config["type"].get<std::string>();
  if (type == "minkowski") return std::make_unique<MinkowskiSpace>();
  if (type == "taxicab") return std::make_unique<TaxicabSpace>();
  if (type == "model") {
    double k = require_number(config, "k");
    if (k == 0.0) fail(Err::Config, "model space requires nonzero 'k'");
    return std::make_unique<ModelInstanceSpace>(k);
  }
  if (type == "tabulated") {
    if (!config.contains("points") || !config["points"].is_array() ||
        !config.contains("tau") || !config["tau"].is_array())
      fail(Err::Config, "tabulated space needs 'points' and 'tau'");
    std::vector<std::string> ids;
    std::vector<Point> pts;
    for (const json& pj : config["points"]) {
      if (!pj.is_object() || !pj.contains("id"))
        fail(Err::Config, "tabulated point needs an 'id'");
      ids.push_back(pj["id"].is_string() ? pj["id"].get<std::string>()
                                         : pj["id"].dump());
      pts.push_back(Point{require_number(pj, "x"), require_number(pj, "t")});
    }
    size_t n = pts.size();
    auto read_matrix = [&](const json& mj, const char* what) {
      std::vector<std::vector<double>> m;
      if (!mj.is_array() || mj.size() != n)
        fail(Err::Config, std::string(what) + " matrix must have one row per point");
      for (const json& row : mj) {
        if (!row.is_array() || row.size() != n)
          fail(Err::Config, std::string(what) + " matrix must be square");
        std::vector<double> r;
        for (const json& v : row) {
          if (!v.is_number()) fail(Err::Config, std::string(what) + " entries must be numbers");
          r.push_back(v.get<double>());
        }
        m.push_back(std::move(r));
      }
      return m;
    };
    auto tm = read_matrix(config["tau"], "tau");
    std::vector<std::vector<bool>> causal(n, std::vector<bool>(n, false));
    if (config.contains("causal")) {
      const json& cj = config["causal"];
      if (!cj.is_array() || cj.size() != n)
        fail(Err::Config, "causal matrix must have one row per point");
      for (size_t i = 0; i < n; ++i) {
        if (!cj[i].is_array() || cj[i].size() != n)
          fail(Err::Config, "causal matrix must be square");
        for (size_t j = 0; j < n; ++j) causal[i][j] = cj[i][j].get<bool>();
      }
    } else {
      // Minimal pre-order satisfying the axioms: causal iff tau > 0 or equal.
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) causal[i][j] = i == j || tm[i][j] > 0.0;
    }
    return std::make_unique<TabulatedSpace>(std::move(ids), std::move(pts),
                                            std::move(tm), std::move(causal));
  }
  if (type == "taxicab_product") {
    if (!config.contains("metric_points") || !config.contains("y"))
      fail(Err::Config, "taxicab_product needs 'metric_points' and 'y'");
    const json& mp = config["metric_points"];
    if (!mp.is_object() || !mp.contains("ids") || !mp.contains("distance"))
      fail(Err::Config, "metric_points needs 'ids' and 'distance'");
    std::vector<std::string> ids;
    for (const json& v : mp["ids"])
      ids.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    std::vector<std::vector<double>> dist;
    for (const json& row : mp["distance"]) {
      std::vector<double> r;
      for (const json& v : row) r.push_back(v.get<double>());
      dist.push_back(std::move(r));
    }
    return std::make_unique<TaxicabProductSpace>(std::move(ids), std::move(dist),
                                                 load_space(config["y"]));
  }
  fail(Err::Config, "unknown space type: " + type);
}

SpacePtr load_space_text(const std::string& config_text) {
  json j = json::parse(config_text, nullptr, false);
  if (j.is_discarded()) fail(Err::Config, "space config is not valid JSON");
  return load_space(j);
}

SpacePtr load_preset(const std::string& preset) {
  if (preset == "minkowski") return load_space(json{{"type", "minkowski"}});
  if (preset == "taxicab") return load_space(json{{"type", "taxicab"}});
  auto starts = [&](const char* p) { return preset.rfind(p, 0) == 0; };
  if (starts("ds:") || starts("ads:")) {
    bool anti = starts("ads:");
    std::string num = preset.substr(anti ? 4 : 3);
    char* end = nullptr;
    double k = std::strtod(num.c_str(), &end);
    if (end == num.c_str() || *end != '\0' || !(k > 0.0))
      fail(Err::Config, "preset needs a positive curvature magnitude: " + preset);
    return load_space(json{{"type", "model"}, {"k", anti ? -k : k}});
  }
  fail(Err::Config, "unknown preset: " + preset);
}

// ---------------------------------------------------------------------------
// Polyline machinery

namespace {

void check_causal_curve(const Space& space, const Polyline& curve) {
  if (curve.pts.size() < 2) fail(Err::InvalidCurve, "curve needs two points");
  for (size_t i = 0; i + 1 < curve.pts.size(); ++i) {
    Relation r = space.relate(curve.pts[i], curve.pts[i + 1]);
    if (r != Relation::Chronological && r != Relation::CausalOnly)
      fail(Err::InvalidCurve,
           "consecutive curve points are not causally related at segment " +
               std::to_string(i));
  }
}

}  // namespace

double polyline_tau(const Space& space, const Polyline& curve) {
  double sum = 0.0;
  for (size_t i = 0; i + 1 < curve.pts.size(); ++i)
    sum += space.tau(curve.pts[i], curve.pts[i + 1]);
  return sum;
}

TauLengthResult tau_length(const Space& space, const Polyline& curve,
                           int depth) {
  check_causal_curve(space, curve);
  if (depth < 0) depth = 0;
  TauLengthResult res;
  bool refinable = space.supports_interpolation();
  for (int d = 0; d <= depth; ++d) {
    if (!refinable && d > 0) {
      res.estimates.push_back(res.estimates.back());
      continue;
    }
    int parts = 1 << d;
    double sum = 0.0;
    for (size_t i = 0; i + 1 < curve.pts.size(); ++i) {
      const Point& u = curve.pts[i];
      const Point& v = curve.pts[i + 1];
      Point prev = u;
      for (int s = 1; s <= parts; ++s) {
        Point nxt = s == parts
                        ? v
                        : space.interpolate(u, v, static_cast<double>(s) / parts);
        sum += space.tau(prev, nxt);
        prev = nxt;
      }
    }
    res.estimates.push_back(sum);
  }
  res.value = res.estimates.back();
  return res;
}

CurvePoint point_at_tau(const Space& space, const Polyline& curve, double s) {
  if (curve.pts.empty()) fail(Err::InvalidCurve, "empty curve");
  double total = polyline_tau(space, curve);
  double eps = 1e-9 * std::max(1.0, total);
  if (s < -eps || s > total + eps)
    fail(Err::InvalidArgument, "tau offset out of range");
  s = std::clamp(s, 0.0, total);
  if (!space.supports_interpolation()) {
    // Snap to the nearest vertex in cumulative tau.
    double cum = 0.0, best_err = std::fabs(s);
    Point best = curve.pts.front();
    for (size_t i = 0; i + 1 < curve.pts.size(); ++i) {
      cum += space.tau(curve.pts[i], curve.pts[i + 1]);
      double err = std::fabs(s - cum);
      if (err < best_err) {
        best_err = err;
        best = curve.pts[i + 1];
      }
    }
    return CurvePoint{best, best_err};
  }
  double cum = 0.0;
  for (size_t i = 0; i + 1 < curve.pts.size(); ++i) {
    double leg = space.tau(curve.pts[i], curve.pts[i + 1]);
    if (s <= cum + leg || i + 2 == curve.pts.size()) {
      if (leg <= 0.0) return CurvePoint{curve.pts[i], 0.0};
      double frac = std::clamp((s - cum) / leg, 0.0, 1.0);
      if (frac == 0.0) return CurvePoint{curve.pts[i], 0.0};
      if (frac == 1.0) return CurvePoint{curve.pts[i + 1], 0.0};
      return CurvePoint{space.interpolate(curve.pts[i], curve.pts[i + 1], frac),
                        0.0};
    }
    cum += leg;
  }
  return CurvePoint{curve.pts.back(), 0.0};
}

Polyline curve_prefix(const Space& space, const Polyline& curve, double s) {
  CurvePoint cp = point_at_tau(space, curve, s);
  Polyline out;
  out.pts.push_back(curve.pts.front());
  double cum = 0.0;
  for (size_t i = 0; i + 1 < curve.pts.size(); ++i) {
    double leg = space.tau(curve.pts[i], curve.pts[i + 1]);
    if (cum + leg >= s) break;
    cum += leg;
    out.pts.push_back(curve.pts[i + 1]);
  }
  if (!same_point(out.pts.back(), cp.p)) out.pts.push_back(cp.p);
  if (out.pts.size() < 2) out.pts.push_back(cp.p);
  return out;
}

Polyline curve_suffix(const Space& space, const Polyline& curve, double s) {
  CurvePoint cp = point_at_tau(space, curve, s);
  Polyline out;
  out.pts.push_back(cp.p);
  double cum = 0.0;
  for (size_t i = 0; i + 1 < curve.pts.size(); ++i) {
    double leg = space.tau(curve.pts[i], curve.pts[i + 1]);
    cum += leg;
    if (cum > s && !same_point(curve.pts[i + 1], cp.p))
      out.pts.push_back(curve.pts[i + 1]);
  }
  if (out.pts.size() < 2) out.pts.push_back(curve.pts.back());
  return out;
}

}  // namespace lorcomp
