#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "angles.hpp"
#include "spaces.hpp"

namespace lorcomp {

enum class PairMode { FullPairs, CevianOnly };
enum class Direction { Below, Above };
const char* pair_mode_name(PairMode m);
PairMode pair_mode_from_name(const std::string& name);
const char* direction_name(Direction d);
Direction direction_from_name(const std::string& name);

// A vertex-to-opposite-side pair given as side fractions, attached to every
// injected triangle.
struct InjectedPair {
  Side p_side = Side::XY;
  double p_frac = 0.0;
  Side q_side = Side::YZ;
  double q_frac = 0.0;
};

struct SampleConfig {
  uint64_t seed = 1;
  int triangles = 100;
  int pairs = 10;
  PairMode mode = PairMode::FullPairs;
  double tolerance = -1.0;  // < 0: 1e-9 for model instances, 1e-7 otherwise
  MaximizerVariant variant = MaximizerVariant::Canonical;
  bool sweep_variants = false;
  double min_side = 1e-3;
  int max_witnesses = 64;
  std::vector<std::array<Point, 3>> injected_triangles;
  std::vector<InjectedPair> injected_pairs;
};

// The injected triangle and witness pairs of the taxicab construction.
void inject_paper_triangle(SampleConfig& cfg, double scale = 1.0);

struct TriangleRecord {
  int id = -1;
  bool injected = false;
  bool degenerate = false;
  Point x, y, z;
  double a = 0.0, b = 0.0, c = 0.0;
};

struct PairRecord {
  int triangle_id = -1;
  int pair_index = -1;
  int orientation = 0;  // 1 when the drawn pair was evaluated reversed
  MaximizerVariant variant = MaximizerVariant::Canonical;
  SideOffset p, q;
  Point p_point, q_point;
  double snap = 0.0;  // total snapping offset (tabulated spaces)
  double tau = 0.0;
  double tau_bar = 0.0;
  double defect = 0.0;  // tau_bar - tau
};

struct RunCounts {
  long rejections = 0;
  int degenerate_triangles = 0;
  long pairs_drawn = 0;
  long data_recorded = 0;
  long pairs_skipped = 0;  // neither tau nor tau_bar positive
};

// Shared sample: triangles plus the defect data of every evaluated pair.
struct CertifyRun {
  double k = 0.0;
  double scale = 1.0;
  Region region;
  SampleConfig cfg;
  std::vector<TriangleRecord> triangles;
  std::vector<PairRecord> data;
  RunCounts counts;
};

struct Verdict {
  Direction direction = Direction::Below;
  double k = 0.0;
  bool violated = false;
  double tolerance = 0.0;
  double min_defect = 0.0;
  double max_defect = 0.0;
  std::optional<PairRecord> min_witness;  // extremal defects
  std::optional<PairRecord> max_witness;
  std::vector<PairRecord> witnesses;  // violating pairs, capped
  long violation_count = 0;
  RunCounts counts;
};

// Rejection sampler for timelike triangles inside the region, all sides
// passing the size bounds for k. Deterministic per (seed, triangle id).
std::vector<GeodesicTriangle> sample_triangles(const Space& space,
                                               const Region& region, double k,
                                               const SampleConfig& cfg);

CertifyRun certify_run(const Space& space, const Region& region, double k,
                       const SampleConfig& cfg, double scale = 1.0);
Verdict make_verdict(const CertifyRun& run, Direction dir);
Verdict certify_bound(const Space& space, const Region& region, double k,
                      Direction dir, const SampleConfig& cfg);

// Per-k verdicts over a curvature grid with shared triangle samples, scaled
// (scalable instances only) so each k's size bounds hold. fixed_scale > 0
// pins the scale for every k.
struct KScanEntry {
  double k = 0.0;
  double scale = 1.0;
  Verdict below;
  Verdict above;
};
std::vector<KScanEntry> k_scan(const Space& space, const Region& region,
                               const std::vector<double>& ks,
                               const SampleConfig& cfg,
                               double fixed_scale = 0.0);

// Four lower-bound detectors evaluated on one shared sample:
//   A full-pair defects, B cevian defects, C theta-monotonicity over nested
//   scales, D Toponogov defects plus adjacent-angle sums.
// Detector disagreement is reported, never reconciled.
enum class DetectorVerdict { Consistent, Violated, Inconclusive };
const char* detector_verdict_name(DetectorVerdict v);

struct DetectorReport {
  std::string name;
  DetectorVerdict verdict = DetectorVerdict::Inconclusive;
  long checks = 0;
  long violations = 0;
  long skipped = 0;
  double worst = 0.0;  // most violating margin observed
};

struct CrossCheckReport {
  double k = 0.0;
  std::array<DetectorReport, 4> detectors;
  bool agreement[4][4] = {};
  bool all_agree = false;
};
CrossCheckReport criteria_cross_check(const Space& space, const Region& region,
                                      double k, const SampleConfig& cfg,
                                      const AngleSchedule& sched = {});

}  // namespace lorcomp
