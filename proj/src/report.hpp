#pragma once

#include <string>

#include <json.hpp>

#include "certify.hpp"

namespace lorcomp {

inline constexpr const char* kToolName = "lorcomp";
inline constexpr const char* kToolVersion = "0.1.0";

// Self-contained report: replaying any witness with only this document and
// the embedded space descriptor reproduces its numbers. Timing lives in a
// single "timing" object so byte comparisons can strip it.
nlohmann::json report_document(const Space& space, const CertifyRun& run,
                               const Verdict& verdict, double elapsed_ms);
nlohmann::json kscan_document(const Space& space,
                              const std::vector<KScanEntry>& entries,
                              const SampleConfig& cfg, const Region& region,
                              double elapsed_ms);
nlohmann::json crosscheck_document(const Space& space,
                                   const CrossCheckReport& rep,
                                   const SampleConfig& cfg,
                                   const Region& region, double elapsed_ms);

nlohmann::json pair_record_json(const PairRecord& rec);

// Witness table. Header:
// triangle_id,x_x,x_t,y_x,y_t,z_x,z_t,p_side,p_offset,q_side,q_offset,tau,tau_bar,defect
std::string witnesses_csv(const nlohmann::json& report);

// Re-evaluates every witness in the report against the space rebuilt from
// the report's own descriptor. Returns per-witness status; `ok` only when
// each recomputed tau, tau_bar and defect is bit-identical.
struct ReplayResult {
  bool ok = false;
  int checked = 0;
  int mismatched = 0;
  std::string first_mismatch;
};
ReplayResult replay_report(const nlohmann::json& report);

// SVG figure: instance triangle polylines, the realized comparison
// triangle, and defect markers colored by sign.
std::string render_svg(const nlohmann::json& report);

}  // namespace lorcomp
