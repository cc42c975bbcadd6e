#pragma once

#include <string>
#include <vector>

#include "chargeplan/config.hpp"
#include "chargeplan/horizons.hpp"
#include "chargeplan/netgraph.hpp"

namespace chargeplan {

// Fixed-format numeric rendering keeps every table byte-stable across runs:
// money as MEUR with 3 decimals, coverage as whole veh/h.
std::string format_fixed(double v, int decimals);
std::string format_meur(double v);
std::string format_vehh(double v);
std::string format_hash(uint64_t h); // 16 hex digits

std::string join_levels(const std::vector<int>& v); // '|'-separated

std::string render_centrality_csv(const CentralityReport& report);
std::string render_front_csv(const std::vector<HorizonSolution>& front);
std::string render_timeline_csv(const PlanTimeline& timeline);
std::string render_sweep_csv(const std::vector<SweepRow>& rows);
std::string render_candidates_summary_csv(const CandidatePool& pool);
std::string render_candidates_geojson(const CandidatePool& pool, CoordinateMode mode);
std::string render_plan_geojson(const PlanningInstance& inst, const PlanTimeline& timeline);

// Run manifest: effective config + hashes + seed; no timestamps, so reruns
// of the same configuration are byte-identical.
std::string render_manifest(const RunConfig& cfg, const std::string& command,
                            const std::vector<std::string>& outputs,
                            const PlanningInstance* inst = nullptr);

void write_file(const std::string& path, const std::string& content);

} // namespace chargeplan
