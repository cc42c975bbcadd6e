#pragma once

#include <map>
#include <string>
#include <vector>

#include "chargeplan/geodata.hpp"
#include "chargeplan/netgraph.hpp"

namespace chargeplan {

enum class SiteKind { station, togo };
enum class SiteSource { existing, network_recommended, provider_selected, togo_poi };

const char* site_kind_name(SiteKind kind);
const char* site_source_name(SiteSource source);
SiteKind site_kind_from_name(const std::string& name);
SiteSource site_source_from_name(const std::string& name);

struct CandidateSite {
    std::string site_id;
    SiteKind kind = SiteKind::station;
    SiteSource source = SiteSource::existing;
    GeoPoint location;
    double q = 0.0;        // coverable freight flow, veh/h
    int initial_level = 0; // horizon-0 scale (station) or pile count (togo)
};

struct CandidatePool {
    std::vector<CandidateSite> stations;
    std::vector<CandidateSite> togo;

    std::map<SiteSource, int> provenance_counts() const;
    int size() const { return static_cast<int>(stations.size() + togo.size()); }
    // Deterministic order: natural site id within each list.
    void sort_sites();
};

// fuel_station/truck_stop/parking_area -> station candidates (existing
// facilities); supermarket -> to-go candidates. POIs beyond radius_m of the
// network are dropped.
CandidatePool select_from_pois(const std::vector<Poi>& pois, const HighwayGraph& g,
                               double radius_m, double densify_step_m = 100.0);

struct NetworkSelectOptions {
    int sites_per_node = 1;      // node site + offsets along incident arcs
    double offset_m = 200.0;     // offset of arm sites from the junction
    double dedupe_radius_m = 250.0;
};

// Station candidates near the top-k ranked junctions, skipping any location
// within dedupe_radius of an already accepted candidate.
std::vector<CandidateSite> select_from_network(const CentralityReport& report,
                                               const HighwayGraph& g, int top_k,
                                               const NetworkSelectOptions& opts,
                                               const std::vector<CandidateSite>& existing);

// Assigns each site the q of its nearest demand point (ties resolved toward
// the lowest demand point index). The mode is the network's coordinate mode.
CandidatePool attach_demand(CandidatePool pool, const std::vector<DemandPoint>& demand,
                            CoordinateMode mode = CoordinateMode::wgs84);

// site_id -> initial scale/pile count.
std::map<std::string, int> load_layout(const std::string& path);

// Union of the partial pools plus provider sites (buffer-filtered), with
// horizon-0 levels applied from layout0. Duplicate site ids are an error.
CandidatePool merge_pool(const std::vector<CandidatePool>& parts,
                         const std::vector<CandidateSite>& provider_sites,
                         const std::map<std::string, int>& layout0, const HighwayGraph& g,
                         double radius_m, double densify_step_m = 100.0);

// Provider file: site_id, lon, lat (stations chosen externally).
std::vector<CandidateSite> load_provider_sites(const std::string& path,
                                               CoordinateMode mode = CoordinateMode::wgs84);

struct PreparedSites {
    CoordinateMode mode = CoordinateMode::wgs84;
    CandidatePool pool;
};

// A ready-made candidate pool: GeoJSON points carrying site_id, kind, q and
// optionally initial_level/source. Used to optimize an instance directly,
// skipping network screening and demand assignment.
PreparedSites load_prepared_sites(const std::string& path);

} // namespace chargeplan
