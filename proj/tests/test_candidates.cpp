#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "chargeplan/candidates.hpp"
#include "chargeplan/errors.hpp"
#include "oracles.hpp"

using namespace chargeplan;

namespace {

const std::string kFixtures = FIXTURE_DIR;

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    out.close();
    return path.string();
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error to be thrown");
    return Errc::internal;
}

// One straight 10 km planar arc from (0,0) to (10000,0).
HighwayGraph line_network() {
    HighwayGraphBuilder b(CoordinateMode::planar);
    b.add_node("a", {0, 0}).add_node("b", {10000, 0});
    b.add_arc("r1", "a", "b", 10000.0);
    return b.build();
}

Poi make_poi(const std::string& id, PoiLabel label, double x, double y) {
    Poi p;
    p.id = id;
    p.label = label;
    p.location = {x, y};
    return p;
}

} // namespace

TEST_CASE("poi screening applies label rules and the buffer") {
    const HighwayGraph g = line_network();
    const std::vector<Poi> pois{
        make_poi("fs1", PoiLabel::fuel_station, 2000, 300),
        make_poi("ts1", PoiLabel::truck_stop, 4000, -200),
        make_poi("pa1", PoiLabel::parking_area, 6000, 450),
        make_poi("sm1", PoiLabel::supermarket, 8000, 300),
        make_poi("mu1", PoiLabel::other, 5000, 100),         // unsupported label
        make_poi("fs2", PoiLabel::fuel_station, 5000, 2000), // 2 km off the highway
    };
    const CandidatePool pool = select_from_pois(pois, g, 500.0);
    REQUIRE(pool.stations.size() == 3);
    REQUIRE(pool.togo.size() == 1);
    CHECK(pool.stations[0].site_id == "fs1");
    CHECK(pool.stations[0].source == SiteSource::existing);
    CHECK(pool.togo[0].site_id == "sm1");
    CHECK(pool.togo[0].source == SiteSource::togo_poi);
    for (const auto& site : pool.stations) CHECK(within_buffer(site.location, g, 500.0));

    const auto counts = pool.provenance_counts();
    CHECK(counts.at(SiteSource::existing) == 3);
    CHECK(counts.at(SiteSource::togo_poi) == 1);

    CHECK(code_of([&] { select_from_pois(pois, g, 0.0); }) == Errc::invalid_config);
}

TEST_CASE("network recommendation respects top-k, arms and dedupe") {
    // Plus-shaped planar graph: center c with four 2 km arms.
    HighwayGraphBuilder b(CoordinateMode::planar);
    b.add_node("c", {0, 0});
    b.add_node("e", {2000, 0}).add_node("w", {-2000, 0});
    b.add_node("n", {0, 2000}).add_node("s", {0, -2000});
    b.add_arc("r1", "c", "e", 2000.0).add_arc("r2", "c", "w", 2000.0);
    b.add_arc("r3", "c", "n", 2000.0).add_arc("r4", "c", "s", 2000.0);
    const HighwayGraph g = b.build();
    const CentralityReport report = composite_rank(g);
    CHECK(report.rows[0].node_id == "c");

    NetworkSelectOptions opts;
    opts.sites_per_node = 1;
    const auto single = select_from_network(report, g, 1, opts, {});
    REQUIRE(single.size() == 1);
    CHECK(single[0].site_id == "net:c");
    CHECK(single[0].source == SiteSource::network_recommended);
    CHECK(single[0].location == g.node_pos[g.index_of("c")]);

    // Arm sites appear once they clear the dedupe radius around the junction
    // site, in deterministic neighbor order.
    opts.sites_per_node = 3;
    opts.offset_m = 400.0;
    opts.dedupe_radius_m = 250.0;
    const auto armed = select_from_network(report, g, 1, opts, {});
    CHECK(armed.size() == 3);
    for (size_t i = 1; i < armed.size(); ++i) {
        CHECK(geo_distance(armed[0].location, armed[i].location, g.mode) >
              opts.dedupe_radius_m);
    }

    // An existing candidate sitting on the junction suppresses the node site.
    CandidateSite existing;
    existing.site_id = "fs9";
    existing.location = {50, 0};
    const auto blocked = select_from_network(report, g, 1, opts, {existing});
    for (const auto& site : blocked) CHECK(site.site_id != "net:c");

    // Cardinality bound holds over all nodes with every site accepted.
    opts.sites_per_node = 2;
    opts.dedupe_radius_m = 10.0;
    const auto all = select_from_network(report, g, 5, opts, {});
    CHECK(int(all.size()) <= 5 * opts.sites_per_node);

    CHECK(code_of([&] { select_from_network(report, g, 6, opts, {}); }) ==
          Errc::invalid_config);
}

TEST_CASE("demand attachment uses the nearest point with index tie-break") {
    CandidatePool pool;
    for (int i = 0; i < 3; ++i) {
        CandidateSite s;
        s.site_id = "st" + std::to_string(i + 1);
        s.kind = SiteKind::station;
        s.location = {double(i) * 1000.0, 0.0};
        pool.stations.push_back(s);
    }

    const std::vector<DemandPoint> one{{{500.0, 0.0}, 120.0}};
    const CandidatePool attached = attach_demand(pool, one, CoordinateMode::planar);
    for (const auto& site : attached.stations) CHECK(site.q == 120.0);

    // Site st2 at x=1000 is exactly between the demand points at 0 and 2000:
    // the earlier point (sorted by lon) wins.
    const std::vector<DemandPoint> two{{{0.0, 0.0}, 50.0}, {{2000.0, 0.0}, 70.0}};
    const CandidatePool tied = attach_demand(pool, two, CoordinateMode::planar);
    CHECK(tied.stations[1].q == 50.0);

    CHECK(code_of([&] { attach_demand(pool, {}, CoordinateMode::planar); }) ==
          Errc::no_demand_data);
}

TEST_CASE("demand attachment matches the exhaustive scan oracle") {
    std::mt19937_64 rng(12345);
    std::vector<DemandPoint> demand;
    for (int i = 0; i < 40; ++i) {
        demand.push_back({{double(rng() % 20000), double(rng() % 20000)}, double(rng() % 500)});
    }
    std::sort(demand.begin(), demand.end(), [](const DemandPoint& a, const DemandPoint& b) {
        return a.location.lon != b.location.lon ? a.location.lon < b.location.lon
                                                : a.location.lat < b.location.lat;
    });

    CandidatePool pool;
    for (int i = 0; i < 50; ++i) {
        CandidateSite s;
        s.site_id = "st" + std::to_string(i + 1);
        s.kind = i % 3 == 0 ? SiteKind::togo : SiteKind::station;
        s.location = {double(rng() % 20000), double(rng() % 20000)};
        (s.kind == SiteKind::station ? pool.stations : pool.togo).push_back(s);
    }

    const CandidatePool attached = attach_demand(pool, demand, CoordinateMode::planar);
    auto check_site = [&](const CandidateSite& site) {
        double best = oracle::kInf;
        double best_q = -1.0;
        for (const auto& d : demand) {
            const double dist = geo_distance(site.location, d.location, CoordinateMode::planar);
            if (dist < best) {
                best = dist;
                best_q = d.q;
            }
        }
        CHECK(site.q == best_q);
    };
    for (const auto& site : attached.stations) check_site(site);
    for (const auto& site : attached.togo) check_site(site);
}

TEST_CASE("pool merge unions, applies layout and rejects duplicates") {
    const HighwayGraph g = line_network();
    CandidatePool a;
    CandidateSite s1;
    s1.site_id = "fs1";
    s1.kind = SiteKind::station;
    s1.location = {1000, 0};
    a.stations.push_back(s1);
    CandidatePool b;
    CandidateSite t1;
    t1.site_id = "sm1";
    t1.kind = SiteKind::togo;
    t1.source = SiteSource::togo_poi;
    t1.location = {2000, 100};
    b.togo.push_back(t1);

    CandidateSite prov;
    prov.site_id = "pv1";
    prov.kind = SiteKind::station;
    prov.source = SiteSource::provider_selected;
    prov.location = {3000, 200};
    CandidateSite far;
    far.site_id = "pv2";
    far.kind = SiteKind::station;
    far.source = SiteSource::provider_selected;
    far.location = {3000, 9000}; // outside the buffer, silently dropped

    const CandidatePool merged =
        merge_pool({a, b}, {prov, far}, {{"fs1", 2}, {"sm1", 3}}, g, 500.0);
    REQUIRE(merged.stations.size() == 2);
    REQUIRE(merged.togo.size() == 1);
    CHECK(merged.stations[0].site_id == "fs1");
    CHECK(merged.stations[0].initial_level == 2);
    CHECK(merged.stations[1].site_id == "pv1");
    CHECK(merged.togo[0].initial_level == 3);

    // Unknown layout id and duplicate ids are hard errors.
    CHECK(code_of([&] { merge_pool({a}, {}, {{"zz", 1}}, g, 500.0); }) == Errc::malformed_file);
    CHECK(code_of([&] { merge_pool({a, a}, {}, {}, g, 500.0); }) == Errc::duplicate_site_id);
    CandidateSite dup = prov;
    dup.site_id = "fs1";
    CHECK(code_of([&] { merge_pool({a}, {dup}, {}, g, 500.0); }) == Errc::duplicate_site_id);
}

TEST_CASE("layout and provider files parse with validation") {
    const std::string layout = write_temp("cp_layout.csv",
                                          "site_id,level\n"
                                          "fs1,2\n"
                                          "sm1,1\n");
    const auto levels = load_layout(layout);
    CHECK(levels.at("fs1") == 2);
    CHECK(levels.at("sm1") == 1);

    const std::string dup = write_temp("cp_layout_dup.csv", "fs1,2\nfs1,1\n");
    CHECK(code_of([&] { load_layout(dup); }) == Errc::malformed_file);
    const std::string neg = write_temp("cp_layout_neg.csv", "fs1,-2\n");
    CHECK(code_of([&] { load_layout(neg); }) == Errc::malformed_file);

    const auto bundled = load_layout(kFixtures + "/layout26.csv");
    CHECK(bundled.at("fs03") == 2);

    const auto provider = load_provider_sites(kFixtures + "/provider26.csv");
    REQUIRE(provider.size() == 2);
    CHECK(provider[0].source == SiteSource::provider_selected);
    const std::string badprov = write_temp("cp_prov_bad.csv", "site_id,lon,lat\npv1,240,52\n");
    CHECK(code_of([&] { load_provider_sites(badprov); }) == Errc::malformed_file);
}

TEST_CASE("prepared site files load a complete pool") {
    const PreparedSites prepared = load_prepared_sites(kFixtures + "/plan30.geojson");
    CHECK(prepared.mode == CoordinateMode::planar);
    REQUIRE(prepared.pool.stations.size() == 20);
    REQUIRE(prepared.pool.togo.size() == 10);
    for (const auto& site : prepared.pool.stations) CHECK(site.q > 0.0);

    // Natural id order and the recorded horizon-0 levels.
    CHECK(prepared.pool.stations[0].site_id == "st01");
    int with_initial = 0;
    for (const auto& site : prepared.pool.stations) {
        if (site.initial_level > 0) ++with_initial;
    }
    CHECK(with_initial == 3);
    CHECK(prepared.pool.togo[0].initial_level == 2);

    const std::string missing_q = write_temp("cp_prep_bad.geojson", R"({
      "type": "FeatureCollection",
      "coordinate_mode": "planar",
      "features": [
        {"type": "Feature", "properties": {"site_id": "s1", "kind": "station"},
         "geometry": {"type": "Point", "coordinates": [0, 0]}}
      ]
    })");
    CHECK(code_of([&] { load_prepared_sites(missing_q); }) == Errc::malformed_file);

    const std::string dup_site = write_temp("cp_prep_dup.geojson", R"({
      "type": "FeatureCollection",
      "coordinate_mode": "planar",
      "features": [
        {"type": "Feature", "properties": {"site_id": "s1", "kind": "station", "q": 10},
         "geometry": {"type": "Point", "coordinates": [0, 0]}},
        {"type": "Feature", "properties": {"site_id": "s1", "kind": "togo", "q": 10},
         "geometry": {"type": "Point", "coordinates": [5, 5]}}
      ]
    })");
    CHECK(code_of([&] { load_prepared_sites(dup_site); }) == Errc::duplicate_site_id);
}

TEST_CASE("full screening over the bundled 26-node fixtures") {
    const HighwayGraph g = load_network(kFixtures + "/net26.csv");
    const auto pois = load_pois(kFixtures + "/pois26.csv");
    const CandidatePool from_pois = select_from_pois(pois, g, 500.0);
    // fs99 sits far from the network and must be dropped.
    for (const auto& site : from_pois.stations) CHECK(site.site_id != "fs99");
    CHECK(from_pois.stations.size() >= 8);
    CHECK(from_pois.togo.size() >= 4);

    const CentralityReport report = composite_rank(g);
    NetworkSelectOptions opts;
    opts.sites_per_node = 2;
    opts.offset_m = 400.0;
    const auto recommended = select_from_network(report, g, 10, opts, from_pois.stations);
    CHECK(int(recommended.size()) <= 10 * opts.sites_per_node);

    CandidatePool net_pool;
    net_pool.stations = recommended;
    const auto layout0 = load_layout(kFixtures + "/layout26.csv");
    const CandidatePool merged =
        merge_pool({from_pois, net_pool}, load_provider_sites(kFixtures + "/provider26.csv"),
                   layout0, g, 500.0);
    CHECK(merged.size() > from_pois.size());

    const auto records = load_flow_records(kFixtures + "/flows26.csv");
    const auto demand = aggregate_freight_demand(records, VehicleClass::truck);
    const CandidatePool attached = attach_demand(merged, demand, g.mode);
    for (const auto& site : attached.stations) {
        bool from_demand = false;
        for (const auto& d : demand) {
            if (site.q == d.q) {
                from_demand = true;
                break;
            }
        }
        CHECK(from_demand); // q is always copied from a real demand point
    }
}
