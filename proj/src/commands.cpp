#include "chargeplan/commands.hpp"

#include <filesystem>
#include <iostream>
#include <map>

#include <json.hpp>

#include "chargeplan/artifacts.hpp"
#include "chargeplan/csvio.hpp"
#include "chargeplan/errors.hpp"

namespace chargeplan {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

void require_input(const std::string& path, const char* what) {
    if (path.empty()) {
        fail(Errc::invalid_config, std::string("this command needs the ") + what + " input");
    }
    if (!fs::exists(path)) {
        fail(Errc::invalid_config, std::string(what) + " file '" + path + "' does not exist");
    }
}

void check_optional_inputs(const RunConfig& cfg) {
    for (const auto& [path, what] :
         std::initializer_list<std::pair<std::string, const char*>>{
             {cfg.pois_path, "pois"},
             {cfg.provider_path, "provider_sites"},
             {cfg.layout0_path, "layout0"},
             {cfg.flows_path, "flows"}}) {
        if (!path.empty() && !fs::exists(path)) {
            fail(Errc::invalid_config,
                 std::string(what) + " file '" + path + "' does not exist");
        }
    }
}

std::string prepare_run_dir(const RunConfig& cfg, const std::string& command) {
    const std::string dir = run_dir_for(cfg, command);
    fs::create_directories(dir);
    return dir;
}

void emit(const std::string& dir, const std::string& name, const std::string& content,
          std::vector<std::string>& outputs) {
    write_file(dir + "/" + name, content);
    outputs.push_back(name);
}

void note_written(const std::string& dir, const std::vector<std::string>& outputs) {
    for (const auto& name : outputs) std::cerr << "wrote " << dir << "/" << name << "\n";
}

} // namespace

std::string run_dir_for(const RunConfig& cfg, const std::string& command) {
    return cfg.output_dir + "/" + command + "-" + format_hash(cfg.hash());
}

ScreeningResult run_screening(const RunConfig& cfg) {
    require_input(cfg.network_path, "network");
    check_optional_inputs(cfg);

    ScreeningResult result;
    result.graph = load_network(cfg.network_path);
    result.report = composite_rank(result.graph);

    CandidatePool poi_pool;
    if (!cfg.pois_path.empty()) {
        const auto pois = load_pois(cfg.pois_path, result.graph.mode);
        poi_pool = select_from_pois(pois, result.graph, cfg.buffer_radius_m, cfg.densify_step_m);
    }

    CandidatePool net_pool;
    net_pool.stations = select_from_network(result.report, result.graph, cfg.top_nodes,
                                            cfg.net_select, poi_pool.stations);

    std::vector<CandidateSite> provider;
    if (!cfg.provider_path.empty()) {
        provider = load_provider_sites(cfg.provider_path, result.graph.mode);
    }

    std::map<std::string, int> layout0;
    if (!cfg.layout0_path.empty()) {
        layout0 = load_layout(cfg.layout0_path);
    } else {
        std::cerr << "note: no layout0 provided; horizon 0 starts with no facilities\n";
    }

    result.pool = merge_pool({poi_pool, net_pool}, provider, layout0, result.graph,
                             cfg.buffer_radius_m, cfg.densify_step_m);

    if (!cfg.flows_path.empty()) {
        const auto records = load_flow_records(cfg.flows_path, result.graph.mode);
        result.demand = aggregate_freight_demand(records, cfg.vehicle_class, cfg.window);
        result.pool = attach_demand(std::move(result.pool), result.demand, result.graph.mode);
    } else {
        std::cerr << "note: no flow data provided; coverable demand q stays 0\n";
    }
    return result;
}

PlanningInstance build_planning_instance(const RunConfig& cfg) {
    PlanningInstance inst;
    CandidatePool pool;

    if (!cfg.instance_path.empty()) {
        require_input(cfg.instance_path, "instance");
        const PreparedSites prepared = load_prepared_sites(cfg.instance_path);
        inst.mode = prepared.mode;
        pool = prepared.pool;
        if (!cfg.layout0_path.empty()) {
            require_input(cfg.layout0_path, "layout0");
            for (const auto& [site_id, level] : load_layout(cfg.layout0_path)) {
                bool found = false;
                for (auto* list : {&pool.stations, &pool.togo}) {
                    for (auto& site : *list) {
                        if (site.site_id == site_id) {
                            site.initial_level = level;
                            found = true;
                        }
                    }
                }
                if (!found) {
                    fail(Errc::malformed_file,
                         "layout references unknown candidate site '" + site_id + "'");
                }
            }
        }
    } else {
        const ScreeningResult screening = run_screening(cfg);
        inst.mode = screening.graph.mode;
        pool = screening.pool;
    }

    inst.stations = pool.stations;
    inst.togo = pool.togo;
    inst.max_scale = cfg.max_scale;
    inst.max_piles = cfg.max_piles;
    inst.cap_scale = cfg.cap_scale;
    inst.cap_pile = cfg.cap_pile;
    inst.pile_cost_eur = cfg.pile_cost_eur;
    inst.station_cost_meur = cfg.station_cost_meur;
    inst.penetration = cfg.penetration;
    inst.budget_meur = cfg.budget_meur;
    inst.min_new_stations = cfg.min_new_stations;
    inst.max_new_stations = cfg.max_new_stations;
    inst.min_new_togo = cfg.min_new_togo;
    inst.max_new_togo = cfg.max_new_togo;
    inst.min_station_spacing_km = cfg.min_station_spacing_km;
    inst.gamma = cfg.gamma;
    inst.x0.clear();
    inst.y0.clear();
    for (const auto& s : inst.stations) inst.x0.push_back(s.initial_level);
    for (const auto& s : inst.togo) inst.y0.push_back(s.initial_level);
    inst.finalize();
    return inst;
}

int cmd_evaluate_network(const RunConfig& cfg) {
    require_input(cfg.network_path, "network");
    const HighwayGraph graph = load_network(cfg.network_path);
    const CentralityReport report = composite_rank(graph);
    const std::string table = render_centrality_csv(report);

    const std::string dir = prepare_run_dir(cfg, "evaluate-network");
    std::vector<std::string> outputs;
    emit(dir, "centrality.csv", table, outputs);
    emit(dir, "manifest.json", render_manifest(cfg, "evaluate-network", outputs), outputs);
    std::cout << table;
    note_written(dir, outputs);
    return 0;
}

int cmd_select_candidates(const RunConfig& cfg) {
    const ScreeningResult screening = run_screening(cfg);
    const std::string summary = render_candidates_summary_csv(screening.pool);
    const std::string geojson =
        render_candidates_geojson(screening.pool, screening.graph.mode);

    const std::string dir = prepare_run_dir(cfg, "select-candidates");
    std::vector<std::string> outputs;
    emit(dir, "candidates.geojson", geojson, outputs);
    emit(dir, "candidates_summary.csv", summary, outputs);
    emit(dir, "centrality.csv", render_centrality_csv(screening.report), outputs);
    emit(dir, "manifest.json", render_manifest(cfg, "select-candidates", outputs), outputs);
    std::cout << summary;
    note_written(dir, outputs);
    return 0;
}

int cmd_optimize(const RunConfig& cfg) {
    const PlanningInstance inst = build_planning_instance(cfg);
    const HorizonSolution start = initial_solution(inst);
    const std::vector<HorizonSolution> front = evolve(inst, start, cfg.horizon, cfg.algo);
    const std::string table = render_front_csv(front);

    const std::string dir = prepare_run_dir(cfg, "optimize");
    std::vector<std::string> outputs;
    emit(dir, "front.csv", table, outputs);
    emit(dir, "manifest.json", render_manifest(cfg, "optimize", outputs, &inst), outputs);
    std::cout << table;
    note_written(dir, outputs);
    return 0;
}

int cmd_scenario(const RunConfig& cfg) {
    const PlanningInstance inst = build_planning_instance(cfg);

    std::vector<std::pair<std::string, std::string>> front_files;
    const PlanTimeline timeline =
        run_scenario(inst, cfg.policy, cfg.algo, [&](int k, const HorizonRun& run) {
            front_files.emplace_back("front_h" + std::to_string(k) + ".csv",
                                     render_front_csv(run.front));
        });
    const std::string table = render_timeline_csv(timeline);

    const std::string dir = prepare_run_dir(cfg, "scenario");
    std::vector<std::string> outputs;
    emit(dir, "timeline.csv", table, outputs);
    for (const auto& [name, content] : front_files) emit(dir, name, content, outputs);
    emit(dir, "plan.geojson", render_plan_geojson(inst, timeline), outputs);
    emit(dir, "manifest.json", render_manifest(cfg, "scenario", outputs, &inst), outputs);
    std::cout << table;
    note_written(dir, outputs);
    return 0;
}

int cmd_sensitivity(const RunConfig& cfg) {
    const PlanningInstance inst = build_planning_instance(cfg);
    const std::vector<SweepRow> rows = sensitivity_sweep(inst, cfg.policy, cfg.thetas, cfg.algo);
    const std::string table = render_sweep_csv(rows);

    const std::string dir = prepare_run_dir(cfg, "sensitivity");
    std::vector<std::string> outputs;
    emit(dir, "sweep.csv", table, outputs);
    emit(dir, "manifest.json", render_manifest(cfg, "sensitivity", outputs, &inst), outputs);
    std::cout << table;
    note_written(dir, outputs);
    return 0;
}

namespace {

struct TimelineRow {
    std::string k;
    double cost = 0.0;
    double coverage = 0.0;
};

std::vector<TimelineRow> read_timeline(const std::string& dir) {
    const std::string path = dir + "/timeline.csv";
    if (!fs::exists(path)) {
        fail(Errc::missing_artifact, "'" + path + "' not found (expected a scenario run)");
    }
    const std::string text = read_text_file(path);
    std::vector<TimelineRow> rows;
    CsvContext ctx{path, 0};
    size_t start = 0;
    bool header = true;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        const std::string line = text.substr(start, end - start);
        start = end + 1;
        ++ctx.line;
        if (trim(line).empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() < 3) fail(Errc::malformed_file, ctx.where() + ": short timeline row");
        rows.push_back({fields[0], parse_double(fields[1], ctx, "cost"),
                        parse_double(fields[2], ctx, "coverage")});
    }
    if (rows.empty()) fail(Errc::missing_artifact, "'" + path + "' holds no rows");
    return rows;
}

std::string with_pct(const std::string& value, double v, double base) {
    if (base == 0.0) return value + "(  --  )";
    return value + "(" + format_fixed(100.0 * v / base, 1) + "%)";
}

} // namespace

int cmd_report(const std::string& run_dir, const std::string& baseline_dir) {
    if (!fs::exists(run_dir + "/manifest.json")) {
        fail(Errc::missing_artifact, "'" + run_dir + "/manifest.json' not found");
    }
    const auto rows = read_timeline(run_dir);
    const auto base_rows = baseline_dir.empty() ? rows : read_timeline(baseline_dir);
    if (base_rows.size() != rows.size()) {
        fail(Errc::missing_artifact, "baseline timeline shape differs from the run");
    }

    std::string text;
    text += "run:      " + run_dir + "\n";
    text += "baseline: " + (baseline_dir.empty() ? std::string("(self)") : baseline_dir) + "\n";
    text += "\nhorizon  cost_meur         coverage_vehh\n";
    json aggregate;
    aggregate["run"] = run_dir;
    aggregate["baseline"] = baseline_dir.empty() ? "(self)" : baseline_dir;
    aggregate["rows"] = json::array();
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const auto& b = base_rows[i];
        if (r.k != b.k) fail(Errc::missing_artifact, "baseline horizons do not line up");
        char label[16];
        std::snprintf(label, sizeof label, "%-8s", r.k.c_str());
        text += std::string(label) + " " + with_pct(format_meur(r.cost), r.cost, b.cost);
        text += "    " + with_pct(format_vehh(r.coverage), r.coverage, b.coverage) + "\n";
        json jr;
        jr["k"] = r.k;
        jr["cost_meur"] = r.cost;
        jr["coverage_vehh"] = r.coverage;
        if (b.cost != 0.0) jr["cost_pct"] = 100.0 * r.cost / b.cost;
        if (b.coverage != 0.0) jr["coverage_pct"] = 100.0 * r.coverage / b.coverage;
        aggregate["rows"].push_back(jr);
    }

    write_file(run_dir + "/report.txt", text);
    write_file(run_dir + "/report.json", aggregate.dump(2) + "\n");
    std::cout << text;
    std::cerr << "wrote " << run_dir << "/report.txt\n"
              << "wrote " << run_dir << "/report.json\n";
    return 0;
}

} // namespace chargeplan
