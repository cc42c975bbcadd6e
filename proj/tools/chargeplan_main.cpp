#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chargeplan/commands.hpp"
#include "chargeplan/errors.hpp"

namespace {

int exit_code_for(chargeplan::Errc c) {
    switch (c) {
    case chargeplan::Errc::no_feasible_solution: return 3;
    case chargeplan::Errc::internal: return 4;
    default: return 2; // input / config problems
    }
}

} // namespace

int main(int argc, char** argv) {
    using namespace chargeplan;

    CLI::App app{"multi-period fast-charging deployment planner"};
    app.fallthrough(true);
    app.require_subcommand(1);
    app.set_version_flag("--version", "chargeplan 0.1.0");

    std::string config_path;
    std::string network, flows, pois, provider, layout0, instance;
    std::string policy_token, vehicle_class, output_dir;
    uint64_t seed = 0;
    int pop_size = 0, generations = 0, horizon = 0, top_nodes = 0;
    double pc = 0.0, pm = 0.0, buffer_radius = 0.0;
    std::vector<double> thetas;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--network", network, "network file (sectioned CSV or GeoJSON)");
    app.add_option("--flows", flows, "traffic flow records CSV");
    app.add_option("--pois", pois, "points of interest (CSV or GeoJSON)");
    app.add_option("--provider-sites", provider, "externally chosen station sites CSV");
    app.add_option("--layout0", layout0, "existing facility levels CSV");
    app.add_option("--instance", instance, "prepared candidate pool GeoJSON");
    app.add_option("--output-dir", output_dir, "artifact root directory");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--pop-size", pop_size, "population size");
    app.add_option("--generations", generations, "generation count");
    app.add_option("--pc", pc, "crossover probability");
    app.add_option("--pm", pm, "mutation probability");
    app.add_option("--policy", policy_token, "scenario1|scenario2|scenario3");
    app.add_option("--thetas", thetas, "investment rate steps for the sweep");
    app.add_option("--horizon", horizon, "horizon index for optimize");
    app.add_option("--vehicle-class", vehicle_class, "demand vehicle class filter");
    app.add_option("--buffer-radius-m", buffer_radius, "candidate buffer around the network");
    app.add_option("--top-nodes", top_nodes, "ranked junctions considered for new sites");

    auto* eval = app.add_subcommand("evaluate-network", "rank junctions by centrality");
    auto* select = app.add_subcommand("select-candidates", "screen candidate sites");
    auto* optimize = app.add_subcommand("optimize", "one-horizon Pareto front");
    auto* scenario = app.add_subcommand("scenario", "rolling multi-horizon plan");
    auto* sensitivity = app.add_subcommand("sensitivity", "budget sensitivity sweep");
    auto* report = app.add_subcommand("report", "summarize a finished run");

    std::string report_dir, baseline_dir;
    report->add_option("run_dir", report_dir, "run directory to summarize")->required();
    report->add_option("--baseline", baseline_dir, "baseline run directory for percentages");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_run_config(config_path);
        if (app.count("--network")) cfg.network_path = network;
        if (app.count("--flows")) cfg.flows_path = flows;
        if (app.count("--pois")) cfg.pois_path = pois;
        if (app.count("--provider-sites")) cfg.provider_path = provider;
        if (app.count("--layout0")) cfg.layout0_path = layout0;
        if (app.count("--instance")) cfg.instance_path = instance;
        if (app.count("--output-dir")) cfg.output_dir = output_dir;
        if (app.count("--seed")) cfg.algo.seed = seed;
        if (app.count("--pop-size")) cfg.algo.pop_size = pop_size;
        if (app.count("--generations")) cfg.algo.generations = generations;
        if (app.count("--pc")) cfg.algo.pc = pc;
        if (app.count("--pm")) cfg.algo.pm = pm;
        if (app.count("--policy")) cfg.policy = policy_from_name(policy_token);
        if (app.count("--thetas")) cfg.thetas = thetas;
        if (app.count("--horizon")) cfg.horizon = horizon;
        if (app.count("--vehicle-class")) {
            cfg.vehicle_class = vehicle_class_from_name(vehicle_class);
        }
        if (app.count("--buffer-radius-m")) cfg.buffer_radius_m = buffer_radius;
        if (app.count("--top-nodes")) cfg.top_nodes = top_nodes;
        validate_config(cfg);

        if (eval->parsed()) return cmd_evaluate_network(cfg);
        if (select->parsed()) return cmd_select_candidates(cfg);
        if (optimize->parsed()) return cmd_optimize(cfg);
        if (scenario->parsed()) return cmd_scenario(cfg);
        if (sensitivity->parsed()) return cmd_sensitivity(cfg);
        if (report->parsed()) return cmd_report(report_dir, baseline_dir);
        std::cerr << "error: no command given\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
