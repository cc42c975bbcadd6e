#include "chargeplan/config.hpp"

#include <json.hpp>

#include "chargeplan/csvio.hpp"
#include "chargeplan/errors.hpp"

namespace chargeplan {

using json = nlohmann::json;

std::vector<std::vector<double>> default_station_cost() {
    return {
        {0.0, 0.50, 0.60, 0.70, 0.80, 0.90},
        {0.0, 0.00, 0.20, 0.30, 0.40, 0.50},
        {0.0, 0.00, 0.00, 0.25, 0.35, 0.45},
        {0.0, 0.00, 0.00, 0.00, 0.30, 0.40},
        {0.0, 0.00, 0.00, 0.00, 0.00, 0.45},
        {0.0, 0.00, 0.00, 0.00, 0.00, 0.00},
    };
}

RunConfig::RunConfig() { station_cost_meur = default_station_cost(); }

namespace {

void expect_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* name : allowed) {
            if (key == name) {
                known = true;
                break;
            }
        }
        if (!known) fail(Errc::invalid_config, "unknown key '" + where + key + "'");
    }
}

std::vector<double> as_doubles(const json& v, const std::string& what) {
    if (!v.is_array()) fail(Errc::invalid_config, what + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(Errc::invalid_config, what + " must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<int> as_ints(const json& v, const std::string& what) {
    if (v.is_number_integer()) return {v.get<int>()}; // scalar shorthand
    if (!v.is_array()) fail(Errc::invalid_config, what + " must be an integer or array");
    std::vector<int> out;
    for (const auto& e : v) {
        if (!e.is_number_integer()) fail(Errc::invalid_config, what + " must contain integers");
        out.push_back(e.get<int>());
    }
    return out;
}

void broadcast(std::vector<int>& v, int k, const std::string& what) {
    if (static_cast<int>(v.size()) == 1 && k > 1) v.assign(k, v[0]);
    if (static_cast<int>(v.size()) != k) {
        fail(Errc::invalid_config,
             what + " needs one value or one per horizon (" + std::to_string(k) + ")");
    }
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        fail(Errc::invalid_config, path + ": " + e.what());
    }
    if (!doc.is_object()) fail(Errc::invalid_config, path + ": config must be a JSON object");

    RunConfig cfg;
    cfg.config_path = path;

    expect_keys(doc, "", {"inputs", "candidates", "demand", "instance", "algorithm", "policy",
                          "thetas", "horizon", "output_dir"});

    if (doc.contains("inputs")) {
        const auto& in = doc["inputs"];
        expect_keys(in, "inputs.",
                    {"network", "flows", "pois", "provider_sites", "layout0", "instance"});
        cfg.network_path = in.value("network", "");
        cfg.flows_path = in.value("flows", "");
        cfg.pois_path = in.value("pois", "");
        cfg.provider_path = in.value("provider_sites", "");
        cfg.layout0_path = in.value("layout0", "");
        cfg.instance_path = in.value("instance", "");
    }

    if (doc.contains("candidates")) {
        const auto& c = doc["candidates"];
        expect_keys(c, "candidates.", {"buffer_radius_m", "top_nodes", "sites_per_node",
                                       "offset_m", "dedupe_radius_m", "densify_step_m"});
        cfg.buffer_radius_m = c.value("buffer_radius_m", cfg.buffer_radius_m);
        cfg.top_nodes = c.value("top_nodes", cfg.top_nodes);
        cfg.net_select.sites_per_node = c.value("sites_per_node", cfg.net_select.sites_per_node);
        cfg.net_select.offset_m = c.value("offset_m", cfg.net_select.offset_m);
        cfg.net_select.dedupe_radius_m = c.value("dedupe_radius_m", cfg.net_select.dedupe_radius_m);
        cfg.densify_step_m = c.value("densify_step_m", cfg.densify_step_m);
    }

    if (doc.contains("demand")) {
        const auto& d = doc["demand"];
        expect_keys(d, "demand.", {"vehicle_class", "window"});
        if (d.contains("vehicle_class")) {
            cfg.vehicle_class = vehicle_class_from_name(d["vehicle_class"].get<std::string>());
        }
        if (d.contains("window")) {
            for (const auto& w : d["window"]) cfg.window.insert(w.get<std::string>());
        }
    }

    if (doc.contains("instance")) {
        const auto& m = doc["instance"];
        expect_keys(m, "instance.",
                    {"max_scale", "max_piles", "cap_scale", "cap_pile", "pile_cost_eur",
                     "station_cost_meur", "penetration", "budget_meur", "min_new_stations",
                     "max_new_stations", "min_new_togo", "max_new_togo",
                     "min_station_spacing_km", "gamma"});
        cfg.max_scale = m.value("max_scale", cfg.max_scale);
        cfg.max_piles = m.value("max_piles", cfg.max_piles);
        if (m.contains("cap_scale")) cfg.cap_scale = as_doubles(m["cap_scale"], "instance.cap_scale");
        cfg.cap_pile = m.value("cap_pile", cfg.cap_pile);
        cfg.pile_cost_eur = m.value("pile_cost_eur", cfg.pile_cost_eur);
        if (m.contains("station_cost_meur")) {
            cfg.station_cost_meur.clear();
            for (const auto& row : m["station_cost_meur"]) {
                cfg.station_cost_meur.push_back(as_doubles(row, "instance.station_cost_meur row"));
            }
        }
        if (m.contains("penetration")) {
            cfg.penetration = as_doubles(m["penetration"], "instance.penetration");
        }
        if (m.contains("budget_meur")) {
            cfg.budget_meur = as_doubles(m["budget_meur"], "instance.budget_meur");
        }
        if (m.contains("min_new_stations")) {
            cfg.min_new_stations = as_ints(m["min_new_stations"], "instance.min_new_stations");
        }
        if (m.contains("max_new_stations")) {
            cfg.max_new_stations = as_ints(m["max_new_stations"], "instance.max_new_stations");
        }
        if (m.contains("min_new_togo")) {
            cfg.min_new_togo = as_ints(m["min_new_togo"], "instance.min_new_togo");
        }
        if (m.contains("max_new_togo")) {
            cfg.max_new_togo = as_ints(m["max_new_togo"], "instance.max_new_togo");
        }
        cfg.min_station_spacing_km = m.value("min_station_spacing_km", cfg.min_station_spacing_km);
        if (m.contains("gamma")) cfg.gamma = as_doubles(m["gamma"], "instance.gamma");
    }

    if (doc.contains("algorithm")) {
        const auto& a = doc["algorithm"];
        expect_keys(a, "algorithm.", {"pop_size", "generations", "pc", "pm", "seed"});
        cfg.algo.pop_size = a.value("pop_size", cfg.algo.pop_size);
        cfg.algo.generations = a.value("generations", cfg.algo.generations);
        cfg.algo.pc = a.value("pc", cfg.algo.pc);
        cfg.algo.pm = a.value("pm", cfg.algo.pm);
        cfg.algo.seed = a.value("seed", cfg.algo.seed);
    }

    if (doc.contains("policy")) cfg.policy = policy_from_name(doc["policy"].get<std::string>());
    if (doc.contains("thetas")) cfg.thetas = as_doubles(doc["thetas"], "thetas");
    cfg.horizon = doc.value("horizon", cfg.horizon);
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);

    return cfg;
}

void validate_config(RunConfig& cfg) {
    const int k = static_cast<int>(cfg.penetration.size());
    if (k == 0) fail(Errc::invalid_config, "instance.penetration must not be empty");
    broadcast(cfg.min_new_stations, k, "instance.min_new_stations");
    broadcast(cfg.max_new_stations, k, "instance.max_new_stations");
    broadcast(cfg.min_new_togo, k, "instance.min_new_togo");
    broadcast(cfg.max_new_togo, k, "instance.max_new_togo");
    if (cfg.thetas.empty()) cfg.thetas = default_thetas();

    if (cfg.algo.pop_size < 2) fail(Errc::invalid_config, "algorithm.pop_size must be >= 2");
    if (cfg.algo.generations < 0) fail(Errc::invalid_config, "algorithm.generations must be >= 0");
    if (cfg.algo.pc < 0.0 || cfg.algo.pc > 1.0 || cfg.algo.pm < 0.0 || cfg.algo.pm > 1.0) {
        fail(Errc::invalid_config, "algorithm.pc and pm must lie in [0, 1]");
    }
    for (double t : cfg.thetas) {
        if (!(t > 0.0)) fail(Errc::invalid_config, "thetas must be positive");
    }
    if (cfg.horizon < 1 || cfg.horizon > k) {
        fail(Errc::invalid_config, "horizon must lie in 1.." + std::to_string(k));
    }
    if (cfg.buffer_radius_m <= 0 || cfg.densify_step_m <= 0) {
        fail(Errc::invalid_config, "candidate buffer and densify step must be positive");
    }
    if (cfg.top_nodes < 0) fail(Errc::invalid_config, "candidates.top_nodes must be >= 0");
    if (cfg.net_select.sites_per_node < 1) {
        fail(Errc::invalid_config, "candidates.sites_per_node must be >= 1");
    }
    if (cfg.output_dir.empty()) fail(Errc::invalid_config, "output_dir must not be empty");
}

std::string RunConfig::canonical_json() const {
    json j;
    j["inputs"] = {{"network", network_path},   {"flows", flows_path},
                   {"pois", pois_path},         {"provider_sites", provider_path},
                   {"layout0", layout0_path},   {"instance", instance_path}};
    j["candidates"] = {{"buffer_radius_m", buffer_radius_m},
                       {"top_nodes", top_nodes},
                       {"sites_per_node", net_select.sites_per_node},
                       {"offset_m", net_select.offset_m},
                       {"dedupe_radius_m", net_select.dedupe_radius_m},
                       {"densify_step_m", densify_step_m}};
    j["demand"] = {{"vehicle_class", vehicle_class_name(vehicle_class)},
                   {"window", json::array()}};
    for (const auto& w : window) j["demand"]["window"].push_back(w);
    j["instance"] = {{"max_scale", max_scale},
                     {"max_piles", max_piles},
                     {"cap_scale", cap_scale},
                     {"cap_pile", cap_pile},
                     {"pile_cost_eur", pile_cost_eur},
                     {"station_cost_meur", station_cost_meur},
                     {"penetration", penetration},
                     {"budget_meur", budget_meur},
                     {"min_new_stations", min_new_stations},
                     {"max_new_stations", max_new_stations},
                     {"min_new_togo", min_new_togo},
                     {"max_new_togo", max_new_togo},
                     {"min_station_spacing_km", min_station_spacing_km},
                     {"gamma", gamma}};
    j["algorithm"] = {{"pop_size", algo.pop_size},
                      {"generations", algo.generations},
                      {"pc", algo.pc},
                      {"pm", algo.pm},
                      {"seed", algo.seed}};
    j["policy"] = policy_name(policy);
    j["thetas"] = thetas;
    j["horizon"] = horizon;
    j["output_dir"] = output_dir;
    return j.dump();
}

uint64_t RunConfig::hash() const {
    const std::string s = canonical_json();
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace chargeplan
