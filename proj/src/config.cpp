#include "swarmsim/config.hpp"

#include <set>

#include "swarmsim/errors.hpp"
#include "swarmsim/io_util.hpp"

namespace swarmsim {

namespace {

using nlohmann::json;

// Overwrites `value` when the key is present; unknown keys raise so typos in
// config files fail loudly instead of silently running defaults.
template <typename T>
void read_field(const json& j, const char* key, T& value) {
    if (j.contains(key)) value = j.at(key).get<T>();
}

void check_known_keys(const json& j, std::initializer_list<const char*> known,
                      const std::string& scope) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw ConfigError("unknown config key '" + key + "' in " + scope);
    }
}

json params_json(const BehaviourParams& p) {
    return {
        {"interaction_radius", p.interaction_radius},
        {"separation_radius", p.separation_radius},
        {"w_sep", p.w_sep},
        {"w_align", p.w_align},
        {"w_coh", p.w_coh},
        {"noise_eta", p.noise_eta},
        {"turn_sigma", p.turn_sigma},
        {"max_turn", p.max_turn},
        {"act_prob", p.act_prob},
    };
}

BehaviourParams params_from_json(const json& j, BehaviourParams base, const std::string& scope) {
    check_known_keys(j,
                     {"interaction_radius", "separation_radius", "w_sep", "w_align", "w_coh",
                      "noise_eta", "turn_sigma", "max_turn", "act_prob"},
                     scope);
    read_field(j, "interaction_radius", base.interaction_radius);
    read_field(j, "separation_radius", base.separation_radius);
    read_field(j, "w_sep", base.w_sep);
    read_field(j, "w_align", base.w_align);
    read_field(j, "w_coh", base.w_coh);
    read_field(j, "noise_eta", base.noise_eta);
    read_field(j, "turn_sigma", base.turn_sigma);
    read_field(j, "max_turn", base.max_turn);
    read_field(j, "act_prob", base.act_prob);
    return base;
}

}  // namespace

void ClassifierConfig::validate() const {
    som.validate();
    if (!(split > 0.0 && split < 1.0)) throw ConfigError("split must lie in (0, 1)");
    if (models < 1) throw ConfigError("models must be >= 1");
    if (sample_window < 1) throw ConfigError("sample_window must be >= 1");
}

void ExperimentConfig::validate() const {
    if (settings.empty()) throw ConfigError("settings must not be empty");
    if (behaviours.empty()) throw ConfigError("behaviours must not be empty");
    if (std::set<Setting>(settings.begin(), settings.end()).size() != settings.size()) {
        throw ConfigError("duplicate setting in config");
    }
    if (std::set<Behaviour>(behaviours.begin(), behaviours.end()).size() != behaviours.size()) {
        throw ConfigError("duplicate behaviour in config");
    }
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    sim.validate();
    features.validate();
    measures.validate();
    classifier.validate();
}

nlohmann::json ExperimentConfig::to_json() const {
    json j;
    j["base_seed"] = base_seed;
    json settings_j = json::array();
    for (Setting s : settings) settings_j.push_back(to_string(s));
    j["settings"] = settings_j;
    json behaviours_j = json::array();
    for (Behaviour b : behaviours) behaviours_j.push_back(to_string(b));
    j["behaviours"] = behaviours_j;
    j["replicates"] = replicates;
    j["simulation"] = {
        {"arena_side", sim.arena_side},
        {"speed", sim.speed},
        {"total_steps", sim.total_steps},
        {"transient_steps", sim.transient_steps},
    };
    json bp;
    for (const auto& [b, p] : sim.behaviours) bp[to_string(b)] = params_json(p);
    j["behaviour_params"] = bp;
    j["features"] = {
        {"connection_radius", features.connection_radius},
        {"collision_radius", features.collision_radius},
        {"tau_mode", features.tau_mode},
        {"mode_cell_size", features.mode_cell_size},
        {"shift_window", features.shift_window},
        {"subsample_size", features.subsample_size},
        {"bounds_version", features.bounds_version},
    };
    j["measures"] = {
        {"csc_threshold", measures.csc_threshold},
        {"sas_window", measures.sas_window},
    };
    j["som"] = {
        {"rows", classifier.som.rows},
        {"cols", classifier.som.cols},
        {"training_steps", classifier.som.training_steps},
        {"alpha0", classifier.som.alpha0},
        {"sigma0", classifier.som.sigma0},
        {"split", classifier.split},
        {"models", classifier.models},
        {"sample_window", classifier.sample_window},
    };
    j["prng"] = kPrngId;
    j["tool_version"] = kToolVersion;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    check_known_keys(j,
                     {"base_seed", "settings", "behaviours", "replicates", "simulation",
                      "behaviour_params", "features", "measures", "som", "prng", "tool_version"},
                     "top level");
    ExperimentConfig cfg;
    read_field(j, "base_seed", cfg.base_seed);
    if (j.contains("settings")) {
        cfg.settings.clear();
        for (const auto& name : j.at("settings")) {
            cfg.settings.push_back(setting_from_string(name.get<std::string>()));
        }
    }
    if (j.contains("behaviours")) {
        cfg.behaviours.clear();
        for (const auto& name : j.at("behaviours")) {
            cfg.behaviours.push_back(behaviour_from_string(name.get<std::string>()));
        }
    }
    read_field(j, "replicates", cfg.replicates);
    if (j.contains("simulation")) {
        const auto& s = j.at("simulation");
        check_known_keys(s, {"arena_side", "speed", "total_steps", "transient_steps"},
                         "simulation");
        read_field(s, "arena_side", cfg.sim.arena_side);
        read_field(s, "speed", cfg.sim.speed);
        read_field(s, "total_steps", cfg.sim.total_steps);
        read_field(s, "transient_steps", cfg.sim.transient_steps);
    }
    if (j.contains("behaviour_params")) {
        for (const auto& [name, params] : j.at("behaviour_params").items()) {
            Behaviour b = behaviour_from_string(name);
            cfg.sim.behaviours[b] =
                params_from_json(params, cfg.sim.behaviours[b], "behaviour_params." + name);
        }
    }
    if (j.contains("features")) {
        const auto& f = j.at("features");
        check_known_keys(f,
                         {"connection_radius", "collision_radius", "tau_mode", "mode_cell_size",
                          "shift_window", "subsample_size", "bounds_version"},
                         "features");
        read_field(f, "connection_radius", cfg.features.connection_radius);
        read_field(f, "collision_radius", cfg.features.collision_radius);
        read_field(f, "tau_mode", cfg.features.tau_mode);
        read_field(f, "mode_cell_size", cfg.features.mode_cell_size);
        read_field(f, "shift_window", cfg.features.shift_window);
        read_field(f, "subsample_size", cfg.features.subsample_size);
        read_field(f, "bounds_version", cfg.features.bounds_version);
    }
    if (j.contains("measures")) {
        const auto& m = j.at("measures");
        check_known_keys(m, {"csc_threshold", "sas_window"}, "measures");
        read_field(m, "csc_threshold", cfg.measures.csc_threshold);
        read_field(m, "sas_window", cfg.measures.sas_window);
    }
    if (j.contains("som")) {
        const auto& s = j.at("som");
        check_known_keys(
            s, {"rows", "cols", "training_steps", "alpha0", "sigma0", "split", "models",
                "sample_window"},
            "som");
        read_field(s, "rows", cfg.classifier.som.rows);
        read_field(s, "cols", cfg.classifier.som.cols);
        read_field(s, "training_steps", cfg.classifier.som.training_steps);
        read_field(s, "alpha0", cfg.classifier.som.alpha0);
        read_field(s, "sigma0", cfg.classifier.som.sigma0);
        read_field(s, "split", cfg.classifier.split);
        read_field(s, "models", cfg.classifier.models);
        read_field(s, "sample_window", cfg.classifier.sample_window);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError("cannot parse config " + path.string() + ": " + e.what());
    }
    return from_json(j);
}

std::string ExperimentConfig::hash() const { return fnv1a64_hex(to_json().dump()); }

}  // namespace swarmsim
