#pragma once

#include <array>
#include <string>
#include <string_view>

#include "swarmsim/arena.hpp"
#include "swarmsim/errors.hpp"

namespace swarmsim {

enum class Behaviour : int {
    reynolds = 0,
    vicsek = 1,
    aggregation = 2,
    dispersion = 3,
    ballistic = 4,
    brownian = 5,
};

inline constexpr int kBehaviourCount = 6;
inline constexpr std::array<Behaviour, kBehaviourCount> kAllBehaviours = {
    Behaviour::reynolds,  Behaviour::vicsek,    Behaviour::aggregation,
    Behaviour::dispersion, Behaviour::ballistic, Behaviour::brownian,
};

const char* to_string(Behaviour b);
Behaviour behaviour_from_string(std::string_view name);

// Class labels used by the classifier are 1-based.
inline int class_label(Behaviour b) { return static_cast<int>(b) + 1; }

enum class Setting : int { s40b = 0, s30b = 1, s40u = 2 };

inline constexpr int kSettingCount = 3;
inline constexpr std::array<Setting, kSettingCount> kAllSettings = {
    Setting::s40b, Setting::s30b, Setting::s40u};

const char* to_string(Setting s);
Setting setting_from_string(std::string_view name);
int agent_count(Setting s);
BoundaryMode boundary_mode(Setting s);

// Per-behaviour rule parameters. One instance per behaviour lives in the
// experiment config so every value is auditable and tunable.
struct BehaviourParams {
    double interaction_radius = 50.0;  // neighbourhood radius (all but ballistic/brownian)
    double separation_radius = 25.0;   // reynolds separation zone
    double w_sep = 1.5;                // reynolds weights
    double w_align = 1.0;
    double w_coh = 1.0;
    double noise_eta = 0.3;            // vicsek: uniform noise in [-eta/2, eta/2]
    double turn_sigma = 0.3;           // brownian: per-step heading stddev
    double max_turn = 0.3;             // steering cap, rad/step (reynolds/aggregation/dispersion)
    double act_prob = 1.0;             // dispersion: per-step chance an agent acts on repulsion

    void validate() const {
        if (!(interaction_radius > 0.0)) throw ConfigError("interaction_radius must be > 0");
        if (!(separation_radius > 0.0)) throw ConfigError("separation_radius must be > 0");
        if (noise_eta < 0.0) throw ConfigError("noise_eta must be >= 0");
        if (turn_sigma < 0.0) throw ConfigError("turn_sigma must be >= 0");
        if (!(max_turn > 0.0)) throw ConfigError("max_turn must be > 0");
        if (!(act_prob > 0.0 && act_prob <= 1.0)) throw ConfigError("act_prob must lie in (0, 1]");
    }
};

}  // namespace swarmsim
