#include "swarmsim/behaviour.hpp"

namespace swarmsim {

const char* to_string(Behaviour b) {
    switch (b) {
        case Behaviour::reynolds: return "reynolds";
        case Behaviour::vicsek: return "vicsek";
        case Behaviour::aggregation: return "aggregation";
        case Behaviour::dispersion: return "dispersion";
        case Behaviour::ballistic: return "ballistic";
        case Behaviour::brownian: return "brownian";
    }
    throw ConfigError("invalid behaviour enum value");
}

Behaviour behaviour_from_string(std::string_view name) {
    for (Behaviour b : kAllBehaviours) {
        if (name == to_string(b)) return b;
    }
    throw ConfigError("unknown behaviour: " + std::string(name));
}

const char* to_string(Setting s) {
    switch (s) {
        case Setting::s40b: return "40b";
        case Setting::s30b: return "30b";
        case Setting::s40u: return "40u";
    }
    throw ConfigError("invalid setting enum value");
}

Setting setting_from_string(std::string_view name) {
    for (Setting s : kAllSettings) {
        if (name == to_string(s)) return s;
    }
    throw ConfigError("unknown setting: " + std::string(name));
}

int agent_count(Setting s) { return s == Setting::s30b ? 30 : 40; }

BoundaryMode boundary_mode(Setting s) {
    return s == Setting::s40u ? BoundaryMode::unbounded : BoundaryMode::bounded;
}

}  // namespace swarmsim
