#pragma once

#include <string>

#include "cleave/errors.hpp"

namespace cleave {

/// Shared tolerance constants. "exact" is tuned for unjittered synthetic
/// geometry (errors are float noise only); "jittered" widens every band to
/// absorb the datagen vertex-jitter augmentation.
struct ToleranceProfile {
    std::string name;
    double match_tol;       // signature match / consistency threshold
    double angle_tol;       // classification angle band, radians
    double edge_tol;        // classification edge-ratio band
    double tie_resolution;  // scores closer than this rank as tied

    static const ToleranceProfile& exact() {
        static const ToleranceProfile p{"exact", 1e-6, 1e-6, 1e-6, 1e-9};
        return p;
    }

    static const ToleranceProfile& jittered() {
        static const ToleranceProfile p{"jittered", 0.02, 0.02, 0.02, 5e-3};
        return p;
    }

    static const ToleranceProfile& by_name(const std::string& name) {
        if (name == "exact") return exact();
        if (name == "jittered") return jittered();
        throw error("unknown tolerance profile: " + name);
    }
};

} // namespace cleave
