#include "d2dsec/model.hpp"

#include <cmath>

#include "d2dsec/errors.hpp"

namespace d2dsec {

double rate_normalize(double rate_mbps, const RadioParams& radio) {
    if (!(rate_mbps >= 0)) throw usage_error("rate must be non-negative");
    return rate_mbps / radio.bandwidth_mhz;
}

void validate(const Topology& topology) {
    if (topology.cues.empty()) throw geometry_error("at least one cellular user is required");
    const auto check = [](Point a, Point b, const char* what) {
        if (distance(a, b) <= 0) throw geometry_error(std::string("coincident nodes on link: ") + what);
    };
    check(topology.base_station, topology.eavesdropper, "base station / eavesdropper");
    for (const Point& a : topology.cues) {
        check(a, topology.base_station, "cellular user / base station");
        check(a, topology.eavesdropper, "cellular user / eavesdropper");
    }
    for (const D2dPair& pair : topology.d2d_pairs) {
        check(pair.tx, topology.base_station, "transmitter / base station");
        check(pair.tx, topology.eavesdropper, "transmitter / eavesdropper");
        for (const Point& a : topology.cues) check(a, pair.rx, "cellular user / receiver");
        for (const D2dPair& other : topology.d2d_pairs) check(pair.tx, other.rx, "transmitter / receiver");
    }
}

void validate(const RadioParams& radio) {
    if (!(radio.alpha > 2)) throw usage_error("path-loss exponent must exceed 2");
    if (!(radio.bandwidth_mhz > 0)) throw usage_error("bandwidth must be positive");
    if (!std::isfinite(radio.p_cue_dbm) || !std::isfinite(radio.p_d2d_dbm) ||
        !std::isfinite(radio.noise_psd_dbm_hz)) {
        throw usage_error("powers and noise density must be finite");
    }
}

void validate(const SchemeConfig& scheme) {
    if (!(scheme.p >= 0 && scheme.p <= 1)) throw usage_error("mode-selection probability outside [0, 1]");
    if (!(scheme.beta >= 0 && scheme.beta <= 1)) throw usage_error("partition factor outside [0, 1]");
    if (!(scheme.r_s >= 0)) throw usage_error("secrecy rate must be non-negative");
    if (!(scheme.r_t >= 0)) throw usage_error("target rate must be non-negative");
    if (!(scheme.w_c > 0 && scheme.w_c < 1) || !(scheme.w_d > 0 && scheme.w_d < 1)) {
        throw usage_error("fairness weights must lie in (0, 1)");
    }
    if (std::abs(scheme.w_c + scheme.w_d - 1.0) > 1e-9) {
        throw usage_error("fairness weights must sum to 1");
    }
}

void validate(const Scenario& scenario) {
    validate(scenario.topology);
    validate(scenario.radio);
    validate(scenario.scheme);
}

}  // namespace d2dsec
