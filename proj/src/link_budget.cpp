#include "d2dsec/link_budget.hpp"

#include <cmath>

#include "d2dsec/errors.hpp"

namespace d2dsec {

double LinkBudget::at(NodeId a, NodeId b) const {
    const auto it = gamma.find({a, b});
    if (it == gamma.end()) throw usage_error("no such link in the budget");
    return it->second;
}

LinkBudget link_budget(const Topology& topology, const RadioParams& radio) {
    validate(topology);
    validate(radio);

    // sigma^2 = PSD x full bandwidth, in mW; constant across sub-bands.
    const double noise_mw = dbm_to_mw(radio.noise_psd_dbm_hz) * radio.bandwidth_mhz * 1e6;
    const double p_cue_mw = dbm_to_mw(radio.p_cue_dbm);
    const double p_d2d_mw = dbm_to_mw(radio.p_d2d_dbm);

    LinkBudget budget;
    budget.n = topology.n();
    budget.m = topology.m();

    const auto add = [&](NodeId from, NodeId to, Point a, Point b, double power_mw) {
        const double d = distance(a, b);
        if (!(d > 0)) throw geometry_error("coincident nodes on a modeled link");
        budget.gamma[{from, to}] = power_mw * std::pow(d, -radio.alpha) / noise_mw;
    };

    for (int i = 0; i < budget.n; ++i) {
        const Point a = topology.cues[i];
        add(cue(i), bs(), a, topology.base_station, p_cue_mw);
        add(cue(i), eve(), a, topology.eavesdropper, p_cue_mw);
        for (int j = 0; j < budget.m; ++j) {
            add(cue(i), d2d_rx(j), a, topology.d2d_pairs[j].rx, p_cue_mw);
        }
    }
    for (int k = 0; k < budget.m; ++k) {
        const Point t = topology.d2d_pairs[k].tx;
        add(d2d_tx(k), bs(), t, topology.base_station, p_d2d_mw);
        add(d2d_tx(k), eve(), t, topology.eavesdropper, p_d2d_mw);
        for (int j = 0; j < budget.m; ++j) {
            add(d2d_tx(k), d2d_rx(j), t, topology.d2d_pairs[j].rx, p_d2d_mw);
        }
    }
    return budget;
}

LinkBudget link_budget(const Topology& topology, const RadioParams& radio, const SchemeConfig& scheme) {
    validate(scheme);
    LinkBudget budget = link_budget(topology, radio);
    budget.epsilon = scheme.p / budget.n;
    budget.vartheta = scheme.p * (1.0 - 1.0 / budget.n);
    return budget;
}

}  // namespace d2dsec
