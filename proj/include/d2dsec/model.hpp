#pragma once

#include <cmath>
#include <vector>

namespace d2dsec {

struct Point {
    double x = 0;  // m
    double y = 0;  // m
};

inline double distance(Point a, Point b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct D2dPair {
    Point tx;
    Point rx;
};

struct Topology {
    Point base_station;
    Point eavesdropper;
    std::vector<Point> cues;       // n >= 1
    std::vector<D2dPair> d2d_pairs;

    int n() const { return static_cast<int>(cues.size()); }
    int m() const { return static_cast<int>(d2d_pairs.size()); }
};

struct RadioParams {
    double p_cue_dbm = 23;          // per-CUE transmit power
    double p_d2d_dbm = 20;          // per-D2D-transmitter power
    double noise_psd_dbm_hz = -174;
    double bandwidth_mhz = 1;       // total bandwidth W
    double alpha = 4;               // path-loss exponent, > 2
};

struct SchemeConfig {
    double p = 0.5;     // underlay mode-selection probability
    double beta = 0.5;  // cellular spectrum fraction
    double r_s = 0.1;   // target secrecy rate, bit/s/Hz
    double r_t = 0.5;   // target D2D rate, bit/s/Hz
    double w_c = 0.5;   // fairness weight of the cellular utility
    double w_d = 0.5;   // fairness weight of the D2D utility
};

struct Scenario {
    Topology topology;
    RadioParams radio;
    SchemeConfig scheme;
};

inline double dbm_to_mw(double dbm) {
    return std::pow(10.0, dbm / 10.0);
}

// Mbit/s -> bit/s/Hz over the full band; identity when W = 1 MHz.
double rate_normalize(double rate_mbps, const RadioParams& radio);

// Throw usage/geometry errors on invariant violations.
void validate(const Topology& topology);
void validate(const RadioParams& radio);
void validate(const SchemeConfig& scheme);
void validate(const Scenario& scenario);

}  // namespace d2dsec
