#pragma once

#include <map>
#include <tuple>
#include <utility>

#include "d2dsec/model.hpp"

namespace d2dsec {

enum class NodeKind { base_station, eavesdropper, cue, d2d_tx, d2d_rx };

struct NodeId {
    NodeKind kind;
    int index = 0;  // 0-based; ignored for the singleton kinds

    friend bool operator<(NodeId a, NodeId b) {
        return std::tie(a.kind, a.index) < std::tie(b.kind, b.index);
    }
    friend bool operator==(NodeId a, NodeId b) {
        return a.kind == b.kind && a.index == b.index;
    }
};

inline NodeId bs() { return {NodeKind::base_station, 0}; }
inline NodeId eve() { return {NodeKind::eavesdropper, 0}; }
inline NodeId cue(int i) { return {NodeKind::cue, i}; }
inline NodeId d2d_tx(int j) { return {NodeKind::d2d_tx, j}; }
inline NodeId d2d_rx(int j) { return {NodeKind::d2d_rx, j}; }

// Mean SNR of every modeled link, plus the per-CUE reuse probabilities.
struct LinkBudget {
    int n = 0;
    int m = 0;
    double epsilon = 0;   // p/n
    double vartheta = 0;  // p(1 - 1/n)
    std::map<std::pair<NodeId, NodeId>, double> gamma;

    double at(NodeId a, NodeId b) const;

    double cue_to_bs(int i) const { return at(cue(i), bs()); }
    double cue_to_eve(int i) const { return at(cue(i), eve()); }
    double cue_to_rx(int i, int j) const { return at(cue(i), d2d_rx(j)); }
    double d2d_to_bs(int j) const { return at(d2d_tx(j), bs()); }
    double d2d_to_eve(int j) const { return at(d2d_tx(j), eve()); }
    double d2d_to_rx(int k, int j) const { return at(d2d_tx(k), d2d_rx(j)); }
};

// gamma = P d^-alpha / sigma^2 per link; sigma^2 = noise PSD x full bandwidth,
// never rescaled by beta or 1/n. Throws geometry_error on a zero-length link.
LinkBudget link_budget(const Topology& topology, const RadioParams& radio);

// Same, with epsilon/vartheta filled from the scheme's p.
LinkBudget link_budget(const Topology& topology, const RadioParams& radio, const SchemeConfig& scheme);

}  // namespace d2dsec
