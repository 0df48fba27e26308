#pragma once

#include <iosfwd>
#include <string>

#include "d2dsec/model.hpp"

namespace d2dsec {

// Scenario text: [topology]/[radio]/[scheme] sections of key = value lines,
// '#' comments. Points are "x, y" (meters), lists ';'-separated, pairs
// "tx_x, tx_y -> rx_x, rx_y". Powers in dBm, rates in Mbit/s.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Apply "section.key=value" to a parsed scenario (CLI overrides).
void apply_override(Scenario& scenario, const std::string& assignment);

}  // namespace d2dsec
