#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bandsim {

/// A rendered reference table: computed values side by side with the printed
/// reference values and their deviations. Cells are preformatted strings;
/// empty string means not applicable.
struct TableResult {
    std::string id;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<std::string, std::string>> notes;
};

/// Risky-share bands per (alpha, beta) and gamma; first row is the Merton
/// case.
TableResult table_risky_share();

/// Peak RCRRA across (alpha, beta) and sigma at gamma = 0.9.
TableResult table_max_rcrra();

/// Calibrated (alpha, beta) pairs targeting a common peak RCRRA. Forward mode
/// recomputes the peak for each printed pair; invert instead bisects beta at
/// fixed alpha to hit `target`.
TableResult table_calibration(bool invert, double target);

/// Share-on-wealth regression grid across population rows and market
/// scenarios.
TableResult table_regression(int n_agents, std::uint64_t seed);

/// Aggregate consumption moments: benchmark rows plus the parameter sweep.
TableResult table_moments(int reps, int n_agents, std::uint64_t seed);

} // namespace bandsim
