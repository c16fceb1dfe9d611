#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wigner/entropies.hpp"

namespace wigner {

/// Declarative sweep over a g grid and an eps grid (outer loop g, inner eps,
/// row order as declared). count = 1 pins a single value.
struct SweepSpec {
    std::string potential;
    double g_min = 0.0, g_max = 0.0;
    int g_count = 1;
    bool g_log = true;
    double eps_min = 0.0, eps_max = 0.0;
    int eps_count = 1;
    bool eps_log = false;
    std::vector<double> extra_eps;  // appended per row for D > 2
    std::vector<double> alphas;
    double tail_bound = 1e-10;
};

/// Rendered sweep: '#'-prefixed header comments documenting the grid choices,
/// one column-header row, then data rows (already formatted, LF-terminated).
struct SweepResult {
    std::vector<std::string> header_comments;
    std::string column_header;
    std::vector<std::string> rows;
    int failed_rows = 0;
    int total_rows = 0;

    std::string to_csv() const;
};

/// Generic sweep; failed rows carry nan sentinels in the value columns.
SweepResult run_sweep(const SweepSpec& spec);

/// Named figure-data presets: fig1a, fig1b, fig2, fig3, fig4, fig6, fig7,
/// figS5a, figS5b. Throws std::domain_error for unknown names.
SweepResult run_preset(const std::string& name);

std::vector<std::string> preset_names();

/// Worker cap from WIGNER_SPECTRUM_THREADS (0 or unset = hardware).
int max_threads();

}  // namespace wigner
