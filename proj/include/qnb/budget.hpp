#pragma once

#include "qnb/config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace qnb {

struct NoiseBudget {
    std::vector<std::string> comments;  // emitted as "# ..." lines
    std::vector<std::string> header;    // first column is always f_Hz
    std::vector<std::vector<double>> rows;
    std::vector<std::string> warnings;  // e.g. grid points dropped as singular
};

// Column names a topology can produce, in output order (f_Hz excluded).
std::vector<std::string> available_columns(const RunConfig& cfg);

// Evaluates the configured spectra on the frequency grid. Spectral densities
// are doubled when single-sided output is requested; sqrt_S is the square root
// of the emitted S column.
NoiseBudget run_budget(const RunConfig& cfg);

// Numbers with 17 significant digits.
std::string format_number(double v);

void write_csv(std::ostream& os, const NoiseBudget& b);

}  // namespace qnb
