#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "lax.hpp"
#include "mi.hpp"
#include "scenario.hpp"

namespace ncwave {

/// Worker count from NCWAVE_THREADS; unset, 0 or unparsable means
/// hardware concurrency.
std::size_t thread_count();

/// Sample the scenario on its grid. Points where the solution formula is
/// singular or non-finite are flagged invalid rather than aborting.
FieldGrid generate_field(const SolitonScenario& s, const GridSpec& g, std::size_t threads = 0);

/// Rows are t-major then x. Columns: x,t,status then re/im/abs per
/// component (u, or u11 u12 u21 u22). Invalid points carry status "pole"
/// and nan values.
void write_field_csv(const FieldGrid& grid, std::ostream& out);

std::string format_double(double v);

struct MiRow {
    double k;
    cplx closed;
    double numeric;
    bool unstable;
};

std::vector<MiRow> mi_sweep(double c, const ModelParams& params, double k_max, std::size_t samples);
void write_mi_csv(const std::vector<MiRow>& rows, std::ostream& out);

}  // namespace ncwave
