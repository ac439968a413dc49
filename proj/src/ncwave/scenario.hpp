#pragma once

#include <cstddef>
#include <string>

#include "darboux.hpp"

namespace ncwave {

struct GridSpec {
    double x_min = -10.0;
    double x_max = 10.0;
    std::size_t nx = 401;
    double t_min = -2.0;
    double t_max = 2.0;
    std::size_t nt = 401;
};

struct OutputSpec {
    bool fields = true;
    bool residuals = false;
    bool mi = false;
};

struct MiSpec {
    double c = 0.5;
    double k_max = 3.0;
    std::size_t samples = 121;
};

/// Everything a scenario file describes.
struct ScenarioFile {
    int schema = 1;
    std::string name;
    SolitonScenario soliton;
    GridSpec grid;
    OutputSpec outputs;
    MiSpec mi;
};

/// Parse the key/value scenario format. Throws ParseError with the 1-based
/// line and the offending field.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

/// Canonical text form. Comments are not preserved; parse(serialize(s))
/// serializes to the same bytes.
std::string serialize_scenario(const ScenarioFile& s);

}  // namespace ncwave
