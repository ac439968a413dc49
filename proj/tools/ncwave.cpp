// ncwave command-line driver. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncwave/ncwave.h"

namespace {

constexpr int kExitInternal = 1;

struct ScenarioDeleter {
    void operator()(ncw_scenario* s) const { ncw_scenario_free(s); }
};
struct FieldDeleter {
    void operator()(ncw_field* f) const { ncw_field_free(f); }
};
struct StringDeleter {
    void operator()(char* s) const { ncw_string_free(s); }
};
using ScenarioPtr = std::unique_ptr<ncw_scenario, ScenarioDeleter>;
using FieldPtr = std::unique_ptr<ncw_field, FieldDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int exit_code(ncw_status s) {
    switch (s) {
        case NCW_OK: return 0;
        case NCW_ERR_INPUT:
        case NCW_ERR_ARGUMENT: return 2;
        case NCW_ERR_DEGENERATE: return 3;
        case NCW_ERR_NUMERIC: return 4;
        default: return kExitInternal;
    }
}

// Throws the exit code after printing the library message.
void check(ncw_status s, const char* what) {
    if (s == NCW_OK) return;
    std::cerr << "ncwave: " << what << ": " << ncw_last_error() << "\n";
    throw exit_code(s);
}

ScenarioPtr load(const std::string& path) {
    ncw_scenario* s = nullptr;
    check(ncw_scenario_load(path.c_str(), &s), "cannot load scenario");
    return ScenarioPtr(s);
}

FieldPtr generate(const ncw_scenario* s) {
    ncw_field* f = nullptr;
    check(ncw_field_generate(s, 0, &f), "field generation failed");
    return FieldPtr(f);
}

// Exit 3 when more than half of the grid points are poles.
int pole_verdict(const ncw_field* f) {
    std::size_t nx = 0, nt = 0, dim = 0, poles = 0;
    check(ncw_field_info(f, &nx, &nt, &dim, &poles), "field info");
    if (2 * poles > nx * nt) {
        std::cerr << "ncwave: " << poles << " of " << nx * nt
                  << " grid points are poles; output is degenerate\n";
        return 3;
    }
    if (poles) std::cerr << "ncwave: " << poles << " pole point(s) flagged in output\n";
    return 0;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) {
        std::cerr << "ncwave: cannot write '" << path << "'\n";
        throw 2;
    }
    out << text << "\n";
}

nlohmann::ordered_json stats_json(const ncw_residual_stats& s) {
    auto num = [](double v) -> nlohmann::json {
        if (v != v) return nullptr;
        return v;
    };
    return {{"maxResidual", num(s.max_residual)},
            {"meanResidual", num(s.mean_residual)},
            {"gridSpacing", {{"x", s.hx}, {"t", s.ht}}},
            {"stencilOrder", s.stencil_order},
            {"trimmedBoundary", true},
            {"convergenceOrder", num(s.convergence_order)},
            {"points", s.points},
            {"skippedPoints", s.skipped}};
}

std::string default_bands_path(const std::string& out) {
    const auto dot = out.find_last_of('.');
    const auto slash = out.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return out.substr(0, dot) + ".bands.json";
    return out + ".bands.json";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soliton construction, residual verification and modulation instability"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ncw_version()));

    std::string scenario, out, limit, scenario_out, field_out, bands_out;
    int order = 2;
    double k_max = 0.0, c = -1.0;
    std::size_t samples = 0;

    auto* soliton = app.add_subcommand("soliton", "Sample the solution on the scenario grid as CSV");
    soliton->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    soliton->add_option("--out", out, "CSV output path")->required();

    auto* verify = app.add_subcommand("verify", "Residual statistics of the equation of motion as JSON");
    verify->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    verify->add_option("--out", out, "JSON output path ('-' for stdout)")->required();
    verify->add_option("--stencil-order", order, "Finite-difference accuracy order")
        ->check(CLI::IsMember({2, 4, 6}));

    auto* mi = app.add_subcommand("mi", "Growth-rate sweep of plane-wave perturbations");
    mi->add_option("--scenario", scenario, "Scenario file supplying [model] and [mi]")
        ->required()
        ->check(CLI::ExistingFile);
    mi->add_option("--out", out, "CSV output path")->required();
    mi->add_option("--k-max", k_max, "Sweep k over [-k_max, k_max]")->check(CLI::PositiveNumber);
    mi->add_option("--samples", samples, "Number of k samples (at least 100)")->check(CLI::Range(100, 10000000));
    mi->add_option("--c", c, "Plane-wave amplitude")->check(CLI::NonNegativeNumber);
    mi->add_option("--bands-out", bands_out, "Band summary JSON path (default: out path with .bands.json extension)");

    auto* reduce = app.add_subcommand("reduce", "Apply a parameter limit, regenerate and re-verify");
    reduce->add_option("--scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    reduce->add_option("--limit", limit, "nls | hirota | lpd | mkdv")->required();
    reduce->add_option("--out", out, "JSON report path ('-' for stdout)")->required();
    reduce->add_option("--scenario-out", scenario_out, "Write the reduced scenario here");
    reduce->add_option("--field-out", field_out, "Write the regenerated field CSV here");
    reduce->add_option("--stencil-order", order, "Finite-difference accuracy order")
        ->check(CLI::IsMember({2, 4, 6}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*soliton) {
            auto s = load(scenario);
            auto f = generate(s.get());
            check(ncw_field_write_csv(f.get(), out.c_str()), "cannot write field");
            return pole_verdict(f.get());
        }

        if (*verify) {
            auto s = load(scenario);
            auto f = generate(s.get());
            const int verdict = pole_verdict(f.get());
            if (verdict) return verdict;
            char* json = nullptr;
            check(ncw_verify_json(f.get(), s.get(), order, &json), "verification failed");
            StringPtr holder(json);
            write_text(out, json);
            return 0;
        }

        if (*mi) {
            auto s = load(scenario);
            double a1, a2, g, sc, sk;
            std::size_t sn;
            check(ncw_scenario_params(s.get(), &a1, &a2, &g), "scenario");
            check(ncw_scenario_mi(s.get(), &sc, &sk, &sn), "scenario");
            if (c >= 0.0) sc = c;
            if (k_max > 0.0) sk = k_max;
            if (samples) sn = samples;
            char* bands = nullptr;
            check(ncw_mi_sweep(sc, a1, a2, g, sk, sn, out.c_str(), &bands), "mi sweep failed");
            StringPtr holder(bands);
            write_text(bands_out.empty() ? default_bands_path(out) : bands_out, bands);
            return 0;
        }

        if (*reduce) {
            auto s = load(scenario);
            check(ncw_scenario_apply_limit(s.get(), limit.c_str()), "invalid limit");
            if (!scenario_out.empty()) check(ncw_scenario_save(s.get(), scenario_out.c_str()), "cannot save scenario");
            auto f = generate(s.get());
            if (!field_out.empty()) check(ncw_field_write_csv(f.get(), field_out.c_str()), "cannot write field");
            const int verdict = pole_verdict(f.get());
            if (verdict) return verdict;
            ncw_residual_stats full{}, red{};
            check(ncw_verify(f.get(), s.get(), order, &full), "verification failed");
            check(ncw_verify_reduced(f.get(), s.get(), limit.c_str(), order, &red), "verification failed");
            double a1, a2, g;
            check(ncw_scenario_params(s.get(), &a1, &a2, &g), "scenario");
            nlohmann::ordered_json j;
            j["limit"] = limit;
            j["model"] = {{"alpha1", a1}, {"alpha2", a2}, {"gamma", g}};
            j["fullEquation"] = stats_json(full);
            j["reducedEquation"] = stats_json(red);
            write_text(out, j.dump(2));
            return 0;
        }
    } catch (int rc) {
        return rc;
    } catch (const std::exception& e) {
        std::cerr << "ncwave: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
