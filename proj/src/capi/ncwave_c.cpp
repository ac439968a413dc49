#include "ncwave/ncwave.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include <json.hpp>

#include "ncwave/darboux.hpp"
#include "ncwave/error.hpp"
#include "ncwave/fieldio.hpp"
#include "ncwave/lax.hpp"
#include "ncwave/mi.hpp"
#include "ncwave/scenario.hpp"

struct ncw_scenario {
    ncwave::ScenarioFile file;
};

struct ncw_field {
    ncwave::FieldGrid grid;
};

namespace {

thread_local std::string g_last_error;

ncw_status fail(ncw_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

template <class F>
ncw_status guarded(F&& f) {
    g_last_error.clear();
    try {
        return f();
    } catch (const ncwave::ParseError& e) {
        std::string msg = e.what();
        if (e.line()) msg = "line " + std::to_string(e.line()) + ": " + msg;
        if (!e.field().empty()) msg += " [" + e.field() + "]";
        return fail(NCW_ERR_INPUT, msg);
    } catch (const ncwave::StencilError& e) {
        return fail(NCW_ERR_NUMERIC, e.what());
    } catch (const ncwave::SingularMatrixError& e) {
        return fail(NCW_ERR_NUMERIC, e.what());
    } catch (const ncwave::PoleError& e) {
        return fail(NCW_ERR_DEGENERATE, e.what());
    } catch (const ncwave::DimensionError& e) {
        return fail(NCW_ERR_INPUT, e.what());
    } catch (const std::exception& e) {
        return fail(NCW_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(NCW_ERR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* p = new char[s.size() + 1];
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

ncw_residual_stats to_c(const ncwave::ResidualStats& s, double order_estimate) {
    ncw_residual_stats r{};
    r.max_residual = s.max;
    r.mean_residual = s.mean;
    r.hx = s.hx;
    r.ht = s.ht;
    r.convergence_order = order_estimate;
    r.stencil_order = s.order;
    r.points = s.points;
    r.skipped = s.skipped;
    return r;
}

ncwave::PointwiseResidual eom_fn(const ncwave::ModelParams& p) {
    return [p](const ncwave::Jet& j, const ncwave::ComplexMatrix& ut) {
        return ncwave::eom_pointwise(j, ut, p);
    };
}

nlohmann::json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

}  // namespace

extern "C" {

const char* ncw_last_error(void) { return g_last_error.c_str(); }
const char* ncw_version(void) { return "1.0.0"; }
void ncw_string_free(char* s) { delete[] s; }

ncw_status ncw_scenario_load(const char* path, ncw_scenario** out) {
    if (!path || !out) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new ncw_scenario{ncwave::load_scenario(path)};
        return NCW_OK;
    });
}

ncw_status ncw_scenario_parse(const char* text, ncw_scenario** out) {
    if (!text || !out) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new ncw_scenario{ncwave::parse_scenario(text)};
        return NCW_OK;
    });
}

ncw_status ncw_scenario_serialize(const ncw_scenario* s, char** text) {
    if (!s || !text) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *text = dup_string(ncwave::serialize_scenario(s->file));
        return NCW_OK;
    });
}

ncw_status ncw_scenario_save(const ncw_scenario* s, const char* path) {
    if (!s || !path) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        std::ofstream f(path);
        if (!f) return fail(NCW_ERR_INPUT, std::string("cannot write '") + path + "'");
        f << ncwave::serialize_scenario(s->file);
        return f ? NCW_OK : fail(NCW_ERR_INPUT, std::string("write failed for '") + path + "'");
    });
}

ncw_status ncw_scenario_apply_limit(ncw_scenario* s, const char* limit) {
    if (!s || !limit) return fail(NCW_ERR_ARGUMENT, "null argument");
    const auto r = ncwave::parse_reduction(limit);
    if (!r || *r == ncwave::Reduction::none)
        return fail(NCW_ERR_INPUT, std::string("unknown limit '") + limit +
                                       "' (expected nls, hirota, lpd or mkdv)");
    s->file.soliton.params = ncwave::apply_reduction(s->file.soliton.params, *r);
    return NCW_OK;
}

ncw_status ncw_scenario_params(const ncw_scenario* s, double* a1, double* a2, double* g) {
    if (!s || !a1 || !a2 || !g) return fail(NCW_ERR_ARGUMENT, "null argument");
    *a1 = s->file.soliton.params.alpha1;
    *a2 = s->file.soliton.params.alpha2;
    *g = s->file.soliton.params.gamma;
    return NCW_OK;
}

ncw_status ncw_scenario_mi(const ncw_scenario* s, double* c, double* k_max, size_t* samples) {
    if (!s || !c || !k_max || !samples) return fail(NCW_ERR_ARGUMENT, "null argument");
    *c = s->file.mi.c;
    *k_max = s->file.mi.k_max;
    *samples = s->file.mi.samples;
    return NCW_OK;
}

void ncw_scenario_free(ncw_scenario* s) { delete s; }

ncw_status ncw_scenario_dim(const ncw_scenario* s, size_t* dim) {
    if (!s || !dim) return fail(NCW_ERR_ARGUMENT, "null argument");
    *dim = s->file.soliton.dim();
    return NCW_OK;
}

ncw_status ncw_solution_point(const ncw_scenario* s, double x, double t, double* re, double* im) {
    if (!s || !re || !im) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        s->file.soliton.validate();
        const ncwave::ComplexMatrix v = ncwave::evaluate(s->file.soliton, x, t);
        for (std::size_t r = 0; r < v.rows(); ++r)
            for (std::size_t c = 0; c < v.cols(); ++c) {
                re[r * v.cols() + c] = v(r, c).real();
                im[r * v.cols() + c] = v(r, c).imag();
            }
        return NCW_OK;
    });
}

ncw_status ncw_closed_form_point(double lre, double lim, double q1, double q2, double c1,
                                 double a1, double a2, double g, double x, double t, double* re,
                                 double* im) {
    if (!re || !im) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const ncwave::cplx v = ncwave::one_soliton_closed_form({lre, lim}, q1, q2, c1, {a1, a2, g}, x, t);
        *re = v.real();
        *im = v.imag();
        return NCW_OK;
    });
}

ncw_status ncw_field_generate(const ncw_scenario* s, size_t threads, ncw_field** out) {
    if (!s || !out) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        *out = new ncw_field{ncwave::generate_field(s->file.soliton, s->file.grid, threads)};
        return NCW_OK;
    });
}

ncw_status ncw_field_info(const ncw_field* f, size_t* nx, size_t* nt, size_t* dim, size_t* poles) {
    if (!f) return fail(NCW_ERR_ARGUMENT, "null argument");
    if (nx) *nx = f->grid.x.count;
    if (nt) *nt = f->grid.t.count;
    if (dim) *dim = f->grid.dim;
    if (poles) *poles = f->grid.pole_count();
    return NCW_OK;
}

ncw_status ncw_field_value(const ncw_field* f, size_t it, size_t ix, size_t row, size_t col,
                           double* re, double* im, int* valid) {
    if (!f || !re || !im || !valid) return fail(NCW_ERR_ARGUMENT, "null argument");
    const auto& g = f->grid;
    if (it >= g.t.count || ix >= g.x.count || row >= g.dim || col >= g.dim)
        return fail(NCW_ERR_ARGUMENT, "index out of range");
    const std::size_t k = g.index(it, ix);
    *valid = g.valid[k] ? 1 : 0;
    *re = g.valid[k] ? g.values[k](row, col).real() : std::numeric_limits<double>::quiet_NaN();
    *im = g.valid[k] ? g.values[k](row, col).imag() : std::numeric_limits<double>::quiet_NaN();
    return NCW_OK;
}

ncw_status ncw_field_write_csv(const ncw_field* f, const char* path) {
    if (!f || !path) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        std::ofstream out(path);
        if (!out) return fail(NCW_ERR_INPUT, std::string("cannot write '") + path + "'");
        ncwave::write_field_csv(f->grid, out);
        return out ? NCW_OK : fail(NCW_ERR_INPUT, std::string("write failed for '") + path + "'");
    });
}

void ncw_field_free(ncw_field* f) { delete f; }

ncw_status ncw_verify(const ncw_field* f, const ncw_scenario* s, int order, ncw_residual_stats* out) {
    if (!f || !s || !out) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const auto& p = s->file.soliton.params;
        const auto stats = ncwave::summarize_residual(ncwave::eom_residual(f->grid, p, order), order);
        double est = std::numeric_limits<double>::quiet_NaN();
        try {
            est = ncwave::convergence_order(f->grid, eom_fn(p), order);
        } catch (const ncwave::StencilError&) {
        }
        *out = to_c(stats, est);
        return NCW_OK;
    });
}

ncw_status ncw_verify_json(const ncw_field* f, const ncw_scenario* s, int order, char** json) {
    if (!f || !s || !json) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const auto& p = s->file.soliton.params;
        const auto stats = ncwave::verify_field(f->grid, p, order);
        double est = std::numeric_limits<double>::quiet_NaN();
        try {
            est = ncwave::convergence_order(f->grid, eom_fn(p), order);
        } catch (const ncwave::StencilError&) {
        }
        nlohmann::ordered_json j;
        j["maxResidual"] = json_number(stats.max);
        j["meanResidual"] = json_number(stats.mean);
        j["gridSpacing"] = {{"x", stats.hx}, {"t", stats.ht}};
        j["stencilOrder"] = stats.order;
        j["trimmedBoundary"] = true;
        j["convergenceOrder"] = json_number(est);
        j["points"] = stats.points;
        j["skippedPoints"] = stats.skipped;
        nlohmann::ordered_json terms;
        for (const auto& [k, v] : stats.term_max) terms[k] = json_number(v);
        j["termMax"] = terms;
        *json = dup_string(j.dump(2));
        return NCW_OK;
    });
}

ncw_status ncw_verify_reduced(const ncw_field* f, const ncw_scenario* s, const char* limit,
                              int order, ncw_residual_stats* out) {
    if (!f || !s || !limit || !out) return fail(NCW_ERR_ARGUMENT, "null argument");
    const auto r = ncwave::parse_reduction(limit);
    if (!r || *r == ncwave::Reduction::none)
        return fail(NCW_ERR_INPUT, std::string("unknown limit '") + limit + "'");
    return guarded([&] {
        const ncwave::ModelParams p = s->file.soliton.params;
        const ncwave::PointwiseResidual fn = [p, red = *r](const ncwave::Jet& j,
                                                           const ncwave::ComplexMatrix& ut) {
            return ncwave::reduced_residual(red, j, ut, p);
        };
        const auto stats = ncwave::summarize_residual(ncwave::residual_field(f->grid, fn, order), order);
        double est = std::numeric_limits<double>::quiet_NaN();
        try {
            est = ncwave::convergence_order(f->grid, fn, order);
        } catch (const ncwave::StencilError&) {
        }
        *out = to_c(stats, est);
        return NCW_OK;
    });
}

ncw_status ncw_mi_growth(double k, double c, double a1, double a2, double g, double* numeric,
                         double* closed_re, double* closed_im) {
    if (!numeric || !closed_re || !closed_im) return fail(NCW_ERR_ARGUMENT, "null argument");
    const ncwave::ModelParams p{a1, a2, g};
    *numeric = ncwave::growth_rate_numeric(k, c, p);
    const ncwave::cplx w = ncwave::growth_rate_closed(k, c, p);
    *closed_re = w.real();
    *closed_im = w.imag();
    return NCW_OK;
}

ncw_status ncw_mi_sweep(double c, double a1, double a2, double g, double k_max, size_t samples,
                        const char* csv_path, char** bands_json) {
    if (!csv_path) return fail(NCW_ERR_ARGUMENT, "null argument");
    return guarded([&] {
        const ncwave::ModelParams p{a1, a2, g};
        const auto rows = ncwave::mi_sweep(c, p, k_max, samples);
        std::ofstream out(csv_path);
        if (!out) return fail(NCW_ERR_INPUT, std::string("cannot write '") + csv_path + "'");
        ncwave::write_mi_csv(rows, out);
        if (!out) return fail(NCW_ERR_INPUT, std::string("write failed for '") + csv_path + "'");
        if (bands_json) {
            nlohmann::ordered_json j;
            j["c"] = c;
            j["model"] = {{"alpha1", a1}, {"alpha2", a2}, {"gamma", g}};
            j["kMax"] = k_max;
            j["samples"] = rows.size();
            nlohmann::json bands = nlohmann::json::array();
            for (const auto& b : ncwave::unstable_band(c, p, k_max, rows.size()))
                bands.push_back({{"kLow", b.lo}, {"kHigh", b.hi}});
            j["unstableBands"] = bands;
            double peak = 0.0, kpeak = 0.0;
            for (const auto& r : rows)
                if (r.numeric > peak) { peak = r.numeric; kpeak = r.k; }
            j["maxGrowth"] = peak;
            j["kAtMaxGrowth"] = kpeak;
            *bands_json = dup_string(j.dump(2));
        }
        return NCW_OK;
    });
}

}  // extern "C"
