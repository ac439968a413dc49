#include "fieldio.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "darboux.hpp"
#include "error.hpp"

namespace ncwave {

std::size_t thread_count() {
    if (const char* env = std::getenv("NCWAVE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

FieldGrid generate_field(const SolitonScenario& s, const GridSpec& g, std::size_t threads) {
    s.validate();
    const Axis xa = Axis::span(g.x_min, g.x_max, g.nx);
    const Axis ta = Axis::span(g.t_min, g.t_max, g.nt);
    FieldGrid grid(xa, ta, s.dim(), s.mode);
    if (threads == 0) threads = thread_count();
    threads = std::max<std::size_t>(1, std::min(threads, ta.count));

    auto work = [&](std::size_t t0, std::size_t t1) {
        for (std::size_t it = t0; it < t1; ++it)
            for (std::size_t ix = 0; ix < xa.count; ++ix) {
                const std::size_t k = grid.index(it, ix);
                try {
                    ComplexMatrix v = evaluate(s, xa.at(ix), ta.at(it));
                    if (v.finite()) grid.values[k] = std::move(v);
                    else grid.valid[k] = 0;
                } catch (const PoleError&) {
                    grid.valid[k] = 0;
                }
            }
    };
    if (threads == 1) {
        work(0, ta.count);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (ta.count + threads - 1) / threads;
        for (std::size_t w = 0; w < threads; ++w) {
            const std::size_t a = w * chunk, b = std::min(ta.count, a + chunk);
            if (a < b) pool.emplace_back(work, a, b);
        }
        for (auto& th : pool) th.join();
    }
    return grid;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

void write_field_csv(const FieldGrid& grid, std::ostream& out) {
    const bool scalar = grid.dim == 1;
    out << "x,t,status";
    if (scalar) {
        out << ",u_re,u_im,u_abs";
    } else {
        for (std::size_t r = 0; r < grid.dim; ++r)
            for (std::size_t c = 0; c < grid.dim; ++c) {
                const std::string n = "u" + std::to_string(r + 1) + std::to_string(c + 1);
                out << "," << n << "_re," << n << "_im," << n << "_abs";
            }
    }
    out << "\n";
    const std::string nan3 = ",nan,nan,nan";
    for (std::size_t it = 0; it < grid.t.count; ++it)
        for (std::size_t ix = 0; ix < grid.x.count; ++ix) {
            const std::size_t k = grid.index(it, ix);
            out << format_double(grid.x.at(ix)) << ',' << format_double(grid.t.at(it)) << ','
                << (grid.valid[k] ? "ok" : "pole");
            for (std::size_t r = 0; r < grid.dim; ++r)
                for (std::size_t c = 0; c < grid.dim; ++c) {
                    if (!grid.valid[k]) {
                        out << nan3;
                        continue;
                    }
                    const cplx v = grid.values[k](r, c);
                    out << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
                        << format_double(std::abs(v));
                }
            out << '\n';
        }
}

std::vector<MiRow> mi_sweep(double c, const ModelParams& params, double k_max, std::size_t samples) {
    if (!(k_max > 0.0)) throw DimensionError("k_max must be positive");
    if (samples < 100) throw DimensionError("samples must be at least 100");
    if (samples % 2 == 0) ++samples;  // keep k = 0 on the grid
    std::vector<MiRow> rows;
    rows.reserve(samples);
    const std::size_t mid = samples / 2;
    for (std::size_t i = 0; i < samples; ++i) {
        const double k = i == mid ? 0.0
                                  : k_max * (static_cast<double>(i) - static_cast<double>(mid)) /
                                        static_cast<double>(mid);
        const double num = growth_rate_numeric(k, c, params);
        rows.push_back({k, growth_rate_closed(k, c, params), num, num > 1e-12});
    }
    return rows;
}

void write_mi_csv(const std::vector<MiRow>& rows, std::ostream& out) {
    out << "k,omegaRe,omegaIm,growthNumeric,unstable\n";
    for (const auto& r : rows)
        out << format_double(r.k) << ',' << format_double(r.closed.real()) << ','
            << format_double(r.closed.imag()) << ',' << format_double(r.numeric) << ','
            << (r.unstable ? 1 : 0) << '\n';
}

}  // namespace ncwave
