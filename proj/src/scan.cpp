#include "cea/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "cea/errors.hpp"
#include "cea/jsonout.hpp"
#include "cea/rng.hpp"

namespace cea {

namespace {

int worker_count(int threads) {
    if (threads > 0) return threads;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Runs fn(worker, lo, hi) over a partition of [0, n); rethrows the first
/// exception. Work results must depend only on the element index, so the
/// partitioning never changes the outcome.
template <typename Fn>
void parallel_ranges(long n, int threads, Fn&& fn) {
    const int workers =
        static_cast<int>(std::min<long>(worker_count(threads), std::max<long>(n, 1)));
    if (workers <= 1) {
        fn(0, 0L, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    const long chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const long lo = w * chunk;
        const long hi = std::min(n, lo + chunk);
        pool.emplace_back([&, w, lo, hi] {
            try {
                if (lo < hi) fn(w, lo, hi);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

bool strict_hit(const Chain& chain, Property p, double s, double t, Mode mode) {
    switch (p) {
        case Property::baric: {
            const BaricReport r = baric_at(chain, s, t, mode);
            return r.status.baric() && !r.boundary;
        }
        case Property::nilpotent:
            return nilpotent_at(chain, s, t, mode).unique;
        case Property::idempotents:
            return idempotent_set_at(chain, s, t, mode).points.size() >= 2;
    }
    return false;
}

} // namespace

std::string property_name(Property p) {
    switch (p) {
        case Property::baric: return "baric";
        case Property::nilpotent: return "nilpotent";
        case Property::idempotents: return "idempotents";
    }
    return "?";
}

std::optional<Property> property_from_name(const std::string& name) {
    if (name == "baric") return Property::baric;
    if (name == "nilpotent") return Property::nilpotent;
    if (name == "idempotents") return Property::idempotents;
    return std::nullopt;
}

std::string cell_label(Property p, int code) {
    if (code < 0) return "outside";
    switch (p) {
        case Property::baric:
            return code == 0 ? "not_baric" : code == 1 ? "baric" : "boundary";
        case Property::nilpotent:
            return code == 0 ? "unique_zero" : code == 1 ? "curve" : "all";
        case Property::idempotents:
            return "count_" + std::to_string(code);
    }
    return "?";
}

int classify_cell(const Chain& chain, Property p, double s, double t, Mode mode) {
    switch (p) {
        case Property::baric: {
            const BaricReport r = baric_at(chain, s, t, mode);
            if (r.boundary) return 2;
            return r.status.baric() ? 1 : 0;
        }
        case Property::nilpotent: {
            const NilpotentReport r = nilpotent_at(chain, s, t, mode);
            if (r.unique) return 0;
            return r.detail.kind == NilpotentClass::Kind::all ? 2 : 1;
        }
        case Property::idempotents:
            return static_cast<int>(idempotent_set_at(chain, s, t, mode).points.size());
    }
    return -1;
}

Diagram grid_scan(const Chain& chain, Property p, double tmax, int n, Mode mode,
                  int threads) {
    if (n < 2) throw PreconditionViolated("grid_scan needs n >= 2");
    if (!(tmax > 0.0)) throw PreconditionViolated("grid_scan needs tmax > 0");
    Diagram d;
    d.tmax = tmax;
    d.n = n;
    d.property = p;
    d.mode = mode;
    d.codes.assign(static_cast<std::size_t>(n) * n, -1);
    const double h = tmax / n;
    const long total = static_cast<long>(n) * n;
    parallel_ranges(total, threads, [&](int, long lo, long hi) {
        for (long k = lo; k < hi; ++k) {
            const int i = static_cast<int>(k / n);
            const int j = static_cast<int>(k % n);
            if (i > j) continue; // cell center below the diagonal
            const double s = (i + 0.5) * h;
            const double t = (j + 0.5) * h;
            try {
                d.codes[static_cast<std::size_t>(k)] = classify_cell(chain, p, s, t, mode);
            } catch (const std::exception& e) {
                throw DomainError("cell (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") at (s,t)=(" + std::to_string(s) + "," +
                                  std::to_string(t) + "): " + e.what());
            }
        }
    });
    return d;
}

MeasureEstimate measure_estimate(const Chain& chain, Property p, double tmax,
                                 long samples, std::uint64_t seed, Mode mode,
                                 int threads) {
    if (samples < 100) throw PreconditionViolated("measure_estimate needs samples >= 100");
    if (!(tmax > 0.0)) throw PreconditionViolated("measure_estimate needs tmax > 0");
    const int workers = worker_count(threads);
    std::vector<long> hits(static_cast<std::size_t>(std::max(workers, 1)), 0);
    parallel_ranges(samples, threads, [&](int w, long lo, long hi) {
        long local = 0;
        for (long i = lo; i < hi; ++i) {
            double s = u01(seed, static_cast<std::uint64_t>(i), 0) * tmax;
            double t = u01(seed, static_cast<std::uint64_t>(i), 1) * tmax;
            if (s > t) std::swap(s, t);
            if (strict_hit(chain, p, s, t, mode)) ++local;
        }
        hits[static_cast<std::size_t>(w)] += local;
    });
    long total_hits = 0;
    for (long h : hits) total_hits += h;
    const double area = 0.5 * tmax * tmax;
    const double frac = static_cast<double>(total_hits) / static_cast<double>(samples);
    MeasureEstimate est;
    est.estimate = frac * area;
    est.stderr_ = area * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    est.samples = samples;
    est.seed = seed;
    return est;
}

std::vector<CellPair> transition_boundary(const Diagram& d) {
    std::vector<CellPair> out;
    for (int i = 0; i < d.n; ++i) {
        for (int j = i; j < d.n; ++j) {
            const int c = d.code(i, j);
            if (c < 0) continue;
            if (j + 1 < d.n && d.code(i, j + 1) >= 0 && d.code(i, j + 1) != c)
                out.push_back({i, j, i, j + 1});
            if (i + 1 < d.n && j >= i + 1 && d.code(i + 1, j) >= 0 && d.code(i + 1, j) != c)
                out.push_back({i, j, i + 1, j});
        }
    }
    return out;
}

std::vector<CellPair> transition_boundary(const Chain& chain, double tmax, int n,
                                          Property p, Mode mode, int threads) {
    return transition_boundary(grid_scan(chain, p, tmax, n, mode, threads));
}

MeasureEstimate countable_variation_probe(const Chain& chain, double tmax, long samples,
                                          std::uint64_t seed, int threads) {
    const int fam = chain.family();
    const auto controller_value = [&](double t) -> double {
        switch (fam) {
            case 4: return chain.controller(Slot::Phi, t) / chain.controller(Slot::Psi, t);
            case 5: return chain.controller(Slot::Phi, t);
            case 7: return chain.controller(Slot::Psi, t);
            case 23: return chain.controller(Slot::theta, t);
            default:
                throw PreconditionViolated(
                    "countable-variation probe applies to families 4, 5, 7, 23 only");
        }
    };
    constexpr int kProbe = 2048;
    int direction = 0;
    double prev = controller_value(0.0);
    for (int k = 1; k <= kProbe; ++k) {
        const double cur = controller_value(tmax * k / kProbe);
        const int step = cur > prev ? 1 : cur < prev ? -1 : 0;
        if (step == 0 || (direction != 0 && step != direction))
            throw PreconditionViolated(
                "baric controller of family " + family_name(fam) +
                " is not strictly monotone on [0, " + std::to_string(tmax) + "]");
        direction = step;
        prev = cur;
    }
    return measure_estimate(chain, Property::baric, tmax, samples, seed, Mode::derived,
                            threads);
}

std::string diagram_to_csv(const Diagram& d) {
    std::ostringstream o;
    o << "s,t,code,label\n";
    const double h = d.tmax / d.n;
    for (int i = 0; i < d.n; ++i) {
        for (int j = 0; j < d.n; ++j) {
            const int c = d.code(i, j);
            o << cnum((i + 0.5) * h) << ',' << cnum((j + 0.5) * h) << ',' << c << ','
              << cell_label(d.property, c) << '\n';
        }
    }
    return o.str();
}

std::string diagram_to_json(const Diagram& d) {
    std::ostringstream o;
    o << "{\"tmax\":" << jnum(d.tmax) << ",\"resolution\":" << d.n << ",\"property\":"
      << jstr(property_name(d.property)) << ",\"mode\":" << jstr(mode_name(d.mode))
      << ",\"cells\":[";
    for (int i = 0; i < d.n; ++i) {
        if (i) o << ',';
        o << '[';
        for (int j = 0; j < d.n; ++j) {
            if (j) o << ',';
            o << d.code(i, j);
        }
        o << ']';
    }
    o << "]}";
    return o.str();
}

std::string measure_to_json(const MeasureEstimate& m) {
    std::ostringstream o;
    o << "{\"estimate\":" << jnum(m.estimate) << ",\"stderr\":" << jnum(m.stderr_)
      << ",\"samples\":" << m.samples << ",\"seed\":" << m.seed << "}";
    return o.str();
}

} // namespace cea
