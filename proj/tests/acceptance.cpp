// Acceptance suite: one line per criterion, nonzero exit on any failure.
// The baric/nilpotent duration-set predicates below are transcribed directly
// from the published tables (with the registry's corrections where noted) and
// evaluated against Derived-mode classification, so the generic solvers and
// the per-family tables check each other.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "cea/chains.hpp"
#include "cea/classify.hpp"
#include "cea/rng.hpp"
#include "cea/scan.hpp"
#include "cea/solvers.hpp"
#include "support/grid_oracle.hpp"
#include "support/presets.hpp"

using namespace cea;
using namespace cea::testing;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct Sample {
    double s, t;
};

std::vector<Sample> triangle_samples(std::uint64_t seed, int count, double tmax) {
    std::vector<Sample> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        double s = u01(seed, static_cast<std::uint64_t>(i), 0) * tmax;
        double t = u01(seed, static_cast<std::uint64_t>(i), 1) * tmax;
        if (s > t) std::swap(s, t);
        out.push_back({s, t});
    }
    return out;
}

// ---------------------------------------------------------------- criterion 1
void criterion_ck() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    int worst_family = -1;
    for (int fam = 0; fam <= 24; ++fam) {
        const Chain chain = preset_chain(fam, 5.0);
        const double r = ck_verify(chain, 5.0, 500, 42).max_residual;
        if (r > worst) {
            worst = r;
            worst_family = fam;
        }
    }
    const double elapsed = seconds_since(start);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "max residual %.3e (family %d) over 25 families, 500 triples each, %.2fs",
                  worst, worst_family, elapsed);
    report(1, "Chapman-Kolmogorov law, tmax=5, seed=42, residual < 1e-9",
           worst < 1e-9 && elapsed < 5.0, buf);
}

// ---------------------------------------------------------------- criterion 2
void criterion_periodicity() {
    const Chain f9 = preset_chain(9, 8.0 * kPi);
    const double period_dev = period_check(f9, 2.0 * kPi, 200);
    const double homo_dev = homogeneity_deviation(f9, 200);
    char buf[120];
    std::snprintf(buf, sizeof buf, "period deviation %.3e, homogeneity deviation %.3e",
                  period_dev, homo_dev);
    report(2, "family 9: 2pi-periodic and time-homogeneous to 1e-12",
           period_dev < 1e-12 && homo_dev < 1e-12, buf);
}

// ---------------------------------------------------------------- criterion 3
struct BaricCase {
    std::string name;
    Chain chain;
    // predicate(s, t) -> printed membership; margin(s, t) -> distance to the
    // decision boundary (samples with tiny margin are skipped)
    std::function<bool(double, double)> predicate;
    std::function<double(double, double)> margin;
};

void criterion_baric_tables() {
    const double tmax = 3.0;
    const auto samples = triangle_samples(2024, 1000, tmax);
    std::vector<std::string> failures;

    const auto run_case = [&](const BaricCase& c) {
        for (const Sample& smp : samples) {
            if (c.margin(smp.s, smp.t) < 1e-6) continue;
            const BaricReport rep = baric_at(c.chain, smp.s, smp.t, Mode::derived);
            if (rep.boundary) continue;
            if (rep.status.baric() != c.predicate(smp.s, smp.t)) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "%s at (%.4f, %.4f)", c.name.c_str(), smp.s,
                              smp.t);
                failures.push_back(buf);
                return;
            }
        }
    };

    const auto never = [](double, double) { return false; };
    const auto always = [](double, double) { return true; };
    const auto unit_margin = [](double, double) { return 1.0; };

    std::vector<BaricCase> cases;
    for (int fam : {0, 1, 2, 3, 6, 10, 11, 14, 22})
        cases.push_back({"family " + std::to_string(fam) + " never baric",
                         preset_chain(fam, tmax), never,
                         [fam](double s, double) {
                             // family 14's psi(s) = s - 1 vanishes at s = 1
                             return fam == 14 ? std::fabs(s - 1.0) : 1.0;
                         }});
    for (int fam : {16, 17, 18})
        cases.push_back({"family " + std::to_string(fam) + " always baric",
                         preset_chain(fam, tmax), always, unit_margin});
    cases.push_back({"family 23(0,1) always baric", preset_chain(23, tmax, 1, 2, 0.0, 1.0),
                     always, unit_margin});
    cases.push_back({"family 23(2,1) always baric", preset_chain(23, tmax, 1, 2, 2.0, 1.0),
                     always, unit_margin});

    // transition families, printed duration sets with preset controllers
    cases.push_back({"family 4 T_b", preset_chain(4, tmax),
                     [](double s, double t) { return s == t; },
                     [](double s, double t) { return std::fabs(std::exp(t) - std::exp(s)); }});
    cases.push_back({"family 5 T_b", preset_chain(5, tmax),
                     [](double s, double t) { return t < 2.0 && s == t; },
                     [](double s, double t) {
                         return std::min(std::fabs(t - 2.0),
                                         std::fabs(std::exp(t) - std::exp(s)));
                     }});
    cases.push_back({"family 7 T_b", preset_chain(7, tmax),
                     [](double s, double t) { return t < 1.0 && s == t; },
                     [](double s, double t) {
                         return std::min(std::fabs(t - 1.0),
                                         std::fabs(std::exp(-t) - std::exp(-s)));
                     }});
    cases.push_back({"family 8 T_b = {t < min(a,b)}", preset_chain(8, tmax),
                     [](double, double t) { return t < 1.0; },
                     [](double, double t) { return std::fabs(t - 1.0); }});
    cases.push_back({"family 9 T_b = {t = s + pi k}", preset_chain(9, tmax),
                     [](double s, double t) {
                         const double th = t - s;
                         return std::fabs(th - kPi * std::round(th / kPi)) < 1e-9;
                     },
                     [](double s, double t) {
                         const double th = t - s;
                         return std::fabs(th - kPi * std::round(th / kPi));
                     }});
    cases.push_back({"family 12 T_b = {g(s) = +-1/h(s)}", preset_chain(12, tmax),
                     [](double s, double) { return std::fabs(s - std::exp(-s)) < 1e-9; },
                     [](double s, double) {
                         return std::min(std::fabs(s - std::exp(-s)),
                                         std::fabs(s + std::exp(-s)));
                     }});
    cases.push_back({"family 13 T_b = {t<a, psi(s)=+-1}", preset_chain(13, tmax),
                     [](double s, double t) {
                         return t < 1.0 && std::fabs(2.0 * s - 1.0) < 1e-9;
                     },
                     [](double s, double t) {
                         return std::min({std::fabs(t - 1.0), std::fabs(2.0 * s - 1.0),
                                          std::fabs(2.0 * s + 1.0)});
                     }});
    cases.push_back({"family 15 T_b = {t<a, psi(s)=0}", preset_chain(15, tmax),
                     [](double s, double t) {
                         return t < 1.0 && std::fabs(2.0 * s - 1.0) < 1e-9;
                     },
                     [](double s, double t) {
                         return std::min(std::fabs(t - 1.0), std::fabs(2.0 * s - 1.0));
                     }});
    cases.push_back({"family 19 T_b (cutoff symbol bound to b)", preset_chain(19, tmax),
                     [](double, double t) { return t < 2.0; },
                     [](double, double t) { return std::fabs(t - 2.0); }});
    cases.push_back({"family 20 T_b = {t<b} u {t>=b, w(s)=0}", preset_chain(20, tmax),
                     [](double s, double t) { return t < 2.0 || std::fabs(s) < 1e-9; },
                     [](double s, double t) {
                         return std::min(std::fabs(t - 2.0), t < 2.0 ? 1.0 : std::fabs(s));
                     }});
    cases.push_back({"family 21 (a<b) T_b = {t < max(a,b)}", preset_chain(21, tmax),
                     [](double, double t) { return t < 2.0; },
                     [](double, double t) { return std::fabs(t - 2.0); }});
    // registry: for a > b the printed set needs the extra condition v(s) = 0
    cases.push_back({"family 21 (a>b) hand-derived T_b", preset_chain(21, tmax, 2.0, 1.0),
                     [](double s, double t) {
                         return t < 1.0 || (t < 2.0 && std::fabs(s) < 1e-9);
                     },
                     [](double s, double t) {
                         return std::min({std::fabs(t - 1.0), std::fabs(t - 2.0),
                                          t < 1.0 ? 1.0 : std::fabs(s)});
                     }});
    cases.push_back({"family 23(3,1) T_b = {theta(s)=theta(t)}", preset_chain(23, tmax),
                     [](double s, double t) { return s == t; },
                     [](double s, double t) { return std::fabs(std::exp(t) - std::exp(s)); }});
    cases.push_back({"family 24 T_b = {t < a}", preset_chain(24, tmax),
                     [](double, double t) { return t < 1.0; },
                     [](double, double t) { return std::fabs(t - 1.0); }});

    for (const BaricCase& c : cases) run_case(c);
    report(3, "baric duration tables (Theorem 4.2 groups, registry corrections)",
           failures.empty(),
           failures.empty() ? std::to_string(cases.size()) + " cases x 1000 samples"
                            : "first failure: " + failures.front());
}

// ---------------------------------------------------------------- criterion 4
void criterion_nilpotent_tables() {
    const double tmax = 3.0;
    const auto samples = triangle_samples(4096, 1000, tmax);
    std::vector<std::string> failures;

    const auto run_case = [&](const std::string& name, const Chain& chain,
                              const std::function<bool(double, double)>& unique,
                              const std::function<double(double, double)>& margin) {
        for (const Sample& smp : samples) {
            if (margin(smp.s, smp.t) < 1e-6) continue;
            const NilpotentReport rep = nilpotent_at(chain, smp.s, smp.t, Mode::derived);
            if (rep.unique != unique(smp.s, smp.t)) {
                char buf[128];
                std::snprintf(buf, sizeof buf, "%s at (%.4f, %.4f)", name.c_str(), smp.s,
                              smp.t);
                failures.push_back(buf);
                return;
            }
        }
    };

    const auto yes = [](double, double) { return true; };
    const auto no = [](double, double) { return false; };
    const auto far = [](double, double) { return 1.0; };

    for (int fam : {3, 4, 5, 9, 10, 17, 22, 23, 24})
        run_case("family " + std::to_string(fam) + " unique everywhere",
                 preset_chain(fam, tmax), yes, far);
    for (int fam : {0, 1, 2, 16, 19})
        run_case("family " + std::to_string(fam) + " non-unique everywhere",
                 preset_chain(fam, tmax), no, far);
    for (int fam : {6, 7, 8, 11, 18})
        run_case("family " + std::to_string(fam) + " T_nil = {t < a}",
                 preset_chain(fam, tmax),
                 [](double, double t) { return t < 1.0; },
                 [](double, double t) { return std::fabs(t - 1.0); });
    // registry corrections: strict inequalities, s arguments
    run_case("family 12 T_nil = {g^2(s) < 1/h^2(s)}", preset_chain(12, tmax),
             [](double s, double) { return s * std::exp(s) < 1.0; },
             [](double s, double) { return std::fabs(s * std::exp(s) - 1.0); });
    run_case("family 13 T_nil = {t<a, psi^2(s) < 1}", preset_chain(13, tmax),
             [](double s, double t) { return t < 1.0 && 4.0 * s * s < 1.0; },
             [](double s, double t) {
                 return std::min(std::fabs(t - 1.0), std::fabs(4.0 * s * s - 1.0));
             });
    run_case("family 14 T_nil = {Phi(s) psi(s) > 0}", preset_chain(14, tmax),
             [](double s, double) { return s > 1.0; },
             [](double s, double) { return std::fabs(s - 1.0); });
    run_case("family 15 T_nil = {t<a, psi(s) > 0}", preset_chain(15, tmax),
             [](double s, double t) { return t < 1.0 && s > 0.5; },
             [](double s, double t) {
                 return std::min(std::fabs(t - 1.0), std::fabs(s - 0.5));
             });
    run_case("family 20 T_nil = {t<b} u {t>=b, w(s)/Phi(s) > 0}", preset_chain(20, tmax),
             [](double s, double t) { return t < 2.0 || -s > 0.0; },
             [](double s, double t) {
                 return std::min(std::fabs(t - 2.0), t < 2.0 ? 1.0 : std::fabs(s));
             });
    run_case("family 21 (a<b) T_nil = {t < min(a,b)}", preset_chain(21, tmax),
             [](double, double t) { return t < 1.0; },
             [](double, double t) { return std::fabs(t - 1.0); });
    run_case("family 21 (a>b) T_nil adds {b<=t<a, v(s)>0}", preset_chain(21, tmax, 2.0, 1.0),
             [](double s, double t) { return t < 1.0 || (t < 2.0 && s > 0.0); },
             [](double s, double t) {
                 return std::min({std::fabs(t - 1.0), std::fabs(t - 2.0),
                                  t < 1.0 ? 1.0 : std::fabs(s)});
             });

    report(4, "nilpotent duration tables (Theorem 5.1 groups, registry corrections)",
           failures.empty(),
           failures.empty() ? "21 cases x 1000 samples"
                            : "first failure: " + failures.front());
}

// ---------------------------------------------------------------- criterion 5
void criterion_idempotent_oracle() {
    const auto start = std::chrono::steady_clock::now();
    int mismatches = 0;
    double worst_residual = 0.0;
    std::string first_bad;
    for (int i = 0; i < 1000; ++i) {
        const int fam = static_cast<int>(mix_bits(555, i, 9) % 25);
        double s = u01(555, static_cast<std::uint64_t>(i), 0) * 3.0;
        double t = u01(555, static_cast<std::uint64_t>(i), 1) * 3.0;
        if (s > t) std::swap(s, t);
        const Chain chain = preset_chain(fam, 3.0);
        const StructMatrix2 m = chain.matrix_at(s, t);
        const IdempotentSet set = idempotents(m);
        for (double r : set.residuals) worst_residual = std::max(worst_residual, r);
        const auto oracle = grid_oracle_idempotents(m, oracle_radius(m));
        bool ok = set.points.size() == oracle.size();
        if (ok) {
            for (const AlgebraElement& p : set.points) {
                bool found = false;
                for (const AlgebraElement& q : oracle)
                    if (point_dist(p, q) <= 1e-7) { found = true; break; }
                ok = ok && found;
            }
        }
        if (!ok) {
            ++mismatches;
            if (first_bad.empty()) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "family %d (s,t)=(%.3f,%.3f)", fam, s, t);
                first_bad = buf;
            }
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "1000 draws, %d mismatches, worst residual %.2e, %.2fs%s%s", mismatches,
                  worst_residual, seconds_since(start), first_bad.empty() ? "" : ", first: ",
                  first_bad.c_str());
    report(5, "idempotents: quartic reduction == grid-refinement oracle (1e-7), "
              "residuals < 1e-10",
           mismatches == 0 && worst_residual < 1e-10, buf);
}

// ---------------------------------------------------------------- criterion 6
void criterion_family4_transition() {
    ChainSpec s4;
    s4.family = 4;
    s4.controllers.emplace(Slot::Phi, ControllerFn::make_exp(3.0));
    s4.controllers.emplace(Slot::Psi, ControllerFn::make_exp(1.0));
    const Chain chain(std::move(s4), 1.0);
    const double tau_star = 0.5 * std::log(2.0);

    bool counts_ok = true;
    for (double tau = 0.02; tau <= tau_star - 0.01 + 1e-12; tau += 0.02)
        for (double s = 0.0; s + tau <= 1.0; s += 0.21)
            counts_ok = counts_ok &&
                        idempotent_set_at(chain, s, s + tau, Mode::derived).points.size() == 4;
    for (double tau = tau_star + 0.01; tau <= 0.99; tau += 0.02)
        for (double s = 0.0; s + tau <= 1.0; s += 0.21)
            counts_ok = counts_ok &&
                        idempotent_set_at(chain, s, s + tau, Mode::derived).points.size() == 2;

    const int n = 400;
    const double h = 1.0 / n;
    const auto pairs = transition_boundary(chain, 1.0, n, Property::idempotents);
    bool boundary_ok = !pairs.empty();
    double worst_off = 0.0;
    for (const CellPair& p : pairs) {
        const double mid = 0.5 * ((p.j1 - p.i1) + (p.j2 - p.i2)) * h;
        worst_off = std::max(worst_off, std::fabs(mid - tau_star));
    }
    boundary_ok = boundary_ok && worst_off <= h;

    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "%zu boundary cell pairs at n=400, max offset from ln(2)/2 = %.5f (h=%.5f)",
                  pairs.size(), worst_off, h);
    report(6, "family 4 (exp 3t / exp t): 4 -> 2 idempotents across tau = ln(2)/2",
           counts_ok && boundary_ok, buf);
}

// ---------------------------------------------------------------- criterion 7
void criterion_family8_counts() {
    bool ok = true;
    const Chain ab(preset_family(8, 1.0, 2.0), 5.0);
    for (const Sample& smp : triangle_samples(88, 300, 3.0)) {
        const std::size_t n = idempotent_set_at(ab, smp.s, smp.t, Mode::derived).points.size();
        const std::size_t want = smp.t < 1.0 ? 4 : 1;
        if (std::fabs(smp.t - 1.0) < 1e-9) continue;
        ok = ok && n == want;
    }
    const Chain ba(preset_family(8, 2.0, 1.0), 5.0);
    for (const Sample& smp : triangle_samples(89, 300, 3.0)) {
        if (std::fabs(smp.t - 1.0) < 1e-9 || std::fabs(smp.t - 2.0) < 1e-9) continue;
        const std::size_t n = idempotent_set_at(ba, smp.s, smp.t, Mode::derived).points.size();
        const std::size_t want = smp.t < 1.0 ? 4 : smp.t < 2.0 ? 2 : 1;
        ok = ok && n == want;
    }
    report(7, "family 8 idempotent counts: 4/1 across t=a (a<=b); 4/2/1 for (a,b)=(2,1)",
           ok, "600 sampled time pairs");
}

// ---------------------------------------------------------------- criterion 8
void criterion_measures() {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = 2026;
    const Chain f8 = preset_chain(8, 3.0);
    const Chain f24 = preset_chain(24, 3.0);
    const Chain f9 = preset_chain(9, 3.0);
    const Chain f19 = preset_chain(19, 3.0, 1.0, 1.0); // single cutoff bound to 1
    const double e8 =
        measure_estimate(f8, Property::baric, 3.0, 100000, seed, Mode::derived).estimate;
    const double e24 =
        measure_estimate(f24, Property::baric, 3.0, 100000, seed, Mode::derived).estimate;
    const double e9 =
        measure_estimate(f9, Property::baric, 3.0, 100000, seed, Mode::derived).estimate;
    const double e19 =
        measure_estimate(f19, Property::baric, 3.0, 100000, seed, Mode::derived).estimate;
    const double elapsed = seconds_since(start);
    const bool ok = std::fabs(e8 - 0.5) <= 0.02 && std::fabs(e24 - 0.5) <= 0.02 &&
                    e9 == 0.0 && std::fabs(e19 - 0.5) <= 0.02 && elapsed < 10.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "nu(8)=%.4f nu(24)=%.4f nu(9)=%g nu(19)=%.4f, 1e5 samples each, %.2fs",
                  e8, e24, e9, e19, elapsed);
    report(8, "baric measures: 0.5 +- 0.02 for families 8/24/19, exactly 0 for family 9",
           ok, buf);
}

// ---------------------------------------------------------------- criterion 9
void criterion_probe() {
    const Chain f5 = preset_chain(5, 3.0);
    const Chain f7 = preset_chain(7, 3.0);
    const Chain f23 = preset_chain(23, 3.0);
    const double e5 = countable_variation_probe(f5, 3.0, 100000, 31).estimate;
    const double e7 = countable_variation_probe(f7, 3.0, 100000, 31).estimate;
    const double e23 = countable_variation_probe(f23, 3.0, 100000, 31).estimate;
    char buf[96];
    std::snprintf(buf, sizeof buf, "estimates %g / %g / %g over 1e5 samples", e5, e7, e23);
    report(9, "Theorem 4.4 probe: monotone controllers give measure zero (families 5,7,23)",
           e5 == 0.0 && e7 == 0.0 && e23 == 0.0, buf);
}

// --------------------------------------------------------------- criterion 10
void criterion_registry_honesty() {
    // the flagship registry point: family 9 at (s,t) = (0, 2pi)
    const Chain f9 = preset_chain(9, 8.0);
    const std::size_t derived =
        idempotent_set_at(f9, 0.0, 2.0 * kPi, Mode::derived).points.size();
    const std::size_t paper =
        idempotent_set_at(f9, 0.0, 2.0 * kPi, Mode::paper).points.size();

    // sweep: disagreements between the modes happen only on registry entries
    std::vector<std::string> stray;
    bool family12_disagrees = false;
    for (int fam = 0; fam <= 24; ++fam) {
        const Chain chain = preset_chain(fam, 3.0);
        for (const Sample& smp : triangle_samples(606 + fam, 200, 3.0)) {
            const auto bd = baric_at(chain, smp.s, smp.t, Mode::derived);
            const auto bp = baric_at(chain, smp.s, smp.t, Mode::paper);
            if (!bd.boundary && !bp.boundary && bd.status.baric() != bp.status.baric())
                stray.push_back("baric family " + std::to_string(fam));

            const bool nd = nilpotent_at(chain, smp.s, smp.t, Mode::derived).unique;
            const bool np = nilpotent_at(chain, smp.s, smp.t, Mode::paper).unique;
            if (nd != np) {
                if (fam == 12 || fam == 13) family12_disagrees = true;
                else stray.push_back("nilpotent family " + std::to_string(fam));
            }

            const auto di = idempotent_set_at(chain, smp.s, smp.t, Mode::derived);
            if (di.discriminant && std::fabs(*di.discriminant) < 1e-6) continue;
            const auto pi_ = idempotent_set_at(chain, smp.s, smp.t, Mode::paper);
            if (di.points.size() != pi_.points.size())
                stray.push_back("idempotents family " + std::to_string(fam));
            if (!stray.empty()) break;
        }
        if (!stray.empty()) break;
    }

    const bool ok = derived == 4 && paper == 3 && stray.empty() && family12_disagrees;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "family 9 at 2pi: derived %zu vs printed %zu; registry-only disagreement "
                  "%s; family 12 nilpotent discrepancy observed: %s",
                  derived, paper, stray.empty() ? "yes" : stray.front().c_str(),
                  family12_disagrees ? "yes" : "no");
    report(10, "registry honesty: PaperTable vs Derived differ only on registry entries",
           ok, buf);
}

} // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    criterion_ck();
    criterion_periodicity();
    criterion_baric_tables();
    criterion_nilpotent_tables();
    criterion_idempotent_oracle();
    criterion_family4_transition();
    criterion_family8_counts();
    criterion_measures();
    criterion_probe();
    criterion_registry_honesty();
    std::printf("%d of 10 criteria passed in %.2fs\n", 10 - g_failures,
                seconds_since(start));
    return g_failures == 0 ? 0 : 1;
}
