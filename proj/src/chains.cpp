#include "cea/chains.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "cea/errors.hpp"
#include "cea/rng.hpp"

namespace cea {

namespace {

constexpr double kNonvanishing = 1e-12;
constexpr int kValidationSamples = 10000;

const std::array<std::pair<Slot, const char*>, 9> kSlotNames{{
    {Slot::Phi, "Phi"}, {Slot::Psi, "Psi"}, {Slot::h, "h"},
    {Slot::g, "g"}, {Slot::psi, "psi"}, {Slot::theta, "theta"},
    {Slot::v, "v"}, {Slot::w, "w"}, {Slot::f, "f"},
}};

FamilyInfo make_info(std::vector<SlotReq> slots, bool a, bool b, bool shape) {
    FamilyInfo fi;
    fi.slots = std::move(slots);
    fi.needs_a = a;
    fi.needs_b = b;
    fi.needs_shape = shape;
    return fi;
}

const std::array<FamilyInfo, 26>& family_table() {
    static const std::array<FamilyInfo, 26> table = [] {
        std::array<FamilyInfo, 26> t;
        t[0] = make_info({}, false, false, false);
        t[1] = make_info({{Slot::Psi, true}}, false, false, false);
        t[2] = make_info({}, false, true, false);
        t[3] = make_info({{Slot::Phi, true}}, false, false, false);
        t[4] = make_info({{Slot::Phi, true}, {Slot::Psi, true}}, false, false, false);
        t[5] = make_info({{Slot::Phi, true}}, false, true, false);
        t[6] = make_info({}, true, false, false);
        t[7] = make_info({{Slot::Psi, true}}, true, false, false);
        t[8] = make_info({}, true, true, false);
        t[9] = make_info({}, false, false, false);
        t[10] = make_info({{Slot::h, true}, {Slot::g, false}}, false, false, false);
        t[11] = make_info({{Slot::psi, false}}, true, false, false);
        t[12] = make_info({{Slot::h, true}, {Slot::g, false}}, false, false, false);
        t[13] = make_info({{Slot::psi, false}}, true, false, false);
        t[14] = make_info({{Slot::Phi, true}, {Slot::psi, false}}, false, false, false);
        t[15] = make_info({{Slot::psi, false}}, true, false, false);
        t[16] = make_info({{Slot::psi, true}, {Slot::g, false}}, false, false, false);
        t[17] = make_info({{Slot::Phi, true}, {Slot::psi, true}, {Slot::g, false}},
                          false, false, false);
        t[18] = make_info({{Slot::psi, true}, {Slot::h, false}}, true, false, false);
        t[19] = make_info({{Slot::h, false}}, false, true, false);
        t[20] = make_info({{Slot::Phi, true}, {Slot::v, false}, {Slot::w, false}},
                          false, true, false);
        t[21] = make_info({{Slot::v, false}}, true, true, false);
        t[22] = make_info({{Slot::f, false}}, false, false, false);
        t[23] = make_info({{Slot::theta, true}}, false, false, true);
        t[24] = make_info({{Slot::g, false}}, true, false, false);
        t[25] = make_info({}, false, false, false); // markov2
        return t;
    }();
    return table;
}

} // namespace

std::string slot_name(Slot s) {
    for (const auto& [slot, name] : kSlotNames)
        if (slot == s) return name;
    return "?";
}

std::optional<Slot> slot_from_name(const std::string& name) {
    for (const auto& [slot, n] : kSlotNames)
        if (name == n) return slot;
    return std::nullopt;
}

const FamilyInfo& family_info(int family) {
    if (family < 0 || family > kMarkovFamily)
        throw UnsupportedFamily("family id " + std::to_string(family));
    return family_table()[static_cast<std::size_t>(family)];
}

std::string family_name(int family) {
    return family == kMarkovFamily ? "markov2" : std::to_string(family);
}

std::optional<int> family_from_name(const std::string& name) {
    if (name == "markov2") return kMarkovFamily;
    try {
        std::size_t pos = 0;
        const int id = std::stoi(name, &pos);
        if (pos == name.size() && id >= 0 && id <= 24) return id;
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

std::string violation_kind_name(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::missing_slot: return "MissingSlot";
        case Violation::Kind::unexpected_slot: return "UnexpectedSlot";
        case Violation::Kind::vanishing_controller: return "VanishingController";
        case Violation::Kind::bad_cutoff: return "BadCutoff";
        case Violation::Kind::lambda_equals_mu: return "LambdaEqualsMu";
        case Violation::Kind::bad_rate_matrix: return "BadRateMatrix";
    }
    return "?";
}

std::vector<Violation> validate(const ChainSpec& spec, double tmax) {
    std::vector<Violation> out;
    if (spec.family < 0 || spec.family > kMarkovFamily) {
        out.push_back({Violation::Kind::bad_cutoff, "family", 0.0,
                       "unknown family id " + std::to_string(spec.family)});
        return out;
    }
    const FamilyInfo& fi = family_info(spec.family);

    for (const auto& [slot, fn] : spec.controllers) {
        const bool known = std::any_of(fi.slots.begin(), fi.slots.end(),
                                       [&](const SlotReq& r) { return r.slot == slot; });
        if (!known)
            out.push_back({Violation::Kind::unexpected_slot, slot_name(slot), 0.0,
                           "slot not used by family " + family_name(spec.family)});
    }

    for (const SlotReq& req : fi.slots) {
        const auto it = spec.controllers.find(req.slot);
        if (it == spec.controllers.end()) {
            out.push_back({Violation::Kind::missing_slot, slot_name(req.slot), 0.0,
                           "required by family " + family_name(spec.family)});
            continue;
        }
        double prev = 0.0;
        for (int k = 0; k <= kValidationSamples; ++k) {
            const double t = tmax * k / kValidationSamples;
            const double val = it->second(t);
            if (!std::isfinite(val)) {
                out.push_back({Violation::Kind::vanishing_controller, slot_name(req.slot),
                               t, "not evaluable (non-finite value)"});
                break;
            }
            // a sign change between samples pins a zero crossing even when
            // no sample lands inside the 1e-12 band
            if (req.nonvanishing &&
                (std::fabs(val) <= kNonvanishing || (k > 0 && std::signbit(val) != std::signbit(prev)))) {
                out.push_back({Violation::Kind::vanishing_controller, slot_name(req.slot),
                               t, "required nonvanishing"});
                break;
            }
            prev = val;
        }
    }

    const auto check_cutoff = [&](const std::optional<double>& c, bool needed,
                                  const char* name) {
        if (needed) {
            if (!c)
                out.push_back({Violation::Kind::bad_cutoff, name, 0.0, "missing"});
            else if (!(*c > 0.0) || !std::isfinite(*c))
                out.push_back({Violation::Kind::bad_cutoff, name, 0.0, "must be positive"});
        } else if (c) {
            out.push_back({Violation::Kind::bad_cutoff, name, 0.0,
                           "not used by family " + family_name(spec.family)});
        }
    };
    check_cutoff(spec.a, fi.needs_a, "a");
    check_cutoff(spec.b, fi.needs_b, "b");

    if (fi.needs_shape) {
        if (!spec.lambda || !spec.mu) {
            out.push_back({Violation::Kind::missing_slot, "lambda/mu", 0.0,
                           "family 23 needs lambda and mu"});
        } else {
            const double scale = std::max({1.0, std::fabs(*spec.lambda), std::fabs(*spec.mu)});
            if (std::fabs(*spec.lambda - *spec.mu) <= 1e-12 * scale)
                out.push_back({Violation::Kind::lambda_equals_mu, "lambda", 0.0,
                               "lambda must differ from mu"});
        }
    } else if (spec.lambda || spec.mu) {
        out.push_back({Violation::Kind::bad_cutoff, "lambda/mu", 0.0,
                       "only family 23 takes lambda/mu"});
    }

    if (spec.family == kMarkovFamily) {
        if (!spec.rate_q) {
            out.push_back({Violation::Kind::bad_rate_matrix, "Q", 0.0, "missing"});
        } else {
            const auto& q = *spec.rate_q;
            bool finite = true;
            for (double x : q) finite = finite && std::isfinite(x);
            const bool rows_zero = std::fabs(q[0] + q[1]) <= 1e-12 &&
                                   std::fabs(q[2] + q[3]) <= 1e-12;
            if (!finite || q[1] < 0.0 || q[2] < 0.0 || !rows_zero)
                out.push_back({Violation::Kind::bad_rate_matrix, "Q", 0.0,
                               "need q12,q21 >= 0 and zero row sums"});
        }
    } else if (spec.rate_q) {
        out.push_back({Violation::Kind::bad_rate_matrix, "Q", 0.0,
                       "only markov2 takes a rate matrix"});
    }

    return out;
}

ChainValidationError::ChainValidationError(std::vector<Violation> v)
    : std::runtime_error("chain spec failed validation (" + std::to_string(v.size()) +
                         " violation(s), first: " +
                         (v.empty() ? std::string("?")
                                    : violation_kind_name(v.front().kind) + " " +
                                          v.front().slot) +
                         ")"),
      violations(std::move(v)) {}

Chain::Chain(ChainSpec spec, double tmax) : spec_(std::move(spec)), tmax_(tmax) {
    auto v = validate(spec_, tmax_);
    if (!v.empty()) throw ChainValidationError(std::move(v));
}

double Chain::controller(Slot slot, double t) const {
    const auto it = spec_.controllers.find(slot);
    if (it == spec_.controllers.end())
        throw DomainError("controller " + slot_name(slot) + " not bound");
    return it->second(t);
}

double Chain::cutoff_a() const { return *spec_.a; }
double Chain::cutoff_b() const { return *spec_.b; }

StructMatrix2 Chain::matrix_at(double s, double t) const {
    const double slack = 1e-9 * std::max(1.0, tmax_);
    if (!(s >= -slack) || !(t >= s - slack) || !(t <= tmax_ + slack))
        throw DomainError("time pair (" + std::to_string(s) + ", " + std::to_string(t) +
                          ") outside validated range [0, " + std::to_string(tmax_) + "]");

    const auto Phi = [&](double x) { return controller(Slot::Phi, x); };
    const auto Psi = [&](double x) { return controller(Slot::Psi, x); };
    const auto h = [&](double x) { return controller(Slot::h, x); };
    const auto g = [&](double x) { return controller(Slot::g, x); };
    const auto psi = [&](double x) { return controller(Slot::psi, x); };

    StructMatrix2 m = StructMatrix2::zero();
    switch (spec_.family) {
        case 0:
            break;
        case 1: {
            const double r = Psi(t) / Psi(s);
            m = {0.5 * r, -0.5 * r, -0.5 * r, 0.5 * r};
            break;
        }
        case 2:
            if (t < cutoff_b()) m = {0.5, -0.5, -0.5, 0.5};
            break;
        case 3: {
            const double r = 0.5 * Phi(t) / Phi(s);
            m = {r, r, r, r};
            break;
        }
        case 4: {
            const double p = Phi(t) / Phi(s);
            const double q = Psi(t) / Psi(s);
            m = {0.5 * (p + q), 0.5 * (p - q), 0.5 * (p - q), 0.5 * (p + q)};
            break;
        }
        case 5: {
            const double p = Phi(t) / Phi(s);
            if (t < cutoff_b())
                m = {0.5 * (p + 1.0), 0.5 * (p - 1.0), 0.5 * (p - 1.0), 0.5 * (p + 1.0)};
            else
                m = {0.5 * p, 0.5 * p, 0.5 * p, 0.5 * p};
            break;
        }
        case 6:
            if (t < cutoff_a()) m = {0.5, 0.5, 0.5, 0.5};
            break;
        case 7: {
            const double q = Psi(t) / Psi(s);
            if (t < cutoff_a())
                m = {0.5 * (1.0 + q), 0.5 * (1.0 - q), 0.5 * (1.0 - q), 0.5 * (1.0 + q)};
            else
                m = {0.5 * q, -0.5 * q, -0.5 * q, 0.5 * q};
            break;
        }
        case 8: {
            const double a = cutoff_a();
            const double b = cutoff_b();
            if (t < std::min(a, b)) m = StructMatrix2::identity();
            else if (a < b && t < b) m = {0.5, -0.5, -0.5, 0.5};
            else if (a > b && t < a) m = {0.5, 0.5, 0.5, 0.5};
            break;
        }
        case 9: {
            const double th = t - s;
            m = {std::cos(th), std::sin(th), -std::sin(th), std::cos(th)};
            break;
        }
        case 10: {
            const double p = 0.5 * (h(t) + g(t)) / h(s);
            const double q = 0.5 * (h(t) - g(t)) / h(s);
            m = {p, q, p, q};
            break;
        }
        case 11:
            if (t < cutoff_a()) {
                const double p = 0.5 * (1.0 + psi(t));
                const double q = 0.5 * (1.0 - psi(t));
                m = {p, q, p, q};
            }
            break;
        case 12: {
            const double p = 0.5 * h(t) * (1.0 / h(s) + g(s));
            const double q = 0.5 * h(t) * (1.0 / h(s) - g(s));
            m = {p, p, q, q};
            break;
        }
        case 13:
            if (t < cutoff_a()) {
                const double p = 0.5 * (1.0 + psi(s));
                const double q = 0.5 * (1.0 - psi(s));
                m = {p, p, q, q};
            }
            break;
        case 14:
            m = {Phi(t) / Phi(s), 0.0, Phi(t) * psi(s), 0.0};
            break;
        case 15:
            if (t < cutoff_a()) m = {1.0, 0.0, psi(s), 0.0};
            break;
        case 16:
            m = {0.0, 0.0, g(t) / psi(s), psi(t) / psi(s)};
            break;
        case 17:
            m = {Phi(t) / Phi(s), 0.0, Phi(t) * (g(t) - g(s)) / psi(s), psi(t) / psi(s)};
            break;
        case 18:
            if (t < cutoff_a())
                m = {1.0, 0.0, (h(t) - h(s)) / psi(s), psi(t) / psi(s)};
            else
                m = {0.0, 0.0, h(t) / psi(s), psi(t) / psi(s)};
            break;
        case 19:
            if (t < cutoff_b()) m = {0.0, 0.0, h(t), 1.0};
            break;
        case 20: {
            const double vv = controller(Slot::v, t) - controller(Slot::v, s);
            if (t < cutoff_b())
                m = {Phi(t) / Phi(s), 0.0, Phi(t) * vv, 1.0};
            else
                m = {Phi(t) / Phi(s), 0.0, Phi(t) * controller(Slot::w, s), 0.0};
            break;
        }
        case 21: {
            const double a = cutoff_a();
            const double b = cutoff_b();
            const auto vc = [&](double x) { return controller(Slot::v, x); };
            if (t < std::min(a, b)) m = {1.0, 0.0, vc(t) - vc(s), 1.0};
            else if (a > b && t < a) m = {1.0, 0.0, vc(s), 0.0};
            else if (a < b && t < b) m = {0.0, 0.0, vc(t), 1.0};
            break;
        }
        case 22: {
            const double ft = controller(Slot::f, t);
            m = {ft, 1.0 - ft, ft, 1.0 - ft};
            break;
        }
        case 23: {
            const double lam = *spec_.lambda;
            const double mu = *spec_.mu;
            const double q = 1.0 - controller(Slot::theta, t) / controller(Slot::theta, s);
            const double A = (lam - 2.0 * mu) / (2.0 * (lam - mu));
            const double B = lam / (2.0 * (lam - mu));
            m = {1.0 - A * q, A * q, B * q, 1.0 - B * q};
            break;
        }
        case 24:
            if (t < cutoff_a()) {
                m = StructMatrix2::identity();
            } else {
                const double gt = g(t);
                m = {gt, 1.0 - gt, gt, 1.0 - gt};
            }
            break;
        case kMarkovFamily: {
            const auto& q = *spec_.rate_q;
            const double alpha = q[1];
            const double beta = q[2];
            const double kappa = alpha + beta;
            if (kappa <= 0.0) {
                m = StructMatrix2::identity();
            } else {
                const double e = std::exp(-kappa * (t - s));
                m = {(beta + alpha * e) / kappa, (alpha - alpha * e) / kappa,
                     (beta - beta * e) / kappa, (alpha + beta * e) / kappa};
            }
            break;
        }
        default:
            throw UnsupportedFamily("family id " + std::to_string(spec_.family));
    }

    if (!m.finite())
        throw DomainError("matrix has non-finite entries at (s,t)=(" +
                          std::to_string(s) + ", " + std::to_string(t) + ")");
    return m;
}

double ck_residual(const Chain& chain, double s, double tau, double t) {
    const StructMatrix2 direct = chain.matrix_at(s, t);
    const StructMatrix2 split = mat_mul(chain.matrix_at(s, tau), chain.matrix_at(tau, t));
    return mat_dist(direct, split);
}

CkReport ck_verify(const Chain& chain, double tmax, long trials, std::uint64_t seed) {
    CkReport report;
    report.trials = trials;
    report.seed = seed;
    for (long i = 0; i < trials; ++i) {
        std::array<double, 3> u{u01(seed, static_cast<std::uint64_t>(i), 0),
                                u01(seed, static_cast<std::uint64_t>(i), 1),
                                u01(seed, static_cast<std::uint64_t>(i), 2)};
        std::sort(u.begin(), u.end());
        const double s = u[0] * tmax;
        const double tau = u[1] * tmax;
        const double t = u[2] * tmax;
        const double r = ck_residual(chain, s, tau, t);
        if (r >= report.max_residual) {
            report.max_residual = r;
            report.worst_triple = {s, tau, t};
        }
    }
    return report;
}

double period_check(const Chain& chain, double period, int samples) {
    const double p = std::fabs(period);
    if (!(p > 0.0)) throw DomainError("period must be nonzero");
    const double range = chain.tmax() - p;
    if (!(range > 0.0))
        throw DomainError("validated range too short for period check (need tmax > |P|)");
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double s = u01(0x9e3779b9u, static_cast<std::uint64_t>(i), 0) * range;
        double t = u01(0x9e3779b9u, static_cast<std::uint64_t>(i), 1) * range;
        if (s > t) std::swap(s, t);
        worst = std::max(worst, mat_dist(chain.matrix_at(s, t + p), chain.matrix_at(s, t)));
    }
    return worst;
}

double homogeneity_deviation(const Chain& chain, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double s = u01(0x51ed2701u, static_cast<std::uint64_t>(i), 0) * chain.tmax();
        double t = u01(0x51ed2701u, static_cast<std::uint64_t>(i), 1) * chain.tmax();
        if (s > t) std::swap(s, t);
        const double c = u01(0x51ed2701u, static_cast<std::uint64_t>(i), 2) *
                         (chain.tmax() - t);
        worst = std::max(worst,
                         mat_dist(chain.matrix_at(s, t), chain.matrix_at(s + c, t + c)));
    }
    return worst;
}

ChainSpec markov2_spec(double alpha, double beta) {
    ChainSpec spec;
    spec.family = kMarkovFamily;
    spec.rate_q = {-alpha, alpha, beta, -beta};
    return spec;
}

namespace {

using nlohmann::json;

} // namespace

ChainSpec parse_chain_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw SpecParseError(std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object()) throw SpecParseError("spec must be a JSON object");

    static const std::vector<std::string> known{"family", "controllers", "a", "b",
                                                "lambda", "mu", "Q"};
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw SpecParseError("unknown key '" + key + "'");

    ChainSpec spec;
    if (!j.contains("family")) throw SpecParseError("missing 'family'");
    const json& fam = j.at("family");
    if (fam.is_string()) {
        const auto id = family_from_name(fam.get<std::string>());
        if (!id) throw SpecParseError("unknown family '" + fam.get<std::string>() + "'");
        spec.family = *id;
    } else if (fam.is_number_integer()) {
        const int id = fam.get<int>();
        if (id < 0 || id > 24) throw SpecParseError("family id out of range 0..24");
        spec.family = id;
    } else {
        throw SpecParseError("'family' must be an integer 0..24 or \"markov2\"");
    }

    if (j.contains("controllers")) {
        const json& cs = j.at("controllers");
        if (!cs.is_object()) throw SpecParseError("'controllers' must be an object");
        for (const auto& [name, cj] : cs.items()) {
            const auto slot = slot_from_name(name);
            if (!slot) throw SpecParseError("unknown controller slot '" + name + "'");
            if (!cj.is_object()) throw SpecParseError("controller must be an object");
            for (const auto& [key, _] : cj.items())
                if (key != "kind" && key != "params")
                    throw SpecParseError("unknown controller key '" + key + "'");
            if (!cj.contains("kind") || !cj.at("kind").is_string())
                throw SpecParseError("controller needs a string 'kind'");
            std::vector<double> params;
            if (cj.contains("params")) {
                if (!cj.at("params").is_array())
                    throw SpecParseError("'params' must be an array of numbers");
                for (const json& p : cj.at("params")) {
                    if (!p.is_number()) throw SpecParseError("'params' must be numbers");
                    params.push_back(p.get<double>());
                }
            }
            spec.controllers.emplace(*slot,
                                     make_controller(cj.at("kind").get<std::string>(),
                                                     std::move(params)));
        }
    }

    const auto read_opt = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key)) return std::nullopt;
        if (!j.at(key).is_number()) throw SpecParseError(std::string("'") + key +
                                                         "' must be a number");
        return j.at(key).get<double>();
    };
    spec.a = read_opt("a");
    spec.b = read_opt("b");
    spec.lambda = read_opt("lambda");
    spec.mu = read_opt("mu");

    if (j.contains("Q")) {
        const json& q = j.at("Q");
        if (!q.is_array() || q.size() != 2 || !q[0].is_array() || q[0].size() != 2 ||
            !q[1].is_array() || q[1].size() != 2)
            throw SpecParseError("'Q' must be a 2x2 array of numbers");
        std::array<double, 4> rq{};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                if (!q[r][c].is_number()) throw SpecParseError("'Q' entries must be numbers");
                rq[static_cast<std::size_t>(2 * r + c)] = q[r][c].get<double>();
            }
        spec.rate_q = rq;
    }
    return spec;
}

std::string chain_spec_to_json(const ChainSpec& spec) {
    json j;
    if (spec.family == kMarkovFamily) j["family"] = "markov2";
    else j["family"] = spec.family;
    if (!spec.controllers.empty()) {
        json cs = json::object();
        for (const auto& [slot, fn] : spec.controllers) {
            cs[slot_name(slot)] = {{"kind", kind_string(fn)}, {"params", fn.params}};
        }
        j["controllers"] = cs;
    }
    if (spec.a) j["a"] = *spec.a;
    if (spec.b) j["b"] = *spec.b;
    if (spec.lambda) j["lambda"] = *spec.lambda;
    if (spec.mu) j["mu"] = *spec.mu;
    if (spec.rate_q) {
        const auto& q = *spec.rate_q;
        j["Q"] = {{q[0], q[1]}, {q[2], q[3]}};
    }
    return j.dump();
}

} // namespace cea
