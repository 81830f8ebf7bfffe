#include "cea/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cea/chains.hpp"
#include "cea/classify.hpp"
#include "cea/errors.hpp"
#include "cea/jsonout.hpp"
#include "cea/scan.hpp"

namespace cea {

namespace {

struct CliError {
    std::string kind;
    std::string detail;
    int exit_code;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{"io", "cannot read spec file '" + path + "'", 2};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Mode parse_mode(const std::string& name) {
    if (name == "derived") return Mode::derived;
    if (name == "paper") return Mode::paper;
    throw CliError{"usage", "mode must be 'paper' or 'derived'", 4};
}

Property parse_property(const std::string& name) {
    const auto p = property_from_name(name);
    if (!p) throw CliError{"usage", "property must be baric|nilpotent|idempotents", 4};
    return *p;
}

struct RunConfig {
    std::string spec_path;
    std::optional<double> s, t, tau;
    double tmax = 0.0;
    bool tmax_set = false;
    int grid = 100;
    long samples = 100000;
    std::uint64_t seed = 0;
    int steps = 10;
    std::string x0 = "1,1";
    std::string property = "baric";
    std::string mode = "derived";
    std::string format = "csv";
    std::string out_path;
    int threads = 0;
};

ChainSpec load_spec(const RunConfig& cfg) { return parse_chain_spec(read_file(cfg.spec_path)); }

Chain load_chain(const RunConfig& cfg, double tmax) {
    return Chain(load_spec(cfg), tmax);
}

double default_tmax(const RunConfig& cfg) {
    if (cfg.tmax_set) return cfg.tmax;
    return std::max({cfg.s.value_or(0.0), cfg.t.value_or(0.0), 1e-9});
}

std::string violations_json(const std::vector<Violation>& vs) {
    std::ostringstream o;
    o << "{\"violations\":[";
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) o << ',';
        o << "{\"kind\":" << jstr(violation_kind_name(vs[i].kind)) << ",\"slot\":"
          << jstr(vs[i].slot) << ",\"time\":" << jnum(vs[i].time) << ",\"detail\":"
          << jstr(vs[i].detail) << "}";
    }
    o << "]}";
    return o.str();
}

AlgebraElement parse_x0(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw CliError{"usage", "--x0 expects \"p,q\"", 4};
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw CliError{"usage", "--x0 expects two numbers \"p,q\"", 4};
    }
}

void write_output(const RunConfig& cfg, const std::string& payload, std::ostream& out) {
    if (cfg.out_path.empty()) {
        out << payload;
        if (!payload.empty() && payload.back() != '\n') out << '\n';
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw CliError{"io", "cannot write '" + cfg.out_path + "'", 3};
    f << payload;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ChainSpec spec = load_spec(cfg);
    const auto vs = validate(spec, cfg.tmax);
    out << violations_json(vs) << '\n';
    if (vs.empty()) return 0;
    err << "{\"error\":\"validation\",\"detail\":\"" << vs.size()
        << " violation(s)\"}" << '\n';
    return 2;
}

int cmd_ck_check(const RunConfig& cfg, std::ostream& out) {
    const Chain chain = load_chain(cfg, cfg.tmax);
    if (cfg.s && cfg.tau && cfg.t) {
        const double r = ck_residual(chain, *cfg.s, *cfg.tau, *cfg.t);
        out << "{\"residual\":" << jnum(r) << ",\"triple\":[" << jnum(*cfg.s) << ","
            << jnum(*cfg.tau) << "," << jnum(*cfg.t) << "]}" << '\n';
        return 0;
    }
    const CkReport rep = ck_verify(chain, cfg.tmax, cfg.samples, cfg.seed);
    out << "{\"maxResidual\":" << jnum(rep.max_residual) << ",\"worstTriple\":["
        << jnum(rep.worst_triple[0]) << "," << jnum(rep.worst_triple[1]) << ","
        << jnum(rep.worst_triple[2]) << "],\"trials\":" << rep.trials
        << ",\"seed\":" << rep.seed << ",\"tmax\":" << jnum(cfg.tmax) << "}" << '\n';
    return 0;
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const Chain chain = load_chain(cfg, default_tmax(cfg));
    const PropertyReport rep = classify_at(chain, *cfg.s, *cfg.t, parse_mode(cfg.mode));
    out << report_to_json(rep) << '\n';
    return 0;
}

int cmd_idempotents(const RunConfig& cfg, std::ostream& out) {
    const Chain chain = load_chain(cfg, default_tmax(cfg));
    const IdempotentReport rep =
        idempotent_set_at(chain, *cfg.s, *cfg.t, parse_mode(cfg.mode));
    std::ostringstream o;
    o << "{\"s\":" << jnum(*cfg.s) << ",\"t\":" << jnum(*cfg.t) << ",\"idempotents\":[";
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const LabeledPoint& q = rep.points[i];
        if (i) o << ',';
        o << "{\"x\":" << jnum(q.p.x1) << ",\"y\":" << jnum(q.p.x2) << ",\"label\":"
          << jstr(label_name(q.label)) << ",\"residual\":" << jnum(q.residual) << "}";
    }
    o << "],\"complete\":" << (rep.complete ? "true" : "false");
    if (rep.discriminant) o << ",\"D\":" << jnum(*rep.discriminant);
    o << "}";
    out << o.str() << '\n';
    return 0;
}

int cmd_trajectory(const RunConfig& cfg, std::ostream& out) {
    const Chain chain = load_chain(cfg, default_tmax(cfg));
    const StructMatrix2 m = chain.matrix_at(*cfg.s, *cfg.t);
    const Trajectory traj = iterate(parse_x0(cfg.x0), m, static_cast<std::size_t>(cfg.steps));
    std::ostringstream o;
    o << "{\"points\":[";
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        if (i) o << ',';
        o << '[' << jnum(traj.points[i].x1) << ',' << jnum(traj.points[i].x2) << ']';
    }
    o << "],\"diverged\":";
    if (traj.diverged_at) o << *traj.diverged_at;
    else o << "null";
    o << "}";
    out << o.str() << '\n';
    return 0;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out) {
    const Chain chain = load_chain(cfg, cfg.tmax);
    const Diagram d = grid_scan(chain, parse_property(cfg.property), cfg.tmax, cfg.grid,
                                parse_mode(cfg.mode), cfg.threads);
    const std::string payload =
        (cfg.format == "json") ? diagram_to_json(d) : diagram_to_csv(d);
    write_output(cfg, payload, out);
    return 0;
}

int cmd_measure(const RunConfig& cfg, std::ostream& out) {
    const Chain chain = load_chain(cfg, cfg.tmax);
    const MeasureEstimate est =
        measure_estimate(chain, parse_property(cfg.property), cfg.tmax, cfg.samples,
                         cfg.seed, parse_mode(cfg.mode), cfg.threads);
    out << measure_to_json(est) << '\n';
    return 0;
}

int cmd_families(std::ostream& out) {
    std::ostringstream o;
    o << '[';
    for (int fam = 0; fam <= kMarkovFamily; ++fam) {
        const FamilyInfo& fi = family_info(fam);
        if (fam) o << ',';
        o << "{\"family\":" << jstr(family_name(fam)) << ",\"slots\":[";
        for (std::size_t i = 0; i < fi.slots.size(); ++i) {
            if (i) o << ',';
            o << "{\"name\":" << jstr(slot_name(fi.slots[i].slot)) << ",\"nonvanishing\":"
              << (fi.slots[i].nonvanishing ? "true" : "false") << "}";
        }
        o << "],\"cutoffs\":[";
        bool first = true;
        if (fi.needs_a) { o << "\"a\""; first = false; }
        if (fi.needs_b) { o << (first ? "" : ",") << "\"b\""; }
        o << "]";
        if (fi.needs_shape) o << ",\"shape\":[\"lambda\",\"mu\"]";
        if (fam == kMarkovFamily) o << ",\"rateMatrix\":true";
        o << "}";
    }
    o << ']';
    out << o.str() << '\n';
    return 0;
}

int cmd_discrepancies(std::ostream& out) {
    std::ostringstream o;
    o << '[';
    bool first = true;
    for (const DiscrepancyEntry& e : discrepancy_registry()) {
        if (!first) o << ',';
        first = false;
        o << "{\"family\":" << e.family << ",\"claimLocation\":" << jstr(e.claim_location)
          << ",\"paperClaim\":" << jstr(e.paper_claim) << ",\"derivedBehavior\":"
          << jstr(e.derived_behavior) << ",\"decision\":" << jstr(e.decision) << "}";
    }
    o << ']';
    out << o.str() << '\n';
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"chains of two-dimensional evolution algebras: construction, "
                 "Chapman-Kolmogorov checks, and time classification of baric, "
                 "nilpotent, and idempotent structure"};
    app.name("cea2d");
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_spec = [&](CLI::App* c) {
        c->add_option("--spec", cfg.spec_path, "chain spec JSON file")->required();
    };
    const auto add_mode = [&](CLI::App* c) {
        c->add_option("--mode", cfg.mode, "paper|derived (default derived)");
    };
    const auto add_threads = [&](CLI::App* c) {
        c->add_option("--threads", cfg.threads,
                      "worker threads (default: available parallelism)");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a spec on [0, tmax]");
    add_spec(validate_cmd);
    validate_cmd->add_option("--tmax", cfg.tmax, "validation horizon")->required();

    CLI::App* ck = app.add_subcommand("ck-check", "Chapman-Kolmogorov residual check");
    add_spec(ck);
    ck->add_option("--tmax", cfg.tmax, "time horizon")->required();
    ck->add_option("--trials", cfg.samples, "number of sampled triples (default 100000)");
    ck->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    ck->add_option("--s", cfg.s, "single-triple mode: s");
    ck->add_option("--tau", cfg.tau, "single-triple mode: tau");
    ck->add_option("--t", cfg.t, "single-triple mode: t");

    CLI::App* classify_cmd = app.add_subcommand("classify", "full report at one (s, t)");
    add_spec(classify_cmd);
    classify_cmd->add_option("--s", cfg.s, "start time")->required();
    classify_cmd->add_option("--t", cfg.t, "end time")->required();
    add_mode(classify_cmd);
    classify_cmd->add_option("--tmax", cfg.tmax, "validation horizon (default t)");

    CLI::App* idem = app.add_subcommand("idempotents", "idempotent set at one (s, t)");
    add_spec(idem);
    idem->add_option("--s", cfg.s, "start time")->required();
    idem->add_option("--t", cfg.t, "end time")->required();
    add_mode(idem);
    idem->add_option("--tmax", cfg.tmax, "validation horizon (default t)");

    CLI::App* traj = app.add_subcommand("trajectory", "evolution-operator orbit");
    add_spec(traj);
    traj->add_option("--s", cfg.s, "start time")->required();
    traj->add_option("--t", cfg.t, "end time")->required();
    traj->add_option("--x0", cfg.x0, "initial point \"p,q\"")->required();
    traj->add_option("--steps", cfg.steps, "iterations (default 10)");
    traj->add_option("--tmax", cfg.tmax, "validation horizon (default t)");

    CLI::App* scan_cmd = app.add_subcommand("scan", "property diagram over the triangle");
    add_spec(scan_cmd);
    scan_cmd->add_option("--property", cfg.property, "baric|nilpotent|idempotents")
        ->required();
    scan_cmd->add_option("--tmax", cfg.tmax, "triangle size")->required();
    scan_cmd->add_option("--grid", cfg.grid, "cells per side (default 100)");
    scan_cmd->add_option("--out", cfg.out_path, "output file (default stdout)");
    scan_cmd->add_option("--format", cfg.format, "csv|json (default csv)");
    add_mode(scan_cmd);
    add_threads(scan_cmd);

    CLI::App* measure_cmd = app.add_subcommand("measure", "Lebesgue measure estimate");
    add_spec(measure_cmd);
    measure_cmd->add_option("--property", cfg.property, "baric|nilpotent|idempotents")
        ->required();
    measure_cmd->add_option("--tmax", cfg.tmax, "triangle size")->required();
    measure_cmd->add_option("--samples", cfg.samples, "sample count (default 100000)");
    measure_cmd->add_option("--seed", cfg.seed, "RNG seed (default 0)");
    add_mode(measure_cmd);
    add_threads(measure_cmd);

    CLI::App* families_cmd =
        app.add_subcommand("families", "list families and their controller slots");
    CLI::App* disc_cmd =
        app.add_subcommand("discrepancies",
                           "print the registry of printed-table vs derived-classification "
                           "discrepancies");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "{\"error\":\"usage\",\"detail\":" << jstr(e.what()) << "}" << '\n';
        return 4;
    }
    for (const CLI::App* sub : {validate_cmd, ck, classify_cmd, idem, traj, scan_cmd,
                                measure_cmd})
        if (sub->parsed() && sub->count("--tmax") > 0) cfg.tmax_set = true;

    try {
        if (validate_cmd->parsed()) return cmd_validate(cfg, out, err);
        if (ck->parsed()) return cmd_ck_check(cfg, out);
        if (classify_cmd->parsed()) return cmd_classify(cfg, out);
        if (idem->parsed()) return cmd_idempotents(cfg, out);
        if (traj->parsed()) return cmd_trajectory(cfg, out);
        if (scan_cmd->parsed()) return cmd_scan(cfg, out);
        if (measure_cmd->parsed()) return cmd_measure(cfg, out);
        if (families_cmd->parsed()) return cmd_families(out);
        if (disc_cmd->parsed()) return cmd_discrepancies(out);
        err << "{\"error\":\"usage\",\"detail\":\"no subcommand\"}" << '\n';
        return 4;
    } catch (const CliError& e) {
        err << "{\"error\":" << jstr(e.kind) << ",\"detail\":" << jstr(e.detail) << "}"
            << '\n';
        return e.exit_code;
    } catch (const SpecParseError& e) {
        err << "{\"error\":\"spec_parse\",\"detail\":" << jstr(e.what()) << "}" << '\n';
        return 2;
    } catch (const ChainValidationError& e) {
        err << "{\"error\":\"validation\",\"detail\":" << jstr(e.what()) << "}" << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "{\"error\":\"domain\",\"detail\":" << jstr(e.what()) << "}" << '\n';
        return 3;
    } catch (const SolverInconclusive& e) {
        err << "{\"error\":\"solver_inconclusive\",\"detail\":" << jstr(e.what()) << "}"
            << '\n';
        return 3;
    } catch (const UnsupportedFamily& e) {
        err << "{\"error\":\"unsupported_family\",\"detail\":" << jstr(e.what()) << "}"
            << '\n';
        return 3;
    } catch (const PreconditionViolated& e) {
        err << "{\"error\":\"precondition\",\"detail\":" << jstr(e.what()) << "}" << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "{\"error\":\"internal\",\"detail\":" << jstr(e.what()) << "}" << '\n';
        return 3;
    }
}

} // namespace cea
