#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cea/algebra.hpp"
#include "cea/controllers.hpp"

namespace cea {

/// Controller slots named as in the family matrices.
enum class Slot { Phi, Psi, h, g, psi, theta, v, w, f };

std::string slot_name(Slot s);
std::optional<Slot> slot_from_name(const std::string& name);

/// Family id of the 2-state Markov preset (families 0..24 are the chains).
inline constexpr int kMarkovFamily = 25;

struct SlotReq {
    Slot slot;
    bool nonvanishing; // |value| must stay above 1e-12 on the validated range
};

struct FamilyInfo {
    std::vector<SlotReq> slots;
    bool needs_a = false;
    bool needs_b = false;
    bool needs_shape = false; // lambda, mu
};

const FamilyInfo& family_info(int family);
std::string family_name(int family);                 // "0".."24", "markov2"
std::optional<int> family_from_name(const std::string&);

struct ChainSpec {
    int family = 0;
    std::map<Slot, ControllerFn> controllers;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<double> lambda;
    std::optional<double> mu;
    std::optional<std::array<double, 4>> rate_q; // markov2: q11 q12 q21 q22
};

struct Violation {
    enum class Kind {
        missing_slot,
        unexpected_slot,
        vanishing_controller,
        bad_cutoff,
        lambda_equals_mu,
        bad_rate_matrix,
    };
    Kind kind;
    std::string slot;   // slot or parameter name when applicable
    double time = 0.0;  // offending time for vanishing_controller
    std::string detail;
};

std::string violation_kind_name(Violation::Kind k);

/// Empty iff every ChainSpec invariant holds on [0, tmax]. Controllers are
/// checked by dense sampling (10^4 points). Never throws.
std::vector<Violation> validate(const ChainSpec& spec, double tmax);

class ChainValidationError : public std::runtime_error {
public:
    explicit ChainValidationError(std::vector<Violation> v);
    std::vector<Violation> violations;
};

/// A spec validated on [0, tmax]; immutable afterwards, all queries pure.
class Chain {
public:
    Chain(ChainSpec spec, double tmax); // throws ChainValidationError

    const ChainSpec& spec() const { return spec_; }
    int family() const { return spec_.family; }
    double tmax() const { return tmax_; }

    /// Structural matrix M^[s,t], the closed forms as printed family by
    /// family; at a cutoff the t >= a branch applies.
    StructMatrix2 matrix_at(double s, double t) const; // throws DomainError

    double controller(Slot slot, double t) const;
    double cutoff_a() const;
    double cutoff_b() const;

private:
    ChainSpec spec_;
    double tmax_;
};

/// Max-entry |M^[s,t] - M^[s,tau] M^[tau,t]|.
double ck_residual(const Chain& chain, double s, double tau, double t);

struct CkReport {
    double max_residual = 0.0;
    std::array<double, 3> worst_triple{0.0, 0.0, 0.0};
    long trials = 0;
    std::uint64_t seed = 0;
};

/// Chapman-Kolmogorov spot check over `trials` sorted-uniform triples
/// 0 <= s <= tau <= t <= tmax, deterministic in the seed.
CkReport ck_verify(const Chain& chain, double tmax, long trials, std::uint64_t seed);

/// Max-entry |M^[s,t+P] - M^[s,t]| over a deterministic sample of time pairs
/// with t + |P| inside the validated range.
double period_check(const Chain& chain, double period, int samples);

/// Largest |M^[s,t] - M^[s+c,t+c]| over sampled (s,t,c); zero for a
/// time-homogeneous chain.
double homogeneity_deviation(const Chain& chain, int samples);

/// Preset spec for the homogeneous stochastic family exp((t-s) Q) with
/// Q = [[-alpha, alpha], [beta, -beta]].
ChainSpec markov2_spec(double alpha, double beta);

/// JSON (de)serialization of specs; unknown keys are rejected.
ChainSpec parse_chain_spec(const std::string& json_text); // throws SpecParseError
std::string chain_spec_to_json(const ChainSpec& spec);

} // namespace cea
