#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cea/classify.hpp"

namespace cea {

enum class Property { baric, nilpotent, idempotents };

std::string property_name(Property p);
std::optional<Property> property_from_name(const std::string& name);

/// Upper-triangular classification grid over T = {0 <= s <= t <= tmax}.
/// Cell (i, j) holds the code at the cell center ((i+.5) h, (j+.5) h): cells
/// below the diagonal are -1 (outside the domain).
///
/// Codes: baric 0 = no, 1 = yes, 2 = boundary; nilpotent 0 = unique zero,
/// 1 = curve, 2 = all; idempotents = point count.
struct Diagram {
    double tmax = 0.0;
    int n = 0;
    Property property = Property::baric;
    Mode mode = Mode::derived;
    std::vector<int> codes; // row-major, i * n + j

    int code(int i, int j) const { return codes[static_cast<std::size_t>(i) * n + j]; }
};

std::string cell_label(Property p, int code);

int classify_cell(const Chain& chain, Property p, double s, double t, Mode mode);

Diagram grid_scan(const Chain& chain, Property p, double tmax, int n, Mode mode,
                  int threads = 0);

struct MeasureEstimate {
    double estimate = 0.0; // area units
    double stderr_ = 0.0;  // binomial standard error scaled by triangle area
    long samples = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo Lebesgue measure of the duration set of `p` inside the time
/// triangle: uniform (s,t) pairs (two sorted uniforms), strict membership
/// only (boundary-flagged samples do not count), deterministic in
/// (seed, index) regardless of thread count.
MeasureEstimate measure_estimate(const Chain& chain, Property p, double tmax,
                                 long samples, std::uint64_t seed, Mode mode,
                                 int threads = 0);

struct CellPair {
    int i1, j1, i2, j2;
};

/// Adjacent in-domain cell pairs with different codes; these bracket the
/// critical sets (t = a, t = b, D = 0, equal-controller curves, t - s = pi k).
std::vector<CellPair> transition_boundary(const Diagram& d);
std::vector<CellPair> transition_boundary(const Chain& chain, double tmax, int n,
                                          Property p, Mode mode = Mode::derived,
                                          int threads = 0);

/// Countable-variation probe: the baric duration set of families 4, 5, 7, 23
/// has measure zero whenever the family's baric controller (Phi/Psi ratio for
/// 4, Phi for 5, Psi for 7, theta for 23) is strictly monotone. Requires that
/// monotonicity on [0, tmax]; throws PreconditionViolated otherwise.
MeasureEstimate countable_variation_probe(const Chain& chain, double tmax,
                                          long samples, std::uint64_t seed,
                                          int threads = 0);

std::string diagram_to_csv(const Diagram& d);
std::string diagram_to_json(const Diagram& d);
std::string measure_to_json(const MeasureEstimate& m);

} // namespace cea
