#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cea/chains.hpp"
#include "cea/solvers.hpp"

namespace cea {

/// Derived mode classifies through the generic solvers applied to the actual
/// matrix (ground truth); PaperTable mode evaluates the printed duration sets
/// and idempotent tables, so the tables themselves can be tested.
enum class Mode { derived, paper };

std::string mode_name(Mode m);

enum class PointLabel { origin, z1, z2, z3, xstar, xplus, xminus, unlabeled };

std::string label_name(PointLabel l);

struct LabeledPoint {
    AlgebraElement p;
    PointLabel label = PointLabel::unlabeled;
    double residual = 0.0; // against the family matrix at (s, t)
};

struct BaricReport {
    BaricStatus status;
    bool boundary = false; // a decisive quantity is within tolerance of flipping
};

/// The uniqueness verdict follows the selected mode; `detail` always carries
/// the solver's class so paper mode never fabricates a solution ray.
struct NilpotentReport {
    bool unique = true;
    NilpotentClass detail;
};

struct IdempotentReport {
    std::vector<LabeledPoint> points;
    std::optional<double> discriminant; // families 4,5,7,17,18,20,21,23
    bool complete = true;
};

struct PropertyReport {
    double s = 0.0;
    double t = 0.0;
    Mode mode = Mode::derived;
    BaricReport baric;
    NilpotentReport nilpotent;
    IdempotentReport idempotents;
};

BaricReport baric_at(const Chain& chain, double s, double t, Mode mode);
NilpotentReport nilpotent_at(const Chain& chain, double s, double t, Mode mode);
IdempotentReport idempotent_set_at(const Chain& chain, double s, double t, Mode mode);

/// The printed discriminant D (or d) of the family's idempotent count.
/// Throws UnsupportedFamily outside {4,5,7,17,18,20,21,23}.
double discriminant(const Chain& chain, double s, double t);

PropertyReport classify_at(const Chain& chain, double s, double t, Mode mode);

std::string report_to_json(const PropertyReport& report);

/// One registry row per point where the printed tables and the defining
/// systems (1), (n1), (v1) part ways. Derived mode always follows the
/// defining systems.
struct DiscrepancyEntry {
    int family;
    std::string claim_location;   // theorem item
    std::string paper_claim;
    std::string derived_behavior;
    std::string decision;
};

std::span<const DiscrepancyEntry> discrepancy_registry();

} // namespace cea
