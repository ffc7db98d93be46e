#ifndef BAYESLT_INFERENCE_HPP
#define BAYESLT_INFERENCE_HPP

#include <span>
#include <string>
#include <vector>

namespace bayeslt::inference {

struct Hdi {
    double lo = 0.0;
    double hi = 0.0;
};

/// Shortest contiguous interval over the sorted draws containing
/// ceil(mass * n) of them. Ties between equally short windows resolve to the
/// leftmost one.
Hdi hdi(std::span<const double> draws, double mass = 0.95);

/// Midpoint of the fullest bin of a 512-bin histogram spanning the draw
/// range; ties resolve to the lowest bin.
double mode_estimate(std::span<const double> draws);

/// Central tendencies plus an HDI, the annotation set carried by every
/// reported posterior.
struct PosteriorSummary {
    double mean = 0.0;
    double median = 0.0;
    double mode = 0.0;
    double hdi_mass = 0.95;
    double hdi_lo = 0.0;
    double hdi_hi = 0.0;

    static PosteriorSummary from_draws(std::span<const double> draws,
                                       double hdi_mass = 0.95);
};

enum class RopeVerdict { accept_null, reject_null, undecided };

const char* to_string(RopeVerdict v);
RopeVerdict rope_verdict_from_string(const std::string& s);

/// Position of a posterior against a region of practical equivalence:
/// the share of draws below/inside/above the region plus the HDI-based
/// tri-state verdict (accept when the HDI is contained, reject when it is
/// disjoint, undecided otherwise).
struct RopeDecision {
    double rope_lo = -0.1;
    double rope_hi = 0.1;
    double pct_below = 0.0;
    double pct_inside = 0.0;
    double pct_above = 0.0;
    RopeVerdict verdict = RopeVerdict::undecided;
};

RopeDecision rope_decision(std::span<const double> effect_draws, double rope_lo,
                           double rope_hi, double hdi_mass = 0.95);

/// Per-draw effect size (mu_i - mu0) / tau_i for a one-group posterior.
std::vector<double> effect_size_metric(std::span<const double> mu_draws,
                                       std::span<const double> tau_draws,
                                       double mu0);

/// Per-draw two-group effect size
/// (mu_b_i - mu_a_i) / sqrt(0.5 * (tau_a_i^2 + tau_b_i^2)), where b is the
/// comparison group and a the reference.
std::vector<double> effect_size_two_group(std::span<const double> mu_a_draws,
                                          std::span<const double> mu_b_draws,
                                          std::span<const double> tau_a_draws,
                                          std::span<const double> tau_b_draws);

} // namespace bayeslt::inference

#endif
