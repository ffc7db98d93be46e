#include "bayeslt/inference.hpp"

#include "bayeslt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bayeslt::inference {

Hdi hdi(std::span<const double> draws, double mass) {
    if (draws.size() < 2) throw input_error("hdi needs at least 2 draws");
    if (!(mass > 0.0 && mass < 1.0)) throw input_error("hdi mass must be in (0, 1)");

    std::vector<double> sorted(draws.begin(), draws.end());
    std::sort(sorted.begin(), sorted.end());

    const std::size_t n = sorted.size();
    std::size_t window = static_cast<std::size_t>(
        std::ceil(mass * static_cast<double>(n)));
    window = std::clamp<std::size_t>(window, 2, n);

    std::size_t best = 0;
    double best_width = sorted[window - 1] - sorted[0];
    for (std::size_t i = 1; i + window <= n; ++i) {
        const double width = sorted[i + window - 1] - sorted[i];
        if (width < best_width) {
            best_width = width;
            best = i;
        }
    }
    return {sorted[best], sorted[best + window - 1]};
}

double mode_estimate(std::span<const double> draws) {
    if (draws.size() < 2) throw input_error("mode_estimate needs at least 2 draws");

    const auto [mn_it, mx_it] = std::minmax_element(draws.begin(), draws.end());
    const double lo = *mn_it;
    const double hi = *mx_it;
    if (lo == hi) return lo;

    constexpr int kBins = 512;
    std::vector<int> counts(kBins, 0);
    const double width = (hi - lo) / kBins;
    for (double x : draws) {
        int bin = static_cast<int>((x - lo) / width);
        bin = std::clamp(bin, 0, kBins - 1);
        ++counts[bin];
    }
    const auto max_it = std::max_element(counts.begin(), counts.end());
    const int best = static_cast<int>(max_it - counts.begin());
    return lo + (best + 0.5) * width;
}

PosteriorSummary PosteriorSummary::from_draws(std::span<const double> draws,
                                              double hdi_mass) {
    if (draws.size() < 2) throw input_error("summary needs at least 2 draws");
    PosteriorSummary s;
    s.hdi_mass = hdi_mass;

    double sum = 0.0;
    for (double x : draws) sum += x;
    s.mean = sum / static_cast<double>(draws.size());

    std::vector<double> sorted(draws.begin(), draws.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    s.median = (n % 2 == 1) ? sorted[n / 2]
                            : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    s.mode = mode_estimate(draws);
    const Hdi h = hdi(draws, hdi_mass);
    s.hdi_lo = h.lo;
    s.hdi_hi = h.hi;
    return s;
}

const char* to_string(RopeVerdict v) {
    switch (v) {
        case RopeVerdict::accept_null: return "accept_null";
        case RopeVerdict::reject_null: return "reject_null";
        case RopeVerdict::undecided: return "undecided";
    }
    return "undecided";
}

RopeVerdict rope_verdict_from_string(const std::string& s) {
    if (s == "accept_null") return RopeVerdict::accept_null;
    if (s == "reject_null") return RopeVerdict::reject_null;
    if (s == "undecided") return RopeVerdict::undecided;
    throw input_error("unknown rope verdict: " + s);
}

RopeDecision rope_decision(std::span<const double> effect_draws, double rope_lo,
                           double rope_hi, double hdi_mass) {
    if (effect_draws.size() < 2) throw input_error("rope_decision needs at least 2 draws");
    if (!(rope_lo < rope_hi)) throw input_error("rope bounds need lo < hi");

    RopeDecision d;
    d.rope_lo = rope_lo;
    d.rope_hi = rope_hi;

    std::size_t below = 0;
    std::size_t above = 0;
    for (double x : effect_draws) {
        if (x < rope_lo) ++below;
        else if (x > rope_hi) ++above;
    }
    const double n = static_cast<double>(effect_draws.size());
    d.pct_below = 100.0 * static_cast<double>(below) / n;
    d.pct_above = 100.0 * static_cast<double>(above) / n;
    d.pct_inside = 100.0 - d.pct_below - d.pct_above;

    const Hdi h = hdi(effect_draws, hdi_mass);
    if (h.lo >= rope_lo && h.hi <= rope_hi) {
        d.verdict = RopeVerdict::accept_null;
    } else if (h.hi < rope_lo || h.lo > rope_hi) {
        d.verdict = RopeVerdict::reject_null;
    } else {
        d.verdict = RopeVerdict::undecided;
    }
    return d;
}

std::vector<double> effect_size_metric(std::span<const double> mu_draws,
                                       std::span<const double> tau_draws,
                                       double mu0) {
    if (mu_draws.size() != tau_draws.size()) {
        throw input_error("effect size draw lists must have equal length");
    }
    std::vector<double> out(mu_draws.size());
    for (std::size_t i = 0; i < mu_draws.size(); ++i) {
        if (!(tau_draws[i] > 0.0)) {
            throw std::logic_error("non-positive tau draw reached effect size");
        }
        out[i] = (mu_draws[i] - mu0) / tau_draws[i];
    }
    return out;
}

std::vector<double> effect_size_two_group(std::span<const double> mu_a_draws,
                                          std::span<const double> mu_b_draws,
                                          std::span<const double> tau_a_draws,
                                          std::span<const double> tau_b_draws) {
    const std::size_t n = mu_a_draws.size();
    if (mu_b_draws.size() != n || tau_a_draws.size() != n || tau_b_draws.size() != n) {
        throw input_error("effect size draw lists must have equal length");
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(tau_a_draws[i] > 0.0) || !(tau_b_draws[i] > 0.0)) {
            throw std::logic_error("non-positive tau draw reached effect size");
        }
        const double pooled = std::sqrt(
            0.5 * (tau_a_draws[i] * tau_a_draws[i] + tau_b_draws[i] * tau_b_draws[i]));
        out[i] = (mu_b_draws[i] - mu_a_draws[i]) / pooled;
    }
    return out;
}

} // namespace bayeslt::inference
