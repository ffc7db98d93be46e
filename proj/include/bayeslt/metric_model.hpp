#ifndef BAYESLT_METRIC_MODEL_HPP
#define BAYESLT_METRIC_MODEL_HPP

#include "bayeslt/mcmc.hpp"
#include "bayeslt/statfn.hpp"

#include <span>
#include <string>
#include <vector>

namespace bayeslt::metric {

/// Paired observations from a within-subjects design and their per-subject
/// differences (a - b). Positive differences favor the "condition b is
/// better" reading used throughout the reports.
struct PairedMetricDataset {
    std::vector<std::string> participant_ids;
    std::vector<double> values_a;
    std::vector<double> values_b;
    std::vector<double> differences;

    static PairedMetricDataset from_pairs(std::vector<std::string> ids,
                                          std::vector<double> a,
                                          std::vector<double> b);
    std::size_t size() const { return differences.size(); }
    void validate() const;
};

/// Element-wise a - b. Lengths must match and be >= 2.
std::vector<double> compute_differences(std::span<const double> values_a,
                                        std::span<const double> values_b);

struct MetricPriors {
    statfn::Prior mu_prior = statfn::Prior::normal(0.0, 1.0);
    statfn::Prior tau_prior = statfn::Prior::uniform(1e-3, 1e3);
    statfn::Prior nu_prior = statfn::Prior::exponential(30.0);

    void validate() const;
};

/// Broad data-driven priors: mu ~ normal(xbar, 100 s), tau ~ uniform(s/1000,
/// 1000 s), nu ~ exponential(mean 30), where xbar and s are the sample mean
/// and standard deviation of the differences. Throws degenerate_data_error
/// when s == 0 (constant differences).
MetricPriors default_priors(std::span<const double> differences);

/// Sample mean and (n-1)-denominator standard deviation, shared by
/// default_priors and its tests.
struct SampleMoments {
    double mean = 0.0;
    double sd = 0.0;
};
SampleMoments sample_moments(std::span<const double> values);

/// log posterior (up to the evidence constant): i.i.d. t likelihood over the
/// differences plus the log prior densities. Returns -inf whenever any prior
/// density is zero at `params`.
double log_posterior(const statfn::TDistParams& params,
                     const PairedMetricDataset& data, const MetricPriors& priors);

/// Sampler-ready model over (mu, tau, nu); nu is proposed on a log scale
/// above the statfn::kMinNu floor. `fixed_nu` pins nu instead of sampling it.
mcmc::Model build_model(const PairedMetricDataset& data, const MetricPriors& priors);
mcmc::Model build_model(const PairedMetricDataset& data, const MetricPriors& priors,
                        double fixed_nu);

} // namespace bayeslt::metric

#endif
