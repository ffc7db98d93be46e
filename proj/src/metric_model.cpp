#include "bayeslt/metric_model.hpp"

#include "bayeslt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace bayeslt::metric {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

PairedMetricDataset PairedMetricDataset::from_pairs(std::vector<std::string> ids,
                                                    std::vector<double> a,
                                                    std::vector<double> b) {
    PairedMetricDataset d;
    d.differences = compute_differences(a, b);
    if (!ids.empty() && ids.size() != a.size()) {
        throw input_error("participant id count does not match value count");
    }
    if (ids.empty()) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            ids.push_back("p" + std::to_string(i + 1));
        }
    }
    d.participant_ids = std::move(ids);
    d.values_a = std::move(a);
    d.values_b = std::move(b);
    return d;
}

void PairedMetricDataset::validate() const {
    const std::size_t n = differences.size();
    if (n < 2) throw input_error("paired dataset needs at least 2 rows");
    if (values_a.size() != n || values_b.size() != n || participant_ids.size() != n) {
        throw input_error("paired dataset fields have mismatched lengths");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (differences[i] != values_a[i] - values_b[i]) {
            throw input_error("difference entry " + std::to_string(i) +
                              " does not equal a - b");
        }
    }
}

std::vector<double> compute_differences(std::span<const double> values_a,
                                        std::span<const double> values_b) {
    if (values_a.size() != values_b.size()) {
        throw input_error("paired value lists have mismatched lengths");
    }
    if (values_a.size() < 2) {
        throw input_error("paired analysis needs at least 2 participants");
    }
    std::vector<double> out(values_a.size());
    for (std::size_t i = 0; i < values_a.size(); ++i) {
        out[i] = values_a[i] - values_b[i];
    }
    return out;
}

void MetricPriors::validate() const {
    mu_prior.validate();
    tau_prior.validate();
    nu_prior.validate();
    if (!(tau_prior.support_lo() > 0.0)) {
        throw config_error("tau prior support must be strictly positive");
    }
}

SampleMoments sample_moments(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw input_error("need at least 2 values for sample moments");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(n - 1))};
}

MetricPriors default_priors(std::span<const double> differences) {
    const auto [xbar, s] = sample_moments(differences);
    if (s == 0.0) {
        throw degenerate_data_error(
            "sample standard deviation of the differences is zero (all values "
            "identical); priors cannot be scaled to the data -- inspect the dataset");
    }
    MetricPriors p;
    p.mu_prior = statfn::Prior::normal(xbar, 100.0 * s);
    p.tau_prior = statfn::Prior::uniform(s / 1000.0, 1000.0 * s);
    p.nu_prior = statfn::Prior::exponential(30.0);
    p.validate();
    return p;
}

double log_posterior(const statfn::TDistParams& params,
                     const PairedMetricDataset& data, const MetricPriors& priors) {
    const double lp_mu = priors.mu_prior.log_density(params.mu);
    const double lp_tau = priors.tau_prior.log_density(params.tau);
    const double lp_nu = priors.nu_prior.log_density(params.nu);
    if (lp_mu == -kInf || lp_tau == -kInf || lp_nu == -kInf) return -kInf;
    if (!params.valid()) return -kInf;

    double ll = 0.0;
    for (double d : data.differences) ll += statfn::t_log_pdf(d, params);
    return ll + lp_mu + lp_tau + lp_nu;
}

namespace {

mcmc::Model build_model_impl(const PairedMetricDataset& data,
                             const MetricPriors& priors, bool fix_nu,
                             double fixed_nu) {
    data.validate();
    priors.validate();
    const auto [xbar, s] = sample_moments(data.differences);
    const double spread = s > 0.0 ? s : 1.0;

    mcmc::Model model;

    mcmc::Parameter mu;
    mu.name = "mu";
    mu.init_lo = xbar - spread;
    mu.init_hi = xbar + spread;
    mu.initial_step = spread / 5.0;
    model.parameters.push_back(mu);

    mcmc::Parameter tau;
    tau.name = "tau";
    tau.lower = priors.tau_prior.support_lo();
    tau.upper = priors.tau_prior.support_hi();
    tau.init_lo = std::max(tau.lower, spread / 2.0);
    tau.init_hi = std::min(tau.upper, 2.0 * spread);
    if (!(tau.init_lo < tau.init_hi)) {
        tau.init_lo = tau.lower;
        tau.init_hi = std::min(tau.upper, tau.lower * 10.0);
    }
    tau.initial_step = spread / 5.0;
    model.parameters.push_back(tau);

    if (fix_nu) {
        model.parameters.push_back(mcmc::Parameter::fixed_at("nu", fixed_nu));
    } else {
        mcmc::Parameter nu;
        nu.name = "nu";
        nu.lower = statfn::kMinNu;
        nu.log_scale = true;
        nu.init_lo = 1.0;
        nu.init_hi = 40.0;
        nu.initial_step = 0.5; // log-space units
        model.parameters.push_back(nu);
    }

    // The dataset and priors are captured by value: model objects stay valid
    // and immutable regardless of the caller's lifetime.
    model.log_density = [data, priors](std::span<const double> x) {
        return log_posterior({x[0], x[1], x[2]}, data, priors);
    };
    model.constraint_report = [priors](std::span<const double> x) {
        std::ostringstream os;
        os << "mu=" << x[0] << " tau=" << x[1] << " nu=" << x[2] << ";";
        if (priors.mu_prior.log_density(x[0]) == -kInf) os << " mu outside prior support;";
        if (priors.tau_prior.log_density(x[1]) == -kInf) {
            os << " tau outside " << priors.tau_prior.describe() << ";";
        }
        if (priors.nu_prior.log_density(x[2]) == -kInf) {
            os << " nu outside " << priors.nu_prior.describe() << ";";
        }
        return os.str();
    };
    return model;
}

} // namespace

mcmc::Model build_model(const PairedMetricDataset& data, const MetricPriors& priors) {
    return build_model_impl(data, priors, false, 0.0);
}

mcmc::Model build_model(const PairedMetricDataset& data, const MetricPriors& priors,
                        double fixed_nu) {
    return build_model_impl(data, priors, true, fixed_nu);
}

} // namespace bayeslt::metric
