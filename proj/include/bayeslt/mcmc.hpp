#ifndef BAYESLT_MCMC_HPP
#define BAYESLT_MCMC_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bayeslt::mcmc {

/// Declaration of one sampled (or fixed) parameter.
///
/// `log_scale` parameters are proposed as eta = log(x - lower); the engine
/// adds the Jacobian, so the model's log density always sees natural-scale
/// values. Fixed parameters are carried through to every draw unchanged.
struct Parameter {
    std::string name;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool log_scale = false;
    bool fixed = false;
    double fixed_value = 0.0;
    double init_lo = 0.0;   ///< initial points drawn uniformly from
    double init_hi = 1.0;   ///< [init_lo, init_hi] (natural scale)
    double initial_step = 0.5;

    static Parameter fixed_at(std::string name, double value);
};

/// A target distribution: parameter declarations plus a log density over the
/// full natural-scale parameter vector (in declaration order). The density
/// may return -inf; such proposals are always rejected. `constraint_report`
/// is optional and only consulted to explain initialization failures.
struct Model {
    std::vector<Parameter> parameters;
    std::function<double(std::span<const double>)> log_density;
    std::function<std::string(std::span<const double>)> constraint_report;

    std::size_t index_of(std::string_view name) const;
};

struct ChainConfig {
    int n_chains = 4;
    int iterations = 30000;
    int burn_in = 5000;
    int thin = 1;
    std::uint64_t master_seed = 0;
    int adapt_window = 50;
    double target_accept = 0.44;

    int retained_per_chain() const { return (iterations - burn_in) / thin; }
    void validate() const;
};

/// Posterior draws for every parameter, one block per chain.
class PosteriorChains {
public:
    PosteriorChains(std::vector<std::string> names, int n_chains, int n_retained);

    int n_chains() const { return n_chains_; }
    int n_retained() const { return n_retained_; }
    std::size_t n_params() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    std::size_t param_index(std::string_view name) const;

    double value(int chain, int draw, std::size_t param) const;
    void set_value(int chain, int draw, std::size_t param, double v);

    /// Draws of one parameter within one chain, in iteration order.
    std::vector<double> chain_draws(std::string_view name, int chain) const;
    /// Draws of one parameter pooled over all chains (chain-major order).
    std::vector<double> pooled_draws(std::string_view name) const;

    std::vector<std::vector<double>>& acceptance_rates() { return acceptance_; }
    const std::vector<std::vector<double>>& acceptance_rates() const { return acceptance_; }
    std::vector<std::uint64_t>& chain_seeds() { return chain_seeds_; }
    const std::vector<std::uint64_t>& chain_seeds() const { return chain_seeds_; }

    /// Absolute iteration numbers of the retained draws (same for all chains).
    std::vector<int>& iteration_numbers() { return iterations_; }
    const std::vector<int>& iteration_numbers() const { return iterations_; }

private:
    std::vector<std::string> names_;
    int n_chains_ = 0;
    int n_retained_ = 0;
    std::vector<std::vector<double>> draws_; // [chain][draw * P + param]
    std::vector<std::vector<double>> acceptance_;
    std::vector<std::uint64_t> chain_seeds_;
    std::vector<int> iterations_;
};

/// Adaptive random-walk Metropolis-within-Gibbs.
///
/// One Gaussian proposal per parameter per iteration; proposal scales adapt
/// toward `target_accept` in windows of `adapt_window` iterations during
/// burn-in and are frozen afterwards, preserving detailed balance of the
/// retained draws. Chains run on independent streams derived from the master
/// seed and may execute concurrently; results are identical either way.
PosteriorChains run_chains(const Model& model, const ChainConfig& config);

/// Split-chain Gelman-Rubin potential scale reduction factor. Returns
/// nullopt when only one chain is available, 1.0 by convention when the
/// parameter is constant.
std::optional<double> rhat(const PosteriorChains& chains, std::string_view param);

/// Effective sample size via Geyer's initial monotone sequence estimator.
double ess(const PosteriorChains& chains, std::string_view param);

/// Variants over raw per-chain series (used for derived quantities such as
/// effect sizes).
std::optional<double> split_rhat(const std::vector<std::vector<double>>& chains);
double ess(const std::vector<std::vector<double>>& chains);

/// Draw dump: header `chain,iteration,<param names...>`, one row per
/// retained draw.
void dump_csv(const PosteriorChains& chains, std::ostream& out);

/// Load a draw dump produced by dump_csv (used by `diagnose` / `report`).
PosteriorChains load_csv(std::istream& in);

} // namespace bayeslt::mcmc

#endif
