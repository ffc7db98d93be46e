#include "bayeslt/mcmc.hpp"

#include "bayeslt/errors.hpp"
#include "bayeslt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bayeslt::mcmc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kInitRetries = 1000;
} // namespace

Parameter Parameter::fixed_at(std::string name, double value) {
    Parameter p;
    p.name = std::move(name);
    p.fixed = true;
    p.fixed_value = value;
    p.init_lo = p.init_hi = value;
    return p;
}

std::size_t Model::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < parameters.size(); ++i) {
        if (parameters[i].name == name) return i;
    }
    throw std::invalid_argument("unknown parameter: " + std::string(name));
}

void ChainConfig::validate() const {
    if (n_chains < 1) throw config_error("n_chains must be >= 1");
    if (iterations <= 0) throw config_error("iterations must be positive");
    if (burn_in < 0 || burn_in >= iterations) {
        throw config_error("burn_in must lie in [0, iterations)");
    }
    if (thin < 1) throw config_error("thin must be >= 1");
    if (adapt_window < 1) throw config_error("adapt_window must be >= 1");
    if (!(target_accept > 0.0 && target_accept < 1.0)) {
        throw config_error("target_accept must be in (0, 1)");
    }
}

PosteriorChains::PosteriorChains(std::vector<std::string> names, int n_chains,
                                 int n_retained)
    : names_(std::move(names)), n_chains_(n_chains), n_retained_(n_retained) {
    draws_.assign(n_chains_, std::vector<double>(
                                 static_cast<std::size_t>(n_retained_) * names_.size()));
    acceptance_.assign(n_chains_, std::vector<double>(names_.size(), 0.0));
    chain_seeds_.assign(n_chains_, 0);
    iterations_.assign(n_retained_, 0);
}

std::size_t PosteriorChains::param_index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return i;
    }
    throw std::invalid_argument("unknown parameter: " + std::string(name));
}

double PosteriorChains::value(int chain, int draw, std::size_t param) const {
    return draws_[chain][static_cast<std::size_t>(draw) * names_.size() + param];
}

void PosteriorChains::set_value(int chain, int draw, std::size_t param, double v) {
    draws_[chain][static_cast<std::size_t>(draw) * names_.size() + param] = v;
}

std::vector<double> PosteriorChains::chain_draws(std::string_view name, int chain) const {
    const std::size_t p = param_index(name);
    std::vector<double> out(static_cast<std::size_t>(n_retained_));
    for (int d = 0; d < n_retained_; ++d) out[d] = value(chain, d, p);
    return out;
}

std::vector<double> PosteriorChains::pooled_draws(std::string_view name) const {
    const std::size_t p = param_index(name);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_retained_) * n_chains_);
    for (int c = 0; c < n_chains_; ++c) {
        for (int d = 0; d < n_retained_; ++d) out.push_back(value(c, d, p));
    }
    return out;
}

namespace {

struct WorkingParam {
    std::size_t index;  // position in the full parameter vector
    double step;        // proposal sd in working space
    long accepted_post = 0;
    long window_accepted = 0;
    int batch = 0;
};

// One chain, sequential. Writes retained draws into `out`.
void run_one_chain(const Model& model, const ChainConfig& cfg, int chain_index,
                   PosteriorChains& out) {
    const auto& params = model.parameters;
    const std::size_t n_params = params.size();
    const std::uint64_t seed =
        rng::derive_stream_seed(cfg.master_seed, static_cast<std::uint64_t>(chain_index));
    rng::Stream stream(seed);
    out.chain_seeds()[chain_index] = seed;

    std::vector<double> x(n_params, 0.0);
    std::vector<WorkingParam> free;
    free.reserve(n_params);
    for (std::size_t i = 0; i < n_params; ++i) {
        if (params[i].fixed) {
            x[i] = params[i].fixed_value;
        } else {
            free.push_back({i, std::max(params[i].initial_step, 1e-12), 0, 0, 0});
        }
    }

    // Find a starting point with finite posterior.
    double lp = -kInf;
    for (int attempt = 0; attempt < kInitRetries; ++attempt) {
        for (const auto& wp : free) {
            const auto& p = params[wp.index];
            x[wp.index] = stream.uniform(p.init_lo, p.init_hi);
        }
        lp = model.log_density(x);
        if (std::isfinite(lp)) break;
    }
    if (!std::isfinite(lp)) {
        std::string detail = model.constraint_report
                                 ? model.constraint_report(x)
                                 : std::string("log posterior is -inf at every tried point");
        throw sampler_init_error("chain " + std::to_string(chain_index) +
                                 ": no valid initial point after " +
                                 std::to_string(kInitRetries) + " retries: " + detail);
    }

    const int post_iters = cfg.iterations - cfg.burn_in;
    int retained = 0;

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        const bool adapting = iter < cfg.burn_in;
        for (auto& wp : free) {
            const auto& p = params[wp.index];
            const double old_value = x[wp.index];
            bool in_support = true;
            double log_jacobian_delta = 0.0;

            double proposal;
            if (p.log_scale) {
                const double eta = std::log(old_value - p.lower);
                const double eta_new = eta + wp.step * stream.normal();
                proposal = p.lower + std::exp(eta_new);
                if (proposal >= p.upper || !std::isfinite(proposal)) in_support = false;
                // d(natural)/d(eta) = (x - lower): favoring larger values.
                log_jacobian_delta = eta_new - eta;
            } else {
                proposal = old_value + wp.step * stream.normal();
                if (proposal < p.lower || proposal > p.upper) in_support = false;
            }

            bool accept = false;
            if (in_support) {
                x[wp.index] = proposal;
                const double lp_new = model.log_density(x);
                if (lp_new > -kInf) {
                    const double log_alpha = lp_new - lp + log_jacobian_delta;
                    if (log_alpha >= 0.0 || std::log(stream.uniform01()) < log_alpha) {
                        accept = true;
                        lp = lp_new;
                    }
                }
            }
            if (!accept) x[wp.index] = old_value;

            if (adapting) {
                if (accept) ++wp.window_accepted;
                if ((iter + 1) % cfg.adapt_window == 0) {
                    ++wp.batch;
                    const double rate =
                        static_cast<double>(wp.window_accepted) / cfg.adapt_window;
                    const double gain = 1.0 / std::sqrt(static_cast<double>(wp.batch));
                    wp.step *= std::exp(gain * (rate - cfg.target_accept));
                    wp.step = std::clamp(wp.step, 1e-12, 1e9);
                    wp.window_accepted = 0;
                }
            } else if (accept) {
                ++wp.accepted_post;
            }
        }

        if (iter >= cfg.burn_in && (iter - cfg.burn_in) % cfg.thin == 0) {
            for (std::size_t pi = 0; pi < n_params; ++pi) {
                out.set_value(chain_index, retained, pi, x[pi]);
            }
            if (chain_index == 0) out.iteration_numbers()[retained] = iter;
            ++retained;
        }
    }

    for (const auto& wp : free) {
        out.acceptance_rates()[chain_index][wp.index] =
            post_iters > 0 ? static_cast<double>(wp.accepted_post) / post_iters : 0.0;
    }
}

} // namespace

PosteriorChains run_chains(const Model& model, const ChainConfig& config) {
    config.validate();
    if (!model.log_density) throw std::invalid_argument("model has no log density");
    if (model.parameters.empty()) throw std::invalid_argument("model has no parameters");

    std::vector<std::string> names;
    names.reserve(model.parameters.size());
    for (const auto& p : model.parameters) names.push_back(p.name);

    PosteriorChains out(std::move(names), config.n_chains, config.retained_per_chain());

    if (config.n_chains == 1) {
        run_one_chain(model, config, 0, out);
        return out;
    }

    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(config.n_chains);
    workers.reserve(config.n_chains);
    for (int c = 0; c < config.n_chains; ++c) {
        workers.emplace_back([&, c] {
            try {
                run_one_chain(model, config, c, out);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

namespace {

double mean_of(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs, double mean) {
    double s = 0.0;
    for (double x : xs) s += (x - mean) * (x - mean);
    return s / static_cast<double>(xs.size() - 1);
}

} // namespace

std::optional<double> split_rhat(const std::vector<std::vector<double>>& chains) {
    if (chains.size() < 2) return std::nullopt;

    std::vector<std::span<const double>> halves;
    for (const auto& c : chains) {
        const std::size_t n = c.size() / 2;
        if (n < 2) throw std::invalid_argument("rhat needs >= 4 draws per chain");
        halves.emplace_back(c.data(), n);
        halves.emplace_back(c.data() + n, n);
    }
    const std::size_t m = halves.size();
    const double n = static_cast<double>(halves.front().size());

    std::vector<double> means(m);
    std::vector<double> vars(m);
    for (std::size_t i = 0; i < m; ++i) {
        means[i] = mean_of(halves[i]);
        vars[i] = sample_variance(halves[i], means[i]);
    }
    const double grand = mean_of(means);
    double b = 0.0;
    for (double mu : means) b += (mu - grand) * (mu - grand);
    b *= n / static_cast<double>(m - 1);
    const double w = mean_of(vars);

    if (w <= 0.0) return 1.0; // constant parameter, by convention
    const double var_plus = (n - 1.0) / n * w + b / n;
    return std::sqrt(var_plus / w);
}

double ess(const std::vector<std::vector<double>>& chains) {
    std::size_t total = 0;
    for (const auto& c : chains) {
        if (c.size() < 4) throw std::invalid_argument("ess needs >= 4 draws");
        total += c.size();
    }
    const std::size_t n = chains.front().size();
    // The monotone truncation almost always stops within a few dozen lags;
    // the cap only guards runaway scans on pathologically sticky chains.
    const std::size_t max_lag = std::min(n - 1, static_cast<std::size_t>(4000));

    // Autocovariance averaged across chains, each centered at its own mean.
    std::vector<std::vector<double>> cent(chains.size());
    double var0 = 0.0;
    for (std::size_t c = 0; c < chains.size(); ++c) {
        const double mu = mean_of(chains[c]);
        cent[c].resize(chains[c].size());
        for (std::size_t i = 0; i < chains[c].size(); ++i) cent[c][i] = chains[c][i] - mu;
    }
    auto gamma_hat = [&](std::size_t lag) {
        double acc = 0.0;
        for (const auto& xs : cent) {
            double s = 0.0;
            for (std::size_t i = 0; i + lag < xs.size(); ++i) s += xs[i] * xs[i + lag];
            acc += s / static_cast<double>(xs.size());
        }
        return acc / static_cast<double>(cent.size());
    };
    var0 = gamma_hat(0);
    if (var0 <= 0.0) return static_cast<double>(total); // constant series

    // Geyer initial monotone sequence over pair sums.
    double tau = -1.0;
    double prev_pair = kInf;
    for (std::size_t m = 0; 2 * m + 1 <= max_lag; ++m) {
        const double rho_even = gamma_hat(2 * m) / var0;
        const double rho_odd = (2 * m + 1 <= max_lag) ? gamma_hat(2 * m + 1) / var0 : 0.0;
        double pair = rho_even + rho_odd;
        if (pair < 0.0) break;
        pair = std::min(pair, prev_pair);
        prev_pair = pair;
        tau += 2.0 * pair;
        if (pair <= 0.0) break;
    }
    tau = std::max(tau, 1.0 / static_cast<double>(total));
    return static_cast<double>(total) / tau;
}

std::optional<double> rhat(const PosteriorChains& chains, std::string_view param) {
    std::vector<std::vector<double>> series;
    series.reserve(chains.n_chains());
    for (int c = 0; c < chains.n_chains(); ++c) {
        series.push_back(chains.chain_draws(param, c));
    }
    return split_rhat(series);
}

double ess(const PosteriorChains& chains, std::string_view param) {
    std::vector<std::vector<double>> series;
    series.reserve(chains.n_chains());
    for (int c = 0; c < chains.n_chains(); ++c) {
        series.push_back(chains.chain_draws(param, c));
    }
    return ess(series);
}

void dump_csv(const PosteriorChains& chains, std::ostream& out) {
    out << "chain,iteration";
    for (const auto& n : chains.names()) out << ',' << n;
    out << '\n';
    out.precision(17);
    for (int c = 0; c < chains.n_chains(); ++c) {
        for (int d = 0; d < chains.n_retained(); ++d) {
            out << c << ',' << chains.iteration_numbers()[d];
            for (std::size_t p = 0; p < chains.n_params(); ++p) {
                out << ',' << chains.value(c, d, p);
            }
            out << '\n';
        }
    }
}

PosteriorChains load_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw input_error("draw dump is empty");

    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string tok;
        while (std::getline(ss, tok, ',')) cols.push_back(tok);
    }
    if (cols.size() < 3 || cols[0] != "chain" || cols[1] != "iteration") {
        throw input_error("draw dump header must start with 'chain,iteration'");
    }
    const std::vector<std::string> names(cols.begin() + 2, cols.end());

    struct Row {
        int chain = 0;
        int iteration = 0;
        std::vector<double> values;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        Row row;
        int col = 0;
        try {
            while (std::getline(ss, tok, ',')) {
                if (col == 0) row.chain = std::stoi(tok);
                else if (col == 1) row.iteration = std::stoi(tok);
                else row.values.push_back(std::stod(tok));
                ++col;
            }
        } catch (const std::exception&) {
            throw input_error("draw dump line " + std::to_string(line_no) +
                              ": malformed value '" + tok + "'");
        }
        if (row.values.size() != names.size()) {
            throw input_error("draw dump line " + std::to_string(line_no) +
                              ": expected " + std::to_string(names.size() + 2) +
                              " columns");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw input_error("draw dump has no rows");

    int n_chains = 0;
    for (const auto& r : rows) n_chains = std::max(n_chains, r.chain + 1);
    const std::size_t per_chain = rows.size() / static_cast<std::size_t>(n_chains);
    if (per_chain * static_cast<std::size_t>(n_chains) != rows.size()) {
        throw input_error("draw dump chains have unequal lengths");
    }

    PosteriorChains out(names, n_chains, static_cast<int>(per_chain));
    std::vector<int> cursor(n_chains, 0);
    for (const auto& r : rows) {
        const int d = cursor[r.chain]++;
        if (d >= static_cast<int>(per_chain)) {
            throw input_error("draw dump chains have unequal lengths");
        }
        for (std::size_t p = 0; p < names.size(); ++p) {
            out.set_value(r.chain, d, p, r.values[p]);
        }
        if (r.chain == 0) out.iteration_numbers()[d] = r.iteration;
    }
    for (int c = 0; c < n_chains; ++c) {
        if (cursor[c] != static_cast<int>(per_chain)) {
            throw input_error("draw dump chains have unequal lengths");
        }
    }
    return out;
}

} // namespace bayeslt::mcmc
