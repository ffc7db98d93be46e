#ifndef BAYESLT_STATFN_HPP
#define BAYESLT_STATFN_HPP

#include <string>

namespace bayeslt::statfn {

/// Smallest admissible normality parameter. The gamma-ratio prefactor of the
/// t density degrades below this, so the support of nu is clipped here and the
/// clip is reported alongside every analysis.
inline constexpr double kMinNu = 0.1;

/// Location/scale/normality triple of a latent t distribution. As nu grows
/// the distribution approaches a normal with mean mu and standard deviation
/// tau; small nu gives heavy tails.
struct TDistParams {
    double mu = 0.0;
    double tau = 1.0;
    double nu = 30.0;

    bool valid() const;
    /// Throws std::domain_error when tau <= 0, nu < kMinNu or any field is
    /// not finite.
    void validate() const;
};

/// Gamma function for real w > 0. Non-positive or non-finite arguments raise
/// std::domain_error.
double gamma_fn(double w);

/// log Gamma(w) for w > 0; use this instead of gamma_fn once w is large
/// enough to overflow (w > ~171).
double log_gamma(double w);

/// Density of the t distribution with location mu, scale tau and normality
/// nu. Computed in log space and exponentiated so that very large nu (normal
/// limit) stays finite.
double t_pdf(double x, const TDistParams& p);

/// log t_pdf; the canonical form used inside likelihoods.
double t_log_pdf(double x, const TDistParams& p);

/// Cumulative t distribution Psi(u) = integral of t_pdf over (-inf, u],
/// evaluated through the regularized incomplete beta function. The infinities
/// are honored exactly: t_cdf(-inf) == 0 and t_cdf(+inf) == 1.
double t_cdf(double u, const TDistParams& p);

/// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
/// x in [0, 1], by continued fraction. Exposed so tests can probe it
/// directly.
double reg_inc_beta(double a, double b, double x);

enum class PriorKind { normal, uniform, exponential };

/// One-dimensional prior density. The exponential is parameterized by its
/// MEAN, not its rate, and supports an optional left shift of the support.
struct Prior {
    PriorKind kind = PriorKind::normal;
    double a = 0.0; // normal: center, uniform: lo,  exponential: mean
    double b = 1.0; // normal: sd,     uniform: hi,  exponential: shift

    static Prior normal(double center, double sd);
    static Prior uniform(double lo, double hi);
    static Prior exponential(double mean, double shift = 0.0);

    double density(double x) const;
    double log_density(double x) const; // -inf outside the support

    /// Support bounds (used by samplers to bound proposals).
    double support_lo() const;
    double support_hi() const;

    /// Human-readable form, echoed into reports for provenance.
    std::string describe() const;

    void validate() const;
};

/// Density of the given prior at x; zero outside the support.
double prior_density(const Prior& prior, double x);

} // namespace bayeslt::statfn

#endif
