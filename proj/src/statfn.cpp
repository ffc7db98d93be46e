#include "bayeslt/statfn.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bayeslt::statfn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(what) + " must be finite");
    }
}

// Continued fraction for the regularized incomplete beta, evaluated with the
// modified Lentz algorithm. Converges quickly for x < (a+1)/(a+b+2); the
// caller flips to the symmetric tail otherwise.
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;

        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    // Extreme (a, b) may leave a few ulps on the table; the partial sum is
    // still good to ~1e-12, well inside the 1e-10 target.
    return h;
}

} // namespace

bool TDistParams::valid() const {
    return std::isfinite(mu) && std::isfinite(tau) && std::isfinite(nu) &&
           tau > 0.0 && nu >= kMinNu;
}

void TDistParams::validate() const {
    if (!valid()) {
        std::ostringstream os;
        os << "invalid t parameters (mu=" << mu << ", tau=" << tau
           << ", nu=" << nu << "); need finite mu, tau > 0, nu >= " << kMinNu;
        throw std::domain_error(os.str());
    }
}

double gamma_fn(double w) {
    require_finite(w, "gamma argument");
    if (w <= 0.0) throw std::domain_error("gamma argument must be positive");
    return std::tgamma(w);
}

double log_gamma(double w) {
    require_finite(w, "log-gamma argument");
    if (w <= 0.0) throw std::domain_error("log-gamma argument must be positive");
    return std::lgamma(w);
}

double t_log_pdf(double x, const TDistParams& p) {
    p.validate();
    if (!std::isfinite(x)) return -kInf;
    const double z = (x - p.mu) / p.tau;
    const double half_nu = 0.5 * p.nu;
    return std::lgamma(half_nu + 0.5) - std::lgamma(half_nu) -
           0.5 * std::log(p.tau * p.tau * p.nu * kPi) -
           (0.5 * (p.nu + 1.0)) * std::log1p(z * z / p.nu);
}

double t_pdf(double x, const TDistParams& p) {
    return std::exp(t_log_pdf(x, p));
}

double reg_inc_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::domain_error("incomplete beta needs a > 0 and b > 0");
    }
    if (!(x >= 0.0) || !(x <= 1.0)) {
        throw std::domain_error("incomplete beta needs x in [0, 1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_cf(a, b, x) / a;
    }
    return 1.0 - std::exp(log_front) * beta_cf(b, a, 1.0 - x) / b;
}

double t_cdf(double u, const TDistParams& p) {
    p.validate();
    if (std::isnan(u)) throw std::domain_error("t_cdf argument is NaN");
    if (u == -kInf) return 0.0;
    if (u == kInf) return 1.0;

    const double t = (u - p.mu) / p.tau;
    const double x = p.nu / (p.nu + t * t);
    const double tail = 0.5 * reg_inc_beta(0.5 * p.nu, 0.5, x);
    return t <= 0.0 ? tail : 1.0 - tail;
}

Prior Prior::normal(double center, double sd) {
    Prior p{PriorKind::normal, center, sd};
    p.validate();
    return p;
}

Prior Prior::uniform(double lo, double hi) {
    Prior p{PriorKind::uniform, lo, hi};
    p.validate();
    return p;
}

Prior Prior::exponential(double mean, double shift) {
    Prior p{PriorKind::exponential, mean, shift};
    p.validate();
    return p;
}

void Prior::validate() const {
    switch (kind) {
        case PriorKind::normal:
            require_finite(a, "normal center");
            if (!(b > 0.0) || !std::isfinite(b)) {
                throw std::domain_error("normal prior needs sd > 0");
            }
            break;
        case PriorKind::uniform:
            require_finite(a, "uniform lo");
            require_finite(b, "uniform hi");
            if (!(a < b)) throw std::domain_error("uniform prior needs lo < hi");
            break;
        case PriorKind::exponential:
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw std::domain_error("exponential prior needs mean > 0");
            }
            require_finite(b, "exponential shift");
            break;
    }
}

double Prior::log_density(double x) const {
    switch (kind) {
        case PriorKind::normal: {
            const double z = (x - a) / b;
            return -0.5 * z * z - std::log(b) - 0.5 * std::log(2.0 * kPi);
        }
        case PriorKind::uniform:
            return (x >= a && x <= b) ? -std::log(b - this->a) : -kInf;
        case PriorKind::exponential: {
            // Mean parameterization: rate = 1 / mean on [shift, inf).
            const double y = x - b;
            return y >= 0.0 ? -std::log(a) - y / a : -kInf;
        }
    }
    return -kInf;
}

double Prior::density(double x) const {
    const double ld = log_density(x);
    return ld == -kInf ? 0.0 : std::exp(ld);
}

double Prior::support_lo() const {
    switch (kind) {
        case PriorKind::normal: return -kInf;
        case PriorKind::uniform: return a;
        case PriorKind::exponential: return b;
    }
    return -kInf;
}

double Prior::support_hi() const {
    return kind == PriorKind::uniform ? b : kInf;
}

std::string Prior::describe() const {
    std::ostringstream os;
    switch (kind) {
        case PriorKind::normal: os << "normal(center=" << a << ", sd=" << b << ")"; break;
        case PriorKind::uniform: os << "uniform(lo=" << a << ", hi=" << b << ")"; break;
        case PriorKind::exponential:
            os << "exponential(mean=" << a;
            if (b != 0.0) os << ", shift=" << b;
            os << ")";
            break;
    }
    return os.str();
}

double prior_density(const Prior& prior, double x) {
    prior.validate();
    return prior.density(x);
}

} // namespace bayeslt::statfn
