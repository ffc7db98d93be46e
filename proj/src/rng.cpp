#include "bayeslt/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bayeslt::rng {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

double Stream::uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Stream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

double Stream::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
}

double Stream::exponential(double mean) {
    double u = uniform01();
    while (u <= 0.0) u = uniform01();
    return -mean * std::log(u);
}

double Stream::gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be > 0");
    if (shape < 1.0) {
        const double g = gamma(shape + 1.0);
        double u = uniform01();
        while (u <= 0.0) u = uniform01();
        return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

double Stream::student_t(double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("student_t needs nu > 0");
    const double z = normal();
    const double chi2 = 2.0 * gamma(0.5 * nu);
    return z / std::sqrt(chi2 / nu);
}

int Stream::categorical(const double* weights, int n) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += weights[i];
    if (!(total > 0.0)) throw std::invalid_argument("categorical weights must sum > 0");
    const double u = uniform01() * total;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return n - 1;
}

} // namespace bayeslt::rng
