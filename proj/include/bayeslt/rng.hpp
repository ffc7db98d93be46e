#ifndef BAYESLT_RNG_HPP
#define BAYESLT_RNG_HPP

#include <cstdint>
#include <random>

namespace bayeslt::rng {

/// splitmix64 step; used to turn (master seed, stream index) pairs into
/// well-separated mt19937_64 seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for chain `index` derived from the master seed. The rule is
/// splitmix64(master ^ splitmix64(index + 1)), so a chain's stream depends
/// only on (master, index) and adding chains never perturbs existing ones.
std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic random stream. All variates are generated from explicit
/// arithmetic on mt19937_64 output, so a given seed reproduces the same
/// sequence on every platform and build.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller; pairs are cached so consumption is
    /// one uniform pair per two normals.
    double normal();
    double normal(double mean, double sd) { return mean + sd * normal(); }

    double exponential(double mean);

    /// Gamma(shape, 1) by Marsaglia-Tsang, with the boosting trick for
    /// shape < 1.
    double gamma(double shape);

    /// Standard t variate with nu degrees of freedom.
    double student_t(double nu);

    /// Draw from {0..n-1} with the given (unnormalized) weights.
    int categorical(const double* weights, int n);

private:
    std::mt19937_64 gen_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

} // namespace bayeslt::rng

#endif
