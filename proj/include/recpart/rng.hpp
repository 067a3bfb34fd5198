#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace recpart {

// Deterministic seed derivation for nested components (chains, repeats, tree paths).
// splitmix64 of the running state xor'd with each tag.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

template <typename... Tags>
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag, Tags... rest) {
    return mix_seed(mix_seed(seed, tag), rest...);
}

// All stochastic code draws through this wrapper. Distribution transforms are
// implemented here (not via std:: distribution objects) so a given seed yields
// the same stream on any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform on [0, 1)
    double uniform();
    double uniform(double lo, double hi);
    std::uint64_t uniform_index(std::uint64_t n);  // {0, ..., n-1}

    double normal();  // standard normal (polar method, cached pair)
    double normal(double mean, double sd);

    // shape-rate parameterization; mean = shape / rate
    double gamma(double shape, double rate);
    double beta(double a, double b);
    double chisq(double df);
    bool bernoulli(double p);

    std::vector<double> dirichlet(const std::vector<double>& alpha);

    // index draw from unnormalized log-weights
    int categorical_log(const std::vector<double>& log_w);
    // index draw from nonnegative weights (need not sum to 1)
    int categorical(const std::vector<double>& w);

    // Beta(a, b) conditioned on [lo, hi]. Rejection from the unrestricted draw
    // while the truncated mass is >= 1e-3, inverse-CDF on the truncated region
    // otherwise.
    double truncated_beta(double a, double b, double lo, double hi);

    template <typename It>
    void shuffle(It first, It last) {
        auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            std::swap(first[i - 1], first[uniform_index(i)]);
        }
    }

    template <typename Container>
    void shuffle(Container& c) {
        shuffle(c.begin(), c.end());
    }

private:
    std::mt19937_64 engine_;
    bool have_cached_normal_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace recpart
