#include "recpart/rng.hpp"

#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <stdexcept>

#include "recpart/mathutil.hpp"

namespace recpart {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
    // splitmix64 finalizer over state + tag
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n == 0");
    // rejection to avoid modulo bias
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double Rng::normal() {
    if (have_cached_normal_) {
        have_cached_normal_ = false;
        return cached_normal_;
    }
    // Marsaglia polar
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = v * f;
    have_cached_normal_ = true;
    return u * f;
}

double Rng::normal(double mean, double sd) { return mean + sd * normal(); }

double Rng::gamma(double shape, double rate) {
    if (shape <= 0.0 || rate <= 0.0) throw std::invalid_argument("gamma: nonpositive parameter");
    if (shape < 1.0) {
        // boost the shape, then scale back: G(a) = G(a+1) * U^{1/a}
        double u = uniform();
        while (u == 0.0) u = uniform();
        return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
}

double Rng::beta(double a, double b) {
    double x = gamma(a, 1.0);
    double y = gamma(b, 1.0);
    double s = x + y;
    if (s <= 0.0) return 0.5;
    return x / s;
}

double Rng::chisq(double df) { return gamma(0.5 * df, 0.5); }

bool Rng::bernoulli(double p) { return uniform() < p; }

std::vector<double> Rng::dirichlet(const std::vector<double>& alpha) {
    std::vector<double> out(alpha.size());
    double s = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        out[k] = gamma(alpha[k], 1.0);
        s += out[k];
    }
    if (s <= 0.0) {
        // all-mass-underflow fallback: uniform
        for (double& x : out) x = 1.0 / static_cast<double>(out.size());
        return out;
    }
    for (double& x : out) x /= s;
    return out;
}

int Rng::categorical_log(const std::vector<double>& log_w) {
    double m = neg_inf;
    for (double x : log_w) m = std::max(m, x);
    if (m == neg_inf) throw std::invalid_argument("categorical_log: all weights are -inf");
    double total = 0.0;
    for (double x : log_w) total += std::exp(x - m);
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < log_w.size(); ++k) {
        acc += std::exp(log_w[k] - m);
        if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(log_w.size()) - 1;
}

int Rng::categorical(const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) {
        if (x < 0.0) throw std::invalid_argument("categorical: negative weight");
        total += x;
    }
    if (total <= 0.0) throw std::invalid_argument("categorical: zero total weight");
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
        acc += w[k];
        if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(w.size()) - 1;
}

double Rng::truncated_beta(double a, double b, double lo, double hi) {
    if (!(lo <= hi)) throw std::invalid_argument("truncated_beta: empty interval");
    lo = std::max(0.0, lo);
    hi = std::min(1.0, hi);
    if (lo == hi) return lo;
    boost::math::beta_distribution<double> dist(a, b);
    double clo = boost::math::cdf(dist, lo);
    double chi = boost::math::cdf(dist, hi);
    double mass = chi - clo;
    if (mass >= 1e-3) {
        for (;;) {
            double x = beta(a, b);
            if (x >= lo && x <= hi) return x;
        }
    }
    // thin slice: invert the conditional CDF in whichever tail representation
    // keeps precision; the plain difference cancels near 1, the complemented
    // one near 0
    double slo = boost::math::cdf(boost::math::complement(dist, lo));
    double shi = boost::math::cdf(boost::math::complement(dist, hi));
    double smass = slo - shi;
    double u = uniform();
    if (mass > 0.0 && mass >= smass) {
        double x = boost::math::quantile(dist, clo + mass * u);
        return std::min(std::max(x, lo), hi);
    }
    if (smass > 0.0) {
        double x = boost::math::quantile(boost::math::complement(dist, shi + smass * u));
        return std::min(std::max(x, lo), hi);
    }
    // mass invisible even at double precision: take the endpoint with the
    // larger log-density (plain pdf underflows here, so compare in log space)
    auto log_pdf = [&](double x) {
        x = std::min(std::max(x, 1e-300), 1.0 - 1e-16);
        return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
    };
    return log_pdf(lo) >= log_pdf(hi) ? lo : hi;
}

}  // namespace recpart
