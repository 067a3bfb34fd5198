#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace recpart {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// log(1 + exp(x)) without overflow at either tail.
inline double log1pexp(double x) {
    if (x > 35.0) return x + std::exp(-x);
    if (x < -35.0) return std::exp(x);
    return std::log1p(std::exp(x));
}

inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

inline double log_sum_exp(const std::vector<double>& v) {
    double m = neg_inf;
    for (double x : v) m = std::max(m, x);
    if (m == neg_inf) return neg_inf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// log Beta(a, b)
inline double lbeta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double sq(double x) { return x * x; }

inline double euclidean_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += sq(a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace recpart
