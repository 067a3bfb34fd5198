#include "recpart/spaces.hpp"

#include <cmath>
#include <stdexcept>

#include "recpart/mathutil.hpp"

namespace recpart {

RatePair init_rate_pair(bool separated, double threshold) {
    if (separated) return {0.5 * (1.0 + threshold), 0.5 * (1.0 - threshold)};
    return {0.5, 0.5};
}

RatePair draw_rate_pair(Rng& rng, bool separated, double threshold, double a_s1, double a_s2, double b_s1, double b_s2,
                        RatePair current) {
    if (!separated && threshold <= 0.0)
        throw std::logic_error("draw_rate_pair: cohesive side with zero threshold needs a pooled draw");
    RatePair out = current;
    if (separated) {
        // a | b in [b + t, 1], then b | a in [0, a - t]
        out.a = rng.truncated_beta(a_s1, a_s2, std::min(1.0, out.b + threshold), 1.0);
        out.b = rng.truncated_beta(b_s1, b_s2, 0.0, std::max(0.0, out.a - threshold));
    } else {
        // a | b in [b, min(1, b + t)], then b | a in [max(0, a - t), a]
        out.a = rng.truncated_beta(a_s1, a_s2, out.b, std::min(1.0, out.b + threshold));
        out.b = rng.truncated_beta(b_s1, b_s2, std::max(0.0, out.a - threshold), out.a);
    }
    return out;
}

double draw_diag_rate(Rng& rng, bool separated, double threshold, double s1, double s2) {
    if (threshold < 0.5 || threshold >= 1.0) throw std::invalid_argument("draw_diag_rate: threshold must lie in [1/2, 1)");
    if (separated) return rng.truncated_beta(s1, s2, threshold, 1.0);
    if (threshold == 0.5) return 0.5;
    return rng.truncated_beta(s1, s2, 0.5, threshold);
}

namespace {

double center_dist(const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += sq(u[i] - v[i]);
    return std::sqrt(s);
}

void draw_normal_vec(Rng& rng, std::vector<double>& out, const std::vector<double>& mean, double var) {
    double sd = std::sqrt(var);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.normal(mean[i], sd);
}

}  // namespace

void draw_center_pair(Rng& rng, bool separated, double threshold, std::vector<double>& mu1, std::vector<double>& mu2,
                      const std::vector<double>& post_mean1, double post_var1, const std::vector<double>& post_mean2,
                      double post_var2, int max_tries) {
    std::size_t d = post_mean1.size();
    mu1.resize(d);
    mu2.resize(d);

    if (!separated && threshold == 0.0) {
        // equal centers: precision-weighted pooled normal
        double prec = 1.0 / post_var1 + 1.0 / post_var2;
        double var = 1.0 / prec;
        double sd = std::sqrt(var);
        for (std::size_t i = 0; i < d; ++i) {
            double m = (post_mean1[i] / post_var1 + post_mean2[i] / post_var2) * var;
            mu1[i] = rng.normal(m, sd);
            mu2[i] = mu1[i];
        }
        return;
    }

    for (int attempt = 0; attempt < max_tries; ++attempt) {
        draw_normal_vec(rng, mu1, post_mean1, post_var1);
        draw_normal_vec(rng, mu2, post_mean2, post_var2);
        double dist = center_dist(mu1, mu2);
        if (separated ? dist >= threshold : dist < threshold) return;
    }

    // rejection failed: project symmetrically about the midpoint onto the
    // boundary sphere (cohesive draws land slightly inside it)
    double target = separated ? threshold : 0.99 * threshold;
    double dist = center_dist(mu1, mu2);
    std::vector<double> unit(d, 0.0);
    if (dist > 0.0) {
        for (std::size_t i = 0; i < d; ++i) unit[i] = (mu1[i] - mu2[i]) / dist;
    } else {
        unit[0] = 1.0;
    }
    for (std::size_t i = 0; i < d; ++i) {
        double mid = 0.5 * (mu1[i] + mu2[i]);
        mu1[i] = mid + 0.5 * target * unit[i];
        mu2[i] = mid - 0.5 * target * unit[i];
    }
}

}  // namespace recpart
