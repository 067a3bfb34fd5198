#include "recpart/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "recpart/mathutil.hpp"

namespace recpart {

void PosteriorTrace::append(const PosteriorTrace& other) {
    loglik.insert(loglik.end(), other.loglik.begin(), other.loglik.end());
    labels.insert(labels.end(), other.labels.begin(), other.labels.end());
    params.insert(params.end(), other.params.begin(), other.params.end());
}

MarginalEstimate estimate_log_marginal(const std::vector<double>& loglik, int n_batches) {
    if (loglik.empty()) throw std::invalid_argument("estimate_log_marginal: empty trace");
    const int L = static_cast<int>(loglik.size());

    double m = neg_inf;
    for (double x : loglik) m = std::max(m, x);

    std::vector<double> w(static_cast<std::size_t>(L));
    double mean_w = 0.0;
    for (int l = 0; l < L; ++l) {
        w[static_cast<std::size_t>(l)] = std::exp(loglik[static_cast<std::size_t>(l)] - m);
        mean_w += w[static_cast<std::size_t>(l)];
    }
    mean_w /= L;

    MarginalEstimate est;
    est.n_draws = L;
    est.log_marginal = m + std::log(mean_w);

    int B = std::min(n_batches, L / 2);
    if (B < 2) {
        est.se_log = std::numeric_limits<double>::infinity();
        return est;
    }
    int batch_len = L / B;
    std::vector<double> batch_means(static_cast<std::size_t>(B), 0.0);
    for (int b = 0; b < B; ++b) {
        double s = 0.0;
        for (int l = b * batch_len; l < (b + 1) * batch_len; ++l) s += w[static_cast<std::size_t>(l)];
        batch_means[static_cast<std::size_t>(b)] = s / batch_len;
    }
    double mb = std::accumulate(batch_means.begin(), batch_means.end(), 0.0) / B;
    double var = 0.0;
    for (double x : batch_means) var += sq(x - mb);
    var /= (B - 1);
    double se_mean = std::sqrt(var / B);
    est.se_log = mean_w > 0.0 ? se_mean / mean_w : std::numeric_limits<double>::infinity();
    return est;
}

double dic(const std::vector<double>& loglik_draws, double loglik_at_mean) {
    if (loglik_draws.empty()) throw std::invalid_argument("dic: empty trace");
    double mean_dev = 0.0;
    for (double ll : loglik_draws) mean_dev += -2.0 * ll;
    mean_dev /= static_cast<double>(loglik_draws.size());
    return 2.0 * mean_dev - (-2.0 * loglik_at_mean);
}

std::vector<int> best_label_permutation(const std::vector<int>& labels, const std::vector<int>& reference, int K) {
    if (labels.size() != reference.size()) throw std::invalid_argument("best_label_permutation: size mismatch");
    // agreement[old][new] counts nodes with labels==old, reference==new
    std::vector<std::vector<int>> agree(static_cast<std::size_t>(K), std::vector<int>(static_cast<std::size_t>(K), 0));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        int a = labels[i], r = reference[i];
        if (a < 0 || a >= K || r < 0 || r >= K) throw std::out_of_range("best_label_permutation: label out of range");
        ++agree[static_cast<std::size_t>(a)][static_cast<std::size_t>(r)];
    }
    std::vector<int> sigma(static_cast<std::size_t>(K));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<int> best = sigma;
    long best_score = -1;
    do {
        long score = 0;
        for (int k = 0; k < K; ++k) score += agree[static_cast<std::size_t>(k)][static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
        if (score > best_score) {
            best_score = score;
            best = sigma;
        }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return best;
}

void apply_permutation(std::vector<int>& labels, const std::vector<int>& sigma) {
    for (int& z : labels) z = sigma[static_cast<std::size_t>(z)];
}

std::vector<int> modal_labels(const PosteriorTrace& trace, int K) {
    if (trace.labels.empty()) throw std::invalid_argument("modal_labels: no label draws");
    std::size_t n = trace.labels.front().size();
    std::vector<int> out(n, 0);
    std::vector<int> counts(static_cast<std::size_t>(K));
    for (std::size_t i = 0; i < n; ++i) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const auto& z : trace.labels) ++counts[static_cast<std::size_t>(z[i])];
        out[i] = static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    }
    return out;
}

}  // namespace recpart
