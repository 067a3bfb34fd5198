#pragma once

#include <vector>

namespace recpart {

// Stored posterior draws from one chain (or several pooled chains). `params`
// holds each draw's continuous parameters in a model-specific flat layout;
// `labels` holds the per-node block assignment of the draw, already aligned to
// a common labeling by the model code before storage.
struct PosteriorTrace {
    std::vector<double> loglik;
    std::vector<std::vector<int>> labels;
    std::vector<std::vector<double>> params;

    int size() const { return static_cast<int>(loglik.size()); }
    void append(const PosteriorTrace& other);
};

struct MarginalEstimate {
    double log_marginal = 0.0;  // log of the posterior-mean likelihood
    double se_log = 0.0;        // batch-means standard error on the log scale
    int n_draws = 0;
};

// Monte Carlo marginal-likelihood estimate: the posterior mean of the
// likelihood, computed as log( (1/L) sum_l exp(loglik_l) ) via a running
// max shift. The standard error comes from batch means pushed through the
// delta method for the log transform.
MarginalEstimate estimate_log_marginal(const std::vector<double>& loglik, int n_batches = 20);

// Deviance information criterion from a deviance trace. `loglik_at_mean` is
// the log-likelihood evaluated at the posterior-mean parameters:
//   DIC = 2 * mean(-2 loglik_l) - (-2 loglik_at_mean).
double dic(const std::vector<double>& loglik_draws, double loglik_at_mean);

// Label alignment. Returns sigma with new_label = sigma[old_label], chosen by
// exhaustive search over permutations of {0..K-1} to maximize agreement with
// `reference`. Deterministic tie break: lexicographically smallest sigma wins.
std::vector<int> best_label_permutation(const std::vector<int>& labels, const std::vector<int>& reference, int K);
void apply_permutation(std::vector<int>& labels, const std::vector<int>& sigma);

// Per-node modal label across the stored draws of a trace.
std::vector<int> modal_labels(const PosteriorTrace& trace, int K);

}  // namespace recpart
