#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "recpart/graph.hpp"
#include "recpart/recursion.hpp"
#include "recpart/rng.hpp"

namespace recpart {

struct SbmPriors {
    double gamma = 1.0;  // Dirichlet weight on block shares; rates get Beta(1,1)
};

// Edge and pair counts between block pairs; entries [k][l] with k <= l are
// meaningful, the lower triangle mirrors them.
struct BlockPairCounts {
    std::vector<std::vector<int>> edges;
    std::vector<std::vector<int>> pairs;
};

BlockPairCounts count_block_pairs(const Graph& g, const std::vector<int>& z, int K);

// log P(Y | B, z) over unordered node pairs.
double sbm_full_loglik(const Graph& g, const std::vector<int>& z, const std::vector<std::vector<double>>& B);
// two-rate form: a within blocks, b between
double sbm_full_loglik(const Graph& g, const std::vector<int>& z, double a, double b);

// Closed-form log of the marginal likelihood with labels held fixed and each
// block-pair rate integrated against its Beta(1,1) prior.
double sbm_exact_log_marginal(const Graph& g, const std::vector<int>& z, int K);

// Likelihood trace under rate draws from the prior, labels fixed; feeds the
// marginal estimator for validation against the closed form above.
std::vector<double> sbm_prior_loglik_trace(const Graph& g, const std::vector<int>& z, int K, int n_draws, Rng& rng);

// Full-conditional log-weights for assigning node i to each block, given the
// labels of every other node, the rate matrix, and log block shares.
std::vector<double> sbm_label_log_weights(const Graph& g, const std::vector<int>& z, int i,
                                          const std::vector<std::vector<double>>& B,
                                          const std::vector<double>& log_pi);

// Driver for the recursive engine. `threshold` is the minimum within/between
// rate separation defining the split alternative; 0 makes the cohesive model
// a single shared rate.
std::unique_ptr<BipartitionDriver> make_sbm_driver(const Graph& g, double threshold, SbmPriors priors = {});

// Unrestricted K-block fit used for information-criterion model comparison.
struct SbmFit {
    PosteriorTrace trace;  // params per draw: [pi (K), B upper triangle row-major]
    std::vector<int> map_labels;
    double dic = 0.0;
};

SbmFit fit_sbm_k(const Graph& g, int K, const McmcBudget& budget, std::uint64_t seed, SbmPriors priors = {});

}  // namespace recpart
