#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "recpart/graph.hpp"
#include "recpart/recursion.hpp"
#include "recpart/rng.hpp"

namespace recpart {

struct LsmPriors {
    int dim = 2;                // latent-space dimension
    double nu = 1.0;            // Dirichlet weight on component shares
    double omega_sq = 25.0;     // prior variance of component centers
    double sigma0_sq = 0.0625;  // component spread: held fixed in split tests, prior scale otherwise
    double alpha_df = 5.0;      // inverse-chi-square degrees of freedom for the spread
    double beta_mean = 1.0;     // normal prior on the distance coefficient, restricted positive
    double beta_var = 1.0;
    double beta_fixed = 1.0;  // value used where the split test holds beta fixed
    double step_z = 0.25;     // random-walk proposal scales
    double step_beta = 0.1;
};

// Edge log-likelihood given flat positions (node-major, `dim` coords each):
// sum over unordered pairs of A_ij * eta - log(1 + exp(eta)), eta = -beta * dist.
double lsm_edge_loglik(const Graph& g, const std::vector<double>& pos, int dim, double beta);

// Mixture responsibilities of one position across components with spherical
// normal densities; sums to one.
std::vector<double> lsm_responsibilities(const std::vector<double>& point, const std::vector<std::vector<double>>& mus,
                                         const std::vector<double>& sigma_sqs, const std::vector<double>& lambdas);

// Conjugate posterior of a component center given the member positions:
// N(mean_out, var_out * I) with a N(0, omega_sq I) prior.
void lsm_center_posterior(const std::vector<double>& pos, const std::vector<int>& labels, int k, int dim,
                          double sigma_sq, double omega_sq, std::vector<double>& mean_out, double& var_out);

// Driver for the recursive engine. `threshold` is the minimum distance between
// the two component centers under the separated model; 0 makes the cohesive
// model a single shared center. The split test holds the component spread at
// sigma0_sq and the distance coefficient at beta_fixed.
std::unique_ptr<BipartitionDriver> make_lsm_driver(const Graph& g, double threshold, LsmPriors priors = {});

// Unrestricted K-component fit for information-criterion comparison; samples
// the spreads and the distance coefficient. Runs a single chain so the latent
// positions stay in one geometric frame.
struct LsmFit {
    PosteriorTrace trace;  // params per draw: [positions (n*dim), beta]
    std::vector<int> map_labels;
    double dic = 0.0;
};

LsmFit fit_lsm_k(const Graph& g, int K, const McmcBudget& budget, std::uint64_t seed, LsmPriors priors = {});

}  // namespace recpart
