#pragma once

#include <vector>

#include "recpart/rng.hpp"

namespace recpart {

// Restricted-region samplers for the split test. The hypothesis pair carves
// the parameter space in two: a "cohesive" region where the two candidate
// blocks behave as one community, and a "separated" region where they differ
// by at least the separation threshold. Posterior draws are kept inside the
// region of the model being fit.

struct RatePair {
    double a = 0.5;  // within-block edge rate
    double b = 0.5;  // between-block edge rate
};

// Starting point lying inside the requested region.
RatePair init_rate_pair(bool separated, double threshold);

// One coordinate-wise Gibbs pass over (a, b) with Beta full conditionals
// Beta(a_s1, a_s2) and Beta(b_s1, b_s2), truncated to the region:
//   cohesive:  a >= b and a - b < threshold
//   separated: a - b >= threshold
// threshold == 0 collapses the cohesive region to {a == b}; callers handle
// that case with a pooled draw, so this function requires threshold > 0 for
// the cohesive side.
RatePair draw_rate_pair(Rng& rng, bool separated, double threshold, double a_s1, double a_s2, double b_s1, double b_s2,
                        RatePair current);

// Restricted draw of the shared diagonal rate for the interaction model:
//   cohesive:  a in [1/2, threshold]   (point mass at 1/2 when threshold == 1/2)
//   separated: a in (threshold, 1]
double draw_diag_rate(Rng& rng, bool separated, double threshold, double s1, double s2);

// Restricted draw of the two latent-space centers. Full conditionals are
// spherical normals N(post_mean_k, post_var_k I). The draw is kept on the
// requested side of |mu1 - mu2| = threshold by rejection; after max_tries the
// pair is projected symmetrically about its midpoint onto the boundary
// (slightly inside for the cohesive region). threshold == 0 on the cohesive
// side means equal centers: a single precision-weighted pooled draw.
void draw_center_pair(Rng& rng, bool separated, double threshold, std::vector<double>& mu1, std::vector<double>& mu2,
                      const std::vector<double>& post_mean1, double post_var1, const std::vector<double>& post_mean2,
                      double post_var2, int max_tries = 1000);

}  // namespace recpart
