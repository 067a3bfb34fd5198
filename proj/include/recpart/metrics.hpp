#pragma once

#include <vector>

#include "recpart/graph.hpp"

namespace recpart {

// Normalized mutual information with natural logarithms, 2 I / (H(a) + H(b)).
// Two constant labelings agree perfectly (1); exactly one constant gives 0.
double nmi(const std::vector<int>& a, const std::vector<int>& b);

// Community score in raw ordered-pair counts: sum over communities of the
// within-community ordered edge count minus the share (n_k / n)^2 of all
// ordered edges. Two separate triangles labeled apart score 6; any graph
// under a single community scores 0.
double erm_modularity(const Graph& g, const std::vector<int>& labels);

struct ErmResult {
    std::vector<int> labels;
    double score = 0.0;
};

// Exhaustive search over all set partitions (restricted-growth enumeration);
// feasible only for small n.
ErmResult erm_bruteforce_max(const Graph& g);

struct SpectralResult {
    std::vector<double> eigenvalues;  // ascending, of the normalized Laplacian
    int k_estimate = 1;               // largest-gap position among the smallest eigenvalues
    int n_isolated_dropped = 0;
};

// Spectral community-count heuristic: eigenvalues of I - D^{-1/2} A D^{-1/2}
// on the non-isolated part, with K read off the largest consecutive gap among
// the smallest min(k_max, n) eigenvalues. Ties go to the smallest K.
SpectralResult spectral_eigengap(const Graph& g, int k_max = 20);

}  // namespace recpart
