#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "recpart/graph.hpp"
#include "recpart/recursion.hpp"
#include "recpart/rng.hpp"

namespace recpart {

struct EePriors {
    // The share prior is kept concentrated at even weights: the interaction
    // likelihood pays per event for block shares, so a vague prior lets a
    // near-empty block explain any sequence and the split test loses its
    // conservative behavior on unstructured data.
    double gamma = 100.0;  // Dirichlet weight on block shares
    double theta_shape = 1.0;  // Gamma prior on the urn strength theta
    double theta_rate = 1.0;
    double alpha_a = 1.0;  // Beta prior on the urn discount alpha
    double alpha_b = 1.0;
};

// Two-parameter Pólya urn over the nodes of one block. Draws are taken
// against a frozen snapshot (sample_snapshot does not mutate), then applied
// with commit_*; this lets both endpoints of one interaction see the urn
// state left by the previous interaction.
class PyUrn {
public:
    PyUrn(double alpha, double theta) : alpha_(alpha), theta_(theta) {}

    int n_distinct() const { return static_cast<int>(counts_.size()); }
    int n_draws() const { return total_; }
    int count(int local) const { return counts_[static_cast<std::size_t>(local)]; }

    double prob_existing(int appearances) const {
        return (appearances - alpha_) / (theta_ + total_);
    }
    double prob_new() const { return (theta_ + alpha_ * n_distinct()) / (theta_ + total_); }

    // returns a local index, or -1 for "a new node"; urn state unchanged
    int sample_snapshot(Rng& rng) const;
    void commit_existing(int local) { ++counts_[static_cast<std::size_t>(local)]; ++total_; }
    int commit_new() {
        counts_.push_back(1);
        ++total_;
        return static_cast<int>(counts_.size()) - 1;
    }

private:
    double alpha_;
    double theta_;
    std::vector<int> counts_;
    int total_ = 0;
};

// Collapsed log-likelihood of an interaction sequence given labels, block
// shares, the row-stochastic block matrix B, and urn parameters: interaction
// terms sum log pi_{z(sender)} + log B(z(sender), z(receiver)); within-block
// node choices enter through the urn's exchangeable appearance product. The
// per-node label prior is not part of this quantity.
double ee_collapsed_loglik(int n_nodes, const std::vector<Interaction>& events, const std::vector<int>& z,
                           const std::vector<double>& pi, const std::vector<std::vector<double>>& B, double alpha,
                           double theta);

// Full-conditional log-weights for the label of node i in the two-block model
// with same-block receiver rate a. Includes the per-node label prior term.
std::vector<double> ee_label_log_weights(int n_nodes, const std::vector<Interaction>& events, const std::vector<int>& z,
                                         int i, const std::vector<double>& pi, double a, double alpha, double theta);

// Driver for the recursive engine. `threshold` in [1/2, 1) splits the range of
// the same-block receiver rate a: cohesive a in [1/2, threshold], separated
// a in (threshold, 1]. Subproblems keep only interactions internal to the
// member set; members left with no interactions still get labels through the
// block shares.
std::unique_ptr<BipartitionDriver> make_ee_driver(const InteractionSequence& seq, double threshold,
                                                  EePriors priors = {});

}  // namespace recpart
