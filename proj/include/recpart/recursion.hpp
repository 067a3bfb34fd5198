#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "recpart/trace.hpp"

namespace recpart {

struct McmcBudget {
    int sweeps = 2000;
    int burn_in = 500;
    int thin = 1;
    int chains = 3;
};

struct StopRule {
    double cutoff = 10.0;  // split when the Bayes factor for separation exceeds this
    int min_size = 3;      // clusters smaller than this are never split
};

// One MCMC chain for a restricted fit; run() discards burn_in sweeps, then
// stores every thin-th draw into `out`.
class Chain {
public:
    virtual ~Chain() = default;
    virtual void run(int sweeps, int burn_in, int thin, PosteriorTrace& out) = 0;
};

// Model adapter for the recursive engine: knows the data of one subproblem,
// builds restricted-fit chains for it, and can restrict itself to a subset of
// its units for the recursive step.
class BipartitionDriver {
public:
    virtual ~BipartitionDriver() = default;
    virtual int size() const = 0;
    // true when the subproblem carries no usable signal (no edges / no events)
    virtual bool degenerate() const = 0;
    virtual const std::vector<std::string>& unit_ids() const = 0;
    virtual std::unique_ptr<Chain> make_chain(bool separated, std::uint64_t seed) const = 0;
    // `members` are unit indices local to this driver
    virtual std::unique_ptr<BipartitionDriver> restrict_to(const std::vector<int>& members) const = 0;
};

struct SplitTest {
    MarginalEstimate cohesive;
    MarginalEstimate separated;
    PosteriorTrace separated_trace;  // pooled across chains; source of the split labels
    double log_bf() const { return separated.log_marginal - cohesive.log_marginal; }
};

// Fits both restricted models (chains pooled) and returns the evidence pair.
SplitTest run_split_test(const BipartitionDriver& driver, const McmcBudget& budget, std::uint64_t seed);

struct TreeNode {
    std::uint64_t path = 1;  // root 1; children of p are 2p and 2p+1
    bool is_leaf = true;
    std::vector<int> members;  // indices into the root unit set, ascending
    double log_bf = std::numeric_limits<double>::quiet_NaN();
    double se_cohesive = 0.0;
    double se_separated = 0.0;
    int draws = 0;
    std::string leaf_reason;  // bf_stop | min_size | degenerate_network | degenerate_bipartition
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
};

struct CommunityTree {
    std::unique_ptr<TreeNode> root;
    std::vector<std::string> unit_ids;  // external ids of the root units

    int n_units() const { return static_cast<int>(unit_ids.size()); }
    // Communities under a (possibly stricter) cutoff: an internal node counts
    // as split only when its log Bayes factor exceeds log(cutoff). Nodes
    // without stored children stay leaves, so only pruning is possible
    // relative to the cutoff the tree was built with.
    std::vector<int> flatten(double cutoff) const;
    int n_communities(double cutoff) const;
};

// Recursive bipartitioning under the Bayes-factor stopping rule. Progress
// lines go to `log` when given.
CommunityTree detect_communities(const BipartitionDriver& root_driver, const McmcBudget& budget, const StopRule& rule,
                                 std::uint64_t seed, std::ostream* log = nullptr);

}  // namespace recpart
