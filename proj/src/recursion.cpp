#include "recpart/recursion.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "recpart/rng.hpp"

namespace recpart {

SplitTest run_split_test(const BipartitionDriver& driver, const McmcBudget& budget, std::uint64_t seed) {
    SplitTest st;
    PosteriorTrace cohesive_trace;
    for (int side = 0; side < 2; ++side) {
        const bool separated = side == 1;
        PosteriorTrace& pool = separated ? st.separated_trace : cohesive_trace;
        for (int chain = 0; chain < budget.chains; ++chain) {
            PosteriorTrace t;
            auto c = driver.make_chain(separated,
                                       mix_seed(seed, static_cast<std::uint64_t>(side), static_cast<std::uint64_t>(chain)));
            c->run(budget.sweeps, budget.burn_in, budget.thin, t);
            // chains may settle on opposite block namings; flip whole chains into
            // the pool's frame before appending
            if (!pool.labels.empty() && !t.labels.empty()) {
                const auto& ref = pool.labels.front();
                const auto& first = t.labels.front();
                int agree = 0;
                for (std::size_t v = 0; v < ref.size(); ++v) agree += ref[v] == first[v];
                if (2 * agree < static_cast<int>(ref.size())) {
                    for (auto& labels : t.labels)
                        for (int& z : labels) z = 1 - z;
                }
            }
            pool.append(t);
        }
    }
    st.cohesive = estimate_log_marginal(cohesive_trace.loglik);
    st.separated = estimate_log_marginal(st.separated_trace.loglik);
    return st;
}

namespace {

void build_node(TreeNode& node, const BipartitionDriver& driver, const McmcBudget& budget, const StopRule& rule,
                std::uint64_t seed, std::ostream* log) {
    const double log_cut = std::log(rule.cutoff);

    if (driver.size() < rule.min_size) {
        node.leaf_reason = "min_size";
        if (log) *log << "[node " << node.path << "] n=" << driver.size() << " -> leaf (min_size)\n";
        return;
    }
    if (driver.degenerate()) {
        node.leaf_reason = "degenerate_network";
        if (log) *log << "[node " << node.path << "] n=" << driver.size() << " -> leaf (degenerate_network)\n";
        return;
    }

    SplitTest st = run_split_test(driver, budget, mix_seed(seed, node.path));
    node.log_bf = st.log_bf();
    node.se_cohesive = st.cohesive.se_log;
    node.se_separated = st.separated.se_log;
    node.draws = st.separated.n_draws;

    if (!(node.log_bf > log_cut)) {
        node.leaf_reason = "bf_stop";
        if (log)
            *log << "[node " << node.path << "] n=" << driver.size() << " logBF=" << node.log_bf << " -> leaf (bf_stop)\n";
        return;
    }

    std::vector<int> labels = modal_labels(st.separated_trace, 2);
    std::vector<int> left_local, right_local;
    for (std::size_t i = 0; i < labels.size(); ++i) (labels[i] == 0 ? left_local : right_local).push_back(static_cast<int>(i));
    // a modal division whose smaller side is below min_size names a community the
    // rule refuses to examine (a lone outlier, typically), so it cannot justify a split
    if (std::min(left_local.size(), right_local.size()) < static_cast<std::size_t>(rule.min_size)) {
        node.leaf_reason = "degenerate_bipartition";
        if (log)
            *log << "[node " << node.path << "] n=" << driver.size() << " logBF=" << node.log_bf
                 << " -> leaf (degenerate_bipartition)\n";
        return;
    }

    if (log)
        *log << "[node " << node.path << "] n=" << driver.size() << " logBF=" << node.log_bf << " -> split "
             << left_local.size() << "/" << right_local.size() << "\n";

    node.is_leaf = false;
    node.left = std::make_unique<TreeNode>();
    node.right = std::make_unique<TreeNode>();
    node.left->path = 2 * node.path;
    node.right->path = 2 * node.path + 1;
    for (int i : left_local) node.left->members.push_back(node.members[static_cast<std::size_t>(i)]);
    for (int i : right_local) node.right->members.push_back(node.members[static_cast<std::size_t>(i)]);

    auto left_driver = driver.restrict_to(left_local);
    auto right_driver = driver.restrict_to(right_local);
    build_node(*node.left, *left_driver, budget, rule, seed, log);
    build_node(*node.right, *right_driver, budget, rule, seed, log);
}

void collect_leaves(const TreeNode* node, double log_cut, std::vector<int>& out, int& next_label) {
    const bool split = !node->is_leaf && node->left && node->right && node->log_bf > log_cut;
    if (!split) {
        for (int v : node->members) out[static_cast<std::size_t>(v)] = next_label;
        ++next_label;
        return;
    }
    collect_leaves(node->left.get(), log_cut, out, next_label);
    collect_leaves(node->right.get(), log_cut, out, next_label);
}

}  // namespace

std::vector<int> CommunityTree::flatten(double cutoff) const {
    std::vector<int> out(unit_ids.size(), 0);
    int next_label = 0;
    if (root) collect_leaves(root.get(), std::log(cutoff), out, next_label);
    return out;
}

int CommunityTree::n_communities(double cutoff) const {
    std::vector<int> labels = flatten(cutoff);
    int max_label = -1;
    for (int l : labels) max_label = std::max(max_label, l);
    return max_label + 1;
}

CommunityTree detect_communities(const BipartitionDriver& root_driver, const McmcBudget& budget, const StopRule& rule,
                                 std::uint64_t seed, std::ostream* log) {
    CommunityTree tree;
    tree.unit_ids = root_driver.unit_ids();
    tree.root = std::make_unique<TreeNode>();
    tree.root->path = 1;
    tree.root->members.resize(tree.unit_ids.size());
    std::iota(tree.root->members.begin(), tree.root->members.end(), 0);
    build_node(*tree.root, root_driver, budget, rule, seed, log);
    return tree;
}

}  // namespace recpart
