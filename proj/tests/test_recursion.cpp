#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "recpart/graph.hpp"
#include "recpart/recursion.hpp"
#include "recpart/rng.hpp"
#include "recpart/sbm.hpp"

using namespace recpart;

namespace {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> ids;
    for (int v = 0; v < n; ++v) ids.push_back(std::to_string(v + 1));
    Graph g(std::move(ids));
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

Graph planted_two_block(int n, double a, double b, Rng& rng) {
    Graph g = make_graph(n, {});
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.bernoulli((u < n / 2) == (v < n / 2) ? a : b)) g.add_edge(u, v);
    return g;
}

void check_partition(const TreeNode& node) {
    if (node.is_leaf) {
        REQUIRE_FALSE(node.members.empty());
        REQUIRE_FALSE(node.leaf_reason.empty());
        REQUIRE(node.left == nullptr);
        REQUIRE(node.right == nullptr);
        return;
    }
    REQUIRE(node.left != nullptr);
    REQUIRE(node.right != nullptr);
    REQUIRE(node.left->path == 2 * node.path);
    REQUIRE(node.right->path == 2 * node.path + 1);
    // children partition the parent's members
    std::vector<int> merged = node.left->members;
    merged.insert(merged.end(), node.right->members.begin(), node.right->members.end());
    std::sort(merged.begin(), merged.end());
    REQUIRE(merged == node.members);
    check_partition(*node.left);
    check_partition(*node.right);
}

}  // namespace

TEST_SUITE("recursion") {
    TEST_CASE("every tree is a valid recursive partition") {
        // correctness of the tree bookkeeping does not depend on chain quality,
        // so a minimal budget keeps a thousand full runs cheap
        McmcBudget tiny{60, 20, 1, 1};
        StopRule rule{10.0, 3};
        Rng rng(71);
        for (int rep = 0; rep < 1000; ++rep) {
            int n = 4 + static_cast<int>(rng.uniform_index(9));
            Graph g = planted_two_block(n, 0.8, 0.2, rng);
            auto driver = make_sbm_driver(g, 0.1);
            CommunityTree tree = detect_communities(*driver, tiny, rule, mix_seed(71, static_cast<std::uint64_t>(rep)));
            REQUIRE(tree.n_units() == n);
            std::vector<int> expected(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) expected[static_cast<std::size_t>(v)] = v;
            REQUIRE(tree.root->members == expected);
            check_partition(*tree.root);

            // flatten covers every unit with contiguous community ids
            auto flat = tree.flatten(rule.cutoff);
            REQUIRE(static_cast<int>(flat.size()) == n);
            int k = tree.n_communities(rule.cutoff);
            REQUIRE(k >= 1);
            std::vector<bool> seen(static_cast<std::size_t>(k), false);
            for (int lab : flat) {
                REQUIRE(lab >= 0);
                REQUIRE(lab < k);
                seen[static_cast<std::size_t>(lab)] = true;
            }
            REQUIRE(std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }));
        }
    }

    TEST_CASE("stricter cutoffs never create communities") {
        McmcBudget tiny{80, 20, 1, 1};
        Rng rng(72);
        for (int rep = 0; rep < 30; ++rep) {
            Graph g = planted_two_block(14, 0.85, 0.1, rng);
            auto driver = make_sbm_driver(g, 0.1);
            CommunityTree tree = detect_communities(*driver, tiny, {10.0, 3}, mix_seed(72, static_cast<std::uint64_t>(rep)));
            int prev = tree.n_communities(10.0);
            for (double cutoff : {100.0, 1e4, 1e8}) {
                int k = tree.n_communities(cutoff);
                REQUIRE(k <= prev);
                prev = k;
            }
            // a cutoff beyond any finite evidence keeps the root whole
            REQUIRE(tree.n_communities(1e300) == 1);
            auto flat = tree.flatten(1e300);
            REQUIRE(std::all_of(flat.begin(), flat.end(), [](int lab) { return lab == 0; }));
        }
    }

    TEST_CASE("tiny problems stop on min_size") {
        Graph g = make_graph(2, {{0, 1}});
        auto driver = make_sbm_driver(g, 0.1);
        CommunityTree tree = detect_communities(*driver, {100, 20, 1, 1}, {10.0, 3}, 1);
        CHECK(tree.root->is_leaf);
        CHECK(tree.root->leaf_reason == "min_size");
        CHECK(std::isnan(tree.root->log_bf));
    }

    TEST_CASE("an outlier-only division is rejected as degenerate") {
        // dense 9-clique plus one isolated node: the separated model's modal
        // labeling shaves off the loner, a side below min_size, so the engine
        // must refuse the split even though the evidence clears the cutoff
        Graph g = make_graph(10, {});
        for (int u = 0; u < 9; ++u)
            for (int v = u + 1; v < 9; ++v) g.add_edge(u, v);
        auto driver = make_sbm_driver(g, 0.1);
        CommunityTree tree = detect_communities(*driver, {300, 100, 1, 2}, {10.0, 3}, 11);
        REQUIRE(tree.root->is_leaf);
        CHECK(tree.root->leaf_reason == "degenerate_bipartition");
        CHECK(tree.root->log_bf > std::log(10.0));
        CHECK(tree.n_communities(10.0) == 1);
    }

    TEST_CASE("edgeless problems stop as degenerate") {
        Graph g = make_graph(6, {});
        auto driver = make_sbm_driver(g, 0.1);
        CommunityTree tree = detect_communities(*driver, {100, 20, 1, 1}, {10.0, 3}, 1);
        CHECK(tree.root->is_leaf);
        CHECK(tree.root->leaf_reason == "degenerate_network");
        CHECK(tree.n_communities(10.0) == 1);
    }

    TEST_CASE("a strong planted split is found and recorded") {
        Rng rng(73);
        Graph g = planted_two_block(40, 0.85, 0.05, rng);
        auto driver = make_sbm_driver(g, 0.1);
        CommunityTree tree = detect_communities(*driver, {600, 150, 1, 2}, {10.0, 3}, 5);
        REQUIRE_FALSE(tree.root->is_leaf);
        CHECK(tree.root->log_bf > std::log(10.0));
        CHECK(tree.root->draws > 0);
        CHECK(tree.root->se_separated >= 0.0);
        CHECK(std::isfinite(tree.root->se_separated));
        // the two halves come out as the planted blocks
        auto flat = tree.flatten(10.0);
        int crossings = 0;
        for (int u = 0; u < 40; ++u)
            for (int v = u + 1; v < 40; ++v)
                if ((u < 20) == (v < 20) && flat[static_cast<std::size_t>(u)] != flat[static_cast<std::size_t>(v)])
                    ++crossings;
        CHECK(crossings == 0);
    }

    TEST_CASE("detection is reproducible for a fixed seed") {
        Rng rng(74);
        Graph g = planted_two_block(16, 0.8, 0.15, rng);
        auto driver = make_sbm_driver(g, 0.1);
        McmcBudget budget{200, 50, 1, 2};
        CommunityTree t1 = detect_communities(*driver, budget, {10.0, 3}, 99);
        CommunityTree t2 = detect_communities(*driver, budget, {10.0, 3}, 99);
        CHECK(t1.flatten(10.0) == t2.flatten(10.0));
        if (!t1.root->is_leaf && !t2.root->is_leaf)
            CHECK(t1.root->log_bf == doctest::Approx(t2.root->log_bf).epsilon(1e-12));
    }

    TEST_CASE("split tests pool the requested number of draws") {
        Rng rng(75);
        Graph g = planted_two_block(12, 0.8, 0.2, rng);
        auto driver = make_sbm_driver(g, 0.1);
        SplitTest st = run_split_test(*driver, {100, 25, 1, 3}, 4);
        CHECK(st.separated_trace.size() == 300);  // 3 chains x 100 kept sweeps
        CHECK(st.cohesive.n_draws == 300);
        CHECK(st.separated.n_draws == 300);
        CHECK(std::isfinite(st.log_bf()));
        CHECK(st.cohesive.se_log > 0.0);
    }
}
