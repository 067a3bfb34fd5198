#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "recpart/generators.hpp"
#include "recpart/graph.hpp"
#include "recpart/rng.hpp"

using namespace recpart;

namespace {

bool same_graph(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.m() != b.m()) return false;
    for (int u = 0; u < a.n(); ++u) {
        if (a.id(u) != b.id(u)) return false;
        if (a.neighbors(u) != b.neighbors(u)) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("generators") {
    TEST_CASE("every generator is deterministic in its seed") {
        std::vector<std::vector<double>> B2 = {{0.8, 0.2}, {0.2, 0.8}};
        std::vector<std::vector<double>> centers = {{-1.0, 0.0}, {1.0, 0.0}};
        for (int rep = 0; rep < 334; ++rep) {
            auto seed = static_cast<std::uint64_t>(1000 + rep);
            SbmSample s1 = generate_sbm(12, {0.5, 0.5}, B2, seed);
            SbmSample s2 = generate_sbm(12, {0.5, 0.5}, B2, seed);
            REQUIRE(same_graph(s1.graph, s2.graph));
            REQUIRE(s1.labels == s2.labels);

            EeSample e1 = generate_ee(15, {0.5, 0.5}, B2, 0.3, 2.0, seed);
            EeSample e2 = generate_ee(15, {0.5, 0.5}, B2, 0.3, 2.0, seed);
            REQUIRE(e1.labels == e2.labels);
            REQUIRE(e1.seq.n() == e2.seq.n());
            REQUIRE(e1.seq.m() == e2.seq.m());
            for (int m = 0; m < e1.seq.m(); ++m) {
                REQUIRE(e1.seq.events()[static_cast<std::size_t>(m)].sender ==
                        e2.seq.events()[static_cast<std::size_t>(m)].sender);
                REQUIRE(e1.seq.events()[static_cast<std::size_t>(m)].receiver ==
                        e2.seq.events()[static_cast<std::size_t>(m)].receiver);
            }

            LsmSample l1 = generate_lsm(10, {0.5, 0.5}, centers, 0.25, 1.0, seed);
            LsmSample l2 = generate_lsm(10, {0.5, 0.5}, centers, 0.25, 1.0, seed);
            REQUIRE(same_graph(l1.graph, l2.graph));
            REQUIRE(l1.labels == l2.labels);
            REQUIRE(l1.positions == l2.positions);
        }
        // and different seeds do not replay the same network
        SbmSample a = generate_sbm(30, {0.5, 0.5}, B2, 1);
        SbmSample b = generate_sbm(30, {0.5, 0.5}, B2, 2);
        CHECK_FALSE(same_graph(a.graph, b.graph));
    }

    TEST_CASE("block-model edge frequencies follow the planted rates") {
        SbmSample s = generate_sbm(400, {0.5, 0.5}, {{0.7, 0.15}, {0.15, 0.7}}, 99);
        REQUIRE(s.graph.n() == 400);
        long within_pairs = 0, within_edges = 0, across_pairs = 0, across_edges = 0;
        for (int u = 0; u < 400; ++u)
            for (int v = u + 1; v < 400; ++v) {
                bool same = s.labels[static_cast<std::size_t>(u)] == s.labels[static_cast<std::size_t>(v)];
                (same ? within_pairs : across_pairs) += 1;
                if (s.graph.has_edge(u, v)) (same ? within_edges : across_edges) += 1;
            }
        double fw = static_cast<double>(within_edges) / static_cast<double>(within_pairs);
        double fa = static_cast<double>(across_edges) / static_cast<double>(across_pairs);
        CHECK(std::abs(fw - 0.7) < 3.0 * std::sqrt(0.21 / static_cast<double>(within_pairs)));
        CHECK(std::abs(fa - 0.15) < 3.0 * std::sqrt(0.1275 / static_cast<double>(across_pairs)));
        // labels cover both blocks in roughly even shares
        int ones = 0;
        for (int lab : s.labels) ones += lab;
        CHECK(std::abs(ones / 400.0 - 0.5) < 3.0 * std::sqrt(0.25 / 400.0));
    }

    TEST_CASE("interaction samples respect the urn bookkeeping") {
        EeSample s = generate_ee(500, {0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}}, 0.3, 2.0, 7);
        CHECK(s.seq.m() == 500);
        int n = s.seq.n();
        REQUIRE(static_cast<int>(s.labels.size()) == n);
        // ids are assigned in first-appearance order as consecutive integers
        for (int v = 0; v < n; ++v) CHECK(s.seq.id(v) == std::to_string(v + 1));
        // the first event introduces two fresh nodes
        CHECK(s.seq.events()[0].sender == 0);
        CHECK(s.seq.events()[0].receiver == 1);
        // appearance totals add up to two endpoints per event
        long total = 0;
        for (int v = 0; v < n; ++v) total += s.seq.appearances(v);
        CHECK(total == 1000);
        // heavy-head degree profile: repeated urn draws concentrate on early nodes
        CHECK(s.seq.appearances(0) > 2);
    }

    TEST_CASE("interaction labels mostly pair same-block endpoints") {
        EeSample s = generate_ee(800, {0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}}, 0.3, 2.0, 13);
        int same = 0;
        for (const auto& ev : s.seq.events())
            same += s.labels[static_cast<std::size_t>(ev.sender)] == s.labels[static_cast<std::size_t>(ev.receiver)];
        // receiver block matches the sender block 90% of the time by construction
        CHECK(std::abs(same / 800.0 - 0.9) < 4.0 * std::sqrt(0.09 / 800.0));
    }

    TEST_CASE("latent-space samples connect near neighbors") {
        LsmSample s = generate_lsm(300, {0.5, 0.5}, {{-1.5, 0.0}, {1.5, 0.0}}, 0.0625, 1.0, 21);
        REQUIRE(s.positions.size() == 600);
        // cluster centers separate the blocks: within-cluster pairs sit ~0.35
        // apart on average, across-cluster pairs ~3 apart
        long within_pairs = 0, within_edges = 0, across_pairs = 0, across_edges = 0;
        for (int u = 0; u < 300; ++u)
            for (int v = u + 1; v < 300; ++v) {
                bool same = s.labels[static_cast<std::size_t>(u)] == s.labels[static_cast<std::size_t>(v)];
                (same ? within_pairs : across_pairs) += 1;
                if (s.graph.has_edge(u, v)) (same ? within_edges : across_edges) += 1;
            }
        double fw = static_cast<double>(within_edges) / static_cast<double>(within_pairs);
        double fa = static_cast<double>(across_edges) / static_cast<double>(across_pairs);
        CHECK(fw > 0.35);  // sigmoid(-0.35) ~ 0.41 on average within
        CHECK(fa < 0.10);  // sigmoid(-3) ~ 0.047 across
        // positions actually sit near the requested centers
        for (int v = 0; v < 300; ++v) {
            double cx = s.labels[static_cast<std::size_t>(v)] == 0 ? -1.5 : 1.5;
            double dx = s.positions[static_cast<std::size_t>(2 * v)] - cx;
            double dy = s.positions[static_cast<std::size_t>(2 * v + 1)];
            REQUIRE(std::sqrt(dx * dx + dy * dy) < 6.0 * 0.25);
        }
    }

    TEST_CASE("generator share vectors are validated by size") {
        // a three-block spec with a two-row rate matrix cannot be sampled
        CHECK_THROWS(generate_sbm(10, {0.3, 0.3, 0.4}, {{0.5, 0.5}, {0.5, 0.5}}, 1));
    }
}
