#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "recpart/graph.hpp"
#include "recpart/lsm.hpp"
#include "recpart/rng.hpp"

using namespace recpart;

namespace {

Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::string> ids;
    for (int v = 0; v < n; ++v) ids.push_back(std::to_string(v + 1));
    Graph g(std::move(ids));
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_SUITE("lsm") {
    TEST_CASE("edge likelihood at frozen distances") {
        Graph linked = make_graph(2, {{0, 1}});
        Graph apart = make_graph(2, {});
        // coincident points: an edge has probability 1/2
        std::vector<double> same = {1.0, 2.0, 1.0, 2.0};
        CHECK(lsm_edge_loglik(linked, same, 2, 1.0) == doctest::Approx(-0.6931471805599453).epsilon(1e-12));
        // distance log 3 at unit coefficient: edge probability 1/4
        std::vector<double> spread = {0.0, 0.0, std::log(3.0), 0.0};
        CHECK(lsm_edge_loglik(linked, spread, 2, 1.0) == doctest::Approx(std::log(0.25)).epsilon(1e-12));
        CHECK(lsm_edge_loglik(apart, spread, 2, 1.0) == doctest::Approx(std::log(0.75)).epsilon(1e-12));
    }

    TEST_CASE("zero coefficient flattens every pair to a coin flip") {
        Rng rng(61);
        for (int rep = 0; rep < 50; ++rep) {
            int n = 3 + static_cast<int>(rng.uniform_index(5));
            Graph g = make_graph(n, {});
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.bernoulli(0.5)) g.add_edge(u, v);
            std::vector<double> pos(static_cast<std::size_t>(2 * n));
            for (auto& x : pos) x = rng.normal() * 3.0;
            double expected = -(n * (n - 1) / 2) * std::log(2.0);
            REQUIRE(lsm_edge_loglik(g, pos, 2, 0.0) == doctest::Approx(expected).epsilon(1e-10));
        }
    }

    TEST_CASE("edge likelihood is rigid-motion invariant") {
        Rng rng(62);
        int cases = 0;
        while (cases < 1000) {
            int n = 3 + static_cast<int>(rng.uniform_index(5));
            Graph g = make_graph(n, {});
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.bernoulli(0.5)) g.add_edge(u, v);
            std::vector<double> pos(static_cast<std::size_t>(2 * n));
            for (auto& x : pos) x = rng.normal() * 2.0;
            double beta = 0.2 + 2.0 * rng.uniform();
            double base = lsm_edge_loglik(g, pos, 2, beta);
            double phi = rng.uniform() * 6.28318;
            double dx = rng.normal(), dy = rng.normal();
            std::vector<double> moved(pos.size());
            for (int v = 0; v < n; ++v) {
                double x = pos[static_cast<std::size_t>(2 * v)], y = pos[static_cast<std::size_t>(2 * v + 1)];
                moved[static_cast<std::size_t>(2 * v)] = std::cos(phi) * x - std::sin(phi) * y + dx;
                moved[static_cast<std::size_t>(2 * v + 1)] = std::sin(phi) * x + std::cos(phi) * y + dy;
            }
            REQUIRE(lsm_edge_loglik(g, moved, 2, beta) == doctest::Approx(base).epsilon(1e-9));
            ++cases;
        }
    }

    TEST_CASE("responsibilities split evenly at equal distance and collapse far away") {
        std::vector<std::vector<double>> mus = {{-1.0, 0.0}, {1.0, 0.0}};
        std::vector<double> sig = {0.25, 0.25};
        std::vector<double> lam = {0.5, 0.5};
        auto mid = lsm_responsibilities({0.0, 0.0}, mus, sig, lam);
        CHECK(mid[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(mid[0] + mid[1] == doctest::Approx(1.0).epsilon(1e-12));
        // 24 standard deviations from the far center: numerically certain
        auto sure = lsm_responsibilities({-1.0, 0.0}, mus, {0.0625 / 9, 0.0625 / 9}, lam);
        CHECK(sure[0] == doctest::Approx(1.0).epsilon(1e-9));
        // uneven shares shift the midpoint split by the share ratio
        auto tilted = lsm_responsibilities({0.0, 0.0}, mus, sig, {0.8, 0.2});
        CHECK(tilted[0] == doctest::Approx(0.8).epsilon(1e-12));
    }

    TEST_CASE("center posterior matches the conjugate formulas") {
        // two members at (1,0) and (3,2), sigma^2 = 1/4, omega^2 = 25
        std::vector<double> pos = {1.0, 0.0, 3.0, 2.0};
        std::vector<int> labels = {0, 0};
        std::vector<double> mean;
        double var = 0.0;
        lsm_center_posterior(pos, labels, 0, 2, 0.25, 25.0, mean, var);
        CHECK(var == doctest::Approx(0.12437810945273634).epsilon(1e-12));
        CHECK(mean[0] == doctest::Approx(1.9900497512437814).epsilon(1e-12));
        CHECK(mean[1] == doctest::Approx(0.9950248756218907).epsilon(1e-12));
        // no members: posterior falls back to the prior
        std::vector<int> other = {1, 1};
        lsm_center_posterior(pos, other, 0, 2, 0.25, 25.0, mean, var);
        CHECK(var == doctest::Approx(25.0).epsilon(1e-12));
        CHECK(mean[0] == doctest::Approx(0.0).epsilon(1e-12));
    }

    TEST_CASE("the driver flags empty graphs and validates the threshold") {
        Graph none = make_graph(4, {});
        CHECK(make_lsm_driver(none, 0.0)->degenerate());
        Graph tri = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
        CHECK_FALSE(make_lsm_driver(tri, 0.0)->degenerate());
        CHECK_THROWS(make_lsm_driver(tri, -1.0));
    }

    TEST_CASE("restricted chains store finite aligned draws") {
        Rng rng(63);
        Graph g = make_graph(10, {});
        for (int u = 0; u < 10; ++u)
            for (int v = u + 1; v < 10; ++v)
                if (rng.bernoulli((u < 5) == (v < 5) ? 0.8 : 0.15)) g.add_edge(u, v);
        auto driver = make_lsm_driver(g, 0.0);
        for (bool separated : {false, true}) {
            auto chain = driver->make_chain(separated, 5);
            PosteriorTrace trace;
            chain->run(100, 20, 2, trace);
            REQUIRE(trace.size() == 50);  // every second kept sweep
            for (int i = 0; i < trace.size(); ++i) {
                REQUIRE(std::isfinite(trace.loglik[static_cast<std::size_t>(i)]));
                REQUIRE(trace.labels[static_cast<std::size_t>(i)].size() == 10);
            }
        }
    }

    TEST_CASE("general fit produces finite criteria and sensible labels") {
        Rng rng(64);
        Graph g = make_graph(20, {});
        for (int u = 0; u < 20; ++u)
            for (int v = u + 1; v < 20; ++v)
                if (rng.bernoulli((u < 10) == (v < 10) ? 0.8 : 0.05)) g.add_edge(u, v);
        LsmFit fit = fit_lsm_k(g, 2, {400, 100, 1, 1}, 9);
        CHECK(std::isfinite(fit.dic));
        REQUIRE(fit.map_labels.size() == 20);
        // params layout: n*dim positions then the distance coefficient
        REQUIRE(fit.trace.params[0].size() == 41);
        CHECK(fit.trace.params[0][40] > 0.0);
    }
}
