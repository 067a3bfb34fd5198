#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "recpart/ee.hpp"
#include "recpart/graph.hpp"
#include "recpart/rng.hpp"

using namespace recpart;

namespace {

std::vector<Interaction> make_events(const std::vector<std::pair<int, int>>& pairs) {
    std::vector<Interaction> ev;
    for (auto [s, r] : pairs) ev.push_back({s, r});
    return ev;
}

// events with both labels varied; used to brute-force conditional differences
double joint_loglik(int n, const std::vector<Interaction>& ev, const std::vector<int>& z,
                    const std::vector<double>& pi, double a, double alpha, double theta) {
    std::vector<std::vector<double>> B = {{a, 1 - a}, {1 - a, a}};
    double label_prior = 0.0;
    for (int v = 0; v < n; ++v) label_prior += std::log(pi[static_cast<std::size_t>(z[static_cast<std::size_t>(v)])]);
    return ee_collapsed_loglik(n, ev, z, pi, B, alpha, theta) + label_prior;
}

}  // namespace

TEST_SUITE("ee") {
    TEST_CASE("urn probabilities are the two-parameter rule") {
        PyUrn urn(0.5, 2.0);
        urn.commit_new();           // node 0
        urn.commit_existing(0);     // again
        urn.commit_existing(0);     // D_0 = 3
        urn.commit_new();           // node 1
        urn.commit_existing(1);     // D_1 = 2, so N = 5, n = 2
        CHECK(urn.n_draws() == 5);
        CHECK(urn.n_distinct() == 2);
        CHECK(urn.prob_existing(urn.count(0)) == doctest::Approx(2.5 / 7.0).epsilon(1e-12));
        CHECK(urn.prob_new() == doctest::Approx(3.0 / 7.0).epsilon(1e-12));
        // discount zero reduces to the one-parameter rule
        PyUrn crp(0.0, 2.0);
        crp.commit_new();
        crp.commit_existing(0);
        CHECK(crp.prob_new() == doctest::Approx(2.0 / 4.0).epsilon(1e-12));
        CHECK(crp.prob_existing(crp.count(0)) == doctest::Approx(2.0 / 4.0).epsilon(1e-12));
    }

    TEST_CASE("snapshot draws do not mutate the urn") {
        PyUrn urn(0.3, 1.0);
        urn.commit_new();
        Rng rng(51);
        for (int i = 0; i < 50; ++i) {
            int pick = urn.sample_snapshot(rng);
            REQUIRE((pick == -1 || pick == 0));
        }
        CHECK(urn.n_draws() == 1);
        CHECK(urn.n_distinct() == 1);
    }

    TEST_CASE("snapshot frequencies follow the urn rule") {
        PyUrn urn(0.5, 2.0);
        urn.commit_new();
        urn.commit_existing(0);
        urn.commit_existing(0);  // counts: {3}; P(existing) = 2.5/5, P(new) = 2.5/5
        Rng rng(52);
        int n_new = 0, n = 20000;
        for (int i = 0; i < n; ++i) n_new += urn.sample_snapshot(rng) == -1;
        CHECK(std::abs(n_new / static_cast<double>(n) - 0.5) < 3.0 * std::sqrt(0.25 / n));
    }

    TEST_CASE("collapsed likelihood: single cross-block event is urn-free") {
        // sender in block 0, receiver in block 1: each block urn sees one
        // appearance, so every urn parameter cancels
        auto ev = make_events({{0, 1}});
        std::vector<double> pi = {0.5, 0.5};
        std::vector<std::vector<double>> B = {{0.5, 0.5}, {0.5, 0.5}};
        double expected = std::log(0.25);
        CHECK(ee_collapsed_loglik(2, ev, {0, 1}, pi, B, 0.3, 2.0) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(ee_collapsed_loglik(2, ev, {0, 1}, pi, B, 0.7, 0.4) == doctest::Approx(expected).epsilon(1e-12));
    }

    TEST_CASE("collapsed likelihood: frozen two-event same-block value") {
        // events (A,B), (A,B) in block 0 with pi0 = 0.6, a = 0.7, theta = 2, alpha = 0.3:
        // 2 (log .6 + log .7) + log 2.3 + 2 log .7 - log(3*4*5)
        auto ev = make_events({{0, 1}, {0, 1}});
        std::vector<double> pi = {0.6, 0.4};
        std::vector<std::vector<double>> B = {{0.7, 0.3}, {0.3, 0.7}};
        CHECK(ee_collapsed_loglik(2, ev, {0, 0}, pi, B, 0.3, 2.0) ==
              doctest::Approx(-5.709786462573907).epsilon(1e-12));
    }

    TEST_CASE("collapsed likelihood: frozen self-event value") {
        // one event (A,A): the block urn sees A twice
        auto ev = make_events({{0, 0}});
        std::vector<double> pi = {0.9, 0.1};
        std::vector<std::vector<double>> B = {{0.8, 0.2}, {0.2, 0.8}};
        CHECK(ee_collapsed_loglik(1, ev, {0}, pi, B, 0.25, 1.5) ==
              doctest::Approx(-1.532476871297972).epsilon(1e-12));
    }

    TEST_CASE("collapsed likelihood is event-order exchangeable") {
        Rng rng(53);
        int cases = 0;
        while (cases < 1000) {
            int n = 3 + static_cast<int>(rng.uniform_index(4));
            int m = 3 + static_cast<int>(rng.uniform_index(6));
            std::vector<Interaction> ev;
            for (int e = 0; e < m; ++e)
                ev.push_back({static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n))),
                              static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)))});
            std::vector<int> z(static_cast<std::size_t>(n));
            for (auto& x : z) x = static_cast<int>(rng.uniform_index(2));
            double a = 0.55 + 0.4 * rng.uniform();
            double alpha = 0.6 * rng.uniform();
            double theta = 0.3 + 2.0 * rng.uniform();
            std::vector<double> pi = {0.4, 0.6};
            std::vector<std::vector<double>> B = {{a, 1 - a}, {1 - a, a}};
            double base = ee_collapsed_loglik(n, ev, z, pi, B, alpha, theta);
            REQUIRE(std::isfinite(base));
            for (int p = 0; p < 4; ++p) {
                rng.shuffle(ev);
                REQUIRE(ee_collapsed_loglik(n, ev, z, pi, B, alpha, theta) ==
                        doctest::Approx(base).epsilon(1e-9));
                ++cases;
            }
        }
    }

    TEST_CASE("label weights match joint differences node by node") {
        Rng rng(54);
        int cases = 0;
        while (cases < 1000) {
            int n = 3 + static_cast<int>(rng.uniform_index(4));
            int m = 2 + static_cast<int>(rng.uniform_index(7));
            std::vector<Interaction> ev;
            for (int e = 0; e < m; ++e)
                ev.push_back({static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n))),
                              static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)))});
            std::vector<int> z(static_cast<std::size_t>(n));
            for (auto& x : z) x = static_cast<int>(rng.uniform_index(2));
            double a = 0.55 + 0.4 * rng.uniform();
            double alpha = 0.6 * rng.uniform();
            double theta = 0.3 + 2.0 * rng.uniform();
            std::vector<double> pi = {0.35, 0.65};
            for (int i = 0; i < n; ++i) {
                auto lw = ee_label_log_weights(n, ev, z, i, pi, a, alpha, theta);
                std::vector<int> z0 = z, z1 = z;
                z0[static_cast<std::size_t>(i)] = 0;
                z1[static_cast<std::size_t>(i)] = 1;
                double j0 = joint_loglik(n, ev, z0, pi, a, alpha, theta);
                double j1 = joint_loglik(n, ev, z1, pi, a, alpha, theta);
                REQUIRE(lw[1] - lw[0] == doctest::Approx(j1 - j0).epsilon(1e-8));
                ++cases;
            }
        }
    }

    TEST_CASE("silent nodes are labeled by the shares alone") {
        // node 2 appears in no event: its conditional must be exactly the prior
        auto ev = make_events({{0, 1}, {1, 0}});
        std::vector<double> pi = {0.3, 0.7};
        auto lw = ee_label_log_weights(3, ev, {0, 1, 0}, 2, pi, 0.8, 0.3, 2.0);
        CHECK(lw[1] - lw[0] == doctest::Approx(std::log(0.7) - std::log(0.3)).epsilon(1e-12));
    }

    TEST_CASE("driver restriction keeps internal events and silent members") {
        InteractionSequence seq;
        int a = seq.intern("a"), b = seq.intern("b"), c = seq.intern("c"), d = seq.intern("d");
        seq.add_event(a, b);
        seq.add_event(b, c);
        seq.add_event(c, d);
        auto driver = make_ee_driver(seq, 0.6);
        CHECK(driver->size() == 4);
        CHECK_FALSE(driver->degenerate());
        // keep a, b, d: only the a-b event is internal; d stays as a silent unit
        auto sub = driver->restrict_to({0, 1, 3});
        CHECK(sub->size() == 3);
        CHECK(sub->unit_ids() == std::vector<std::string>{"a", "b", "d"});
        CHECK_FALSE(sub->degenerate());
        // keep a, d: no internal events at all
        CHECK(driver->restrict_to({0, 3})->degenerate());
    }

    TEST_CASE("threshold validation") {
        InteractionSequence seq;
        seq.add_event(seq.intern("x"), seq.intern("y"));
        CHECK_THROWS(make_ee_driver(seq, 0.4));
        CHECK_THROWS(make_ee_driver(seq, 1.0));
        CHECK_NOTHROW(make_ee_driver(seq, 0.5));
    }

    TEST_CASE("restricted chains store finite aligned draws") {
        Rng rng(55);
        InteractionSequence seq;
        for (int v = 0; v < 8; ++v) seq.intern(std::to_string(v));
        for (int e = 0; e < 30; ++e)
            seq.add_event(static_cast<int>(rng.uniform_index(8)), static_cast<int>(rng.uniform_index(8)));
        auto driver = make_ee_driver(seq, 0.6);
        for (bool separated : {false, true}) {
            auto chain = driver->make_chain(separated, 7);
            PosteriorTrace trace;
            chain->run(120, 20, 1, trace);
            REQUIRE(trace.size() == 120);  // burn-in sweeps are extra
            for (int i = 0; i < trace.size(); ++i) {
                REQUIRE(std::isfinite(trace.loglik[static_cast<std::size_t>(i)]));
                REQUIRE(trace.labels[static_cast<std::size_t>(i)].size() == 8);
            }
        }
    }
}
