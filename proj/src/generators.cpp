#include "recpart/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "recpart/ee.hpp"
#include "recpart/mathutil.hpp"
#include "recpart/rng.hpp"

namespace recpart {

namespace {

std::vector<std::string> numbered_ids(int n) {
    std::vector<std::string> ids;
    ids.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) ids.push_back(std::to_string(i));
    return ids;
}

void check_square(const std::vector<double>& pi, const std::vector<std::vector<double>>& B, const char* who) {
    if (B.size() != pi.size()) throw std::invalid_argument(std::string(who) + ": B must have one row per block");
    for (const auto& row : B)
        if (row.size() != pi.size()) throw std::invalid_argument(std::string(who) + ": B rows must have one entry per block");
}

}  // namespace

SbmSample generate_sbm(int n, const std::vector<double>& pi, const std::vector<std::vector<double>>& B,
                       std::uint64_t seed) {
    check_square(pi, B, "generate_sbm");
    Rng rng(seed);
    SbmSample s;
    s.graph = Graph(numbered_ids(n));
    s.labels.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) s.labels[static_cast<std::size_t>(i)] = rng.categorical(pi);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double p = B[static_cast<std::size_t>(s.labels[static_cast<std::size_t>(i)])]
                        [static_cast<std::size_t>(s.labels[static_cast<std::size_t>(j)])];
            if (rng.bernoulli(p)) s.graph.add_edge(i, j);
        }
    }
    return s;
}

EeSample generate_ee(int n_events, const std::vector<double>& pi, const std::vector<std::vector<double>>& B,
                     double alpha, double theta, std::uint64_t seed) {
    check_square(pi, B, "generate_ee");
    const int K = static_cast<int>(pi.size());
    Rng rng(seed);
    EeSample s;
    std::vector<PyUrn> urns(static_cast<std::size_t>(K), PyUrn(alpha, theta));
    std::vector<std::vector<int>> block_to_global(static_cast<std::size_t>(K));

    auto resolve = [&](int block, int local) {
        if (local >= 0) {
            urns[static_cast<std::size_t>(block)].commit_existing(local);
            return block_to_global[static_cast<std::size_t>(block)][static_cast<std::size_t>(local)];
        }
        int fresh = urns[static_cast<std::size_t>(block)].commit_new();
        int global = s.seq.intern(std::to_string(s.labels.size() + 1));
        s.labels.push_back(block);
        block_to_global[static_cast<std::size_t>(block)].push_back(global);
        (void)fresh;
        return global;
    };

    for (int m = 0; m < n_events; ++m) {
        int sb = rng.categorical(pi);
        int rb = rng.categorical(B[static_cast<std::size_t>(sb)]);
        // both endpoints sample against the urn state before this event
        int s_local = urns[static_cast<std::size_t>(sb)].sample_snapshot(rng);
        int r_local = urns[static_cast<std::size_t>(rb)].sample_snapshot(rng);
        int sender = resolve(sb, s_local);
        int receiver = resolve(rb, r_local);
        s.seq.add_event(sender, receiver);
    }
    return s;
}

LsmSample generate_lsm(int n, const std::vector<double>& lambda, const std::vector<std::vector<double>>& centers,
                       double sigma_sq, double beta, std::uint64_t seed) {
    if (centers.empty()) throw std::invalid_argument("generate_lsm: no centers");
    if (centers.size() != lambda.size())
        throw std::invalid_argument("generate_lsm: one center per component share");
    const int dim = static_cast<int>(centers.front().size());
    Rng rng(seed);
    LsmSample s;
    s.graph = Graph(numbered_ids(n));
    s.labels.resize(static_cast<std::size_t>(n));
    s.positions.resize(static_cast<std::size_t>(n * dim));
    double sd = std::sqrt(sigma_sq);
    for (int i = 0; i < n; ++i) {
        int k = rng.categorical(lambda);
        s.labels[static_cast<std::size_t>(i)] = k;
        for (int a = 0; a < dim; ++a)
            s.positions[static_cast<std::size_t>(i * dim + a)] =
                rng.normal(centers[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)], sd);
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double dist_sq = 0.0;
            for (int a = 0; a < dim; ++a)
                dist_sq += sq(s.positions[static_cast<std::size_t>(i * dim + a)] -
                              s.positions[static_cast<std::size_t>(j * dim + a)]);
            double p = sigmoid(-beta * std::sqrt(dist_sq));
            if (rng.bernoulli(p)) s.graph.add_edge(i, j);
        }
    }
    return s;
}

}  // namespace recpart
