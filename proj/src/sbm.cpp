#include "recpart/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "recpart/mathutil.hpp"
#include "recpart/spaces.hpp"
#include "recpart/trace.hpp"

namespace recpart {

namespace {

constexpr double rate_eps = 1e-12;

double clamp_rate(double p) { return std::min(std::max(p, rate_eps), 1.0 - rate_eps); }

double bernoulli_block_ll(int edges, int pairs, double rate) {
    if (pairs == 0) return 0.0;
    return edges * std::log(rate) + (pairs - edges) * std::log1p(-rate);
}

}  // namespace

BlockPairCounts count_block_pairs(const Graph& g, const std::vector<int>& z, int K) {
    BlockPairCounts c;
    c.edges.assign(static_cast<std::size_t>(K), std::vector<int>(static_cast<std::size_t>(K), 0));
    c.pairs.assign(static_cast<std::size_t>(K), std::vector<int>(static_cast<std::size_t>(K), 0));
    std::vector<int> sizes(static_cast<std::size_t>(K), 0);
    for (int v = 0; v < g.n(); ++v) {
        int zv = z[static_cast<std::size_t>(v)];
        if (zv < 0 || zv >= K) throw std::out_of_range("count_block_pairs: label out of range");
        ++sizes[static_cast<std::size_t>(zv)];
    }
    for (int v = 0; v < g.n(); ++v) {
        for (int w : g.neighbors(v)) {
            if (w <= v) continue;
            int k = std::min(z[static_cast<std::size_t>(v)], z[static_cast<std::size_t>(w)]);
            int l = std::max(z[static_cast<std::size_t>(v)], z[static_cast<std::size_t>(w)]);
            ++c.edges[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        }
    }
    for (int k = 0; k < K; ++k) {
        c.pairs[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] =
            sizes[static_cast<std::size_t>(k)] * (sizes[static_cast<std::size_t>(k)] - 1) / 2;
        for (int l = k + 1; l < K; ++l)
            c.pairs[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                sizes[static_cast<std::size_t>(k)] * sizes[static_cast<std::size_t>(l)];
    }
    // mirror for convenience
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < k; ++l) {
            c.edges[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                c.edges[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
            c.pairs[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                c.pairs[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
        }
    }
    return c;
}

double sbm_full_loglik(const Graph& g, const std::vector<int>& z, const std::vector<std::vector<double>>& B) {
    int K = static_cast<int>(B.size());
    BlockPairCounts c = count_block_pairs(g, z, K);
    double ll = 0.0;
    for (int k = 0; k < K; ++k) {
        for (int l = k; l < K; ++l) {
            ll += bernoulli_block_ll(c.edges[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)],
                                     c.pairs[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)],
                                     clamp_rate(B[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]));
        }
    }
    return ll;
}

double sbm_full_loglik(const Graph& g, const std::vector<int>& z, double a, double b) {
    BlockPairCounts c = count_block_pairs(g, z, 2);
    int aw = c.edges[0][0] + c.edges[1][1];
    int nw = c.pairs[0][0] + c.pairs[1][1];
    int ab = c.edges[0][1];
    int nb = c.pairs[0][1];
    return bernoulli_block_ll(aw, nw, clamp_rate(a)) + bernoulli_block_ll(ab, nb, clamp_rate(b));
}

double sbm_exact_log_marginal(const Graph& g, const std::vector<int>& z, int K) {
    BlockPairCounts c = count_block_pairs(g, z, K);
    double lm = 0.0;
    for (int k = 0; k < K; ++k) {
        for (int l = k; l < K; ++l) {
            int e = c.edges[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
            int p = c.pairs[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
            lm += lbeta(1.0 + e, 1.0 + p - e);  // Beta(1,1) prior has unit normalizer
        }
    }
    return lm;
}

std::vector<double> sbm_prior_loglik_trace(const Graph& g, const std::vector<int>& z, int K, int n_draws, Rng& rng) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_draws));
    std::vector<std::vector<double>> B(static_cast<std::size_t>(K), std::vector<double>(static_cast<std::size_t>(K)));
    for (int l = 0; l < n_draws; ++l) {
        for (int k = 0; k < K; ++k) {
            for (int j = k; j < K; ++j) {
                double p = rng.uniform();
                B[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = p;
                B[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = p;
            }
        }
        out.push_back(sbm_full_loglik(g, z, B));
    }
    return out;
}

std::vector<double> sbm_label_log_weights(const Graph& g, const std::vector<int>& z, int i,
                                          const std::vector<std::vector<double>>& B,
                                          const std::vector<double>& log_pi) {
    int K = static_cast<int>(B.size());
    std::vector<int> sizes(static_cast<std::size_t>(K), 0);
    for (int v = 0; v < g.n(); ++v) ++sizes[static_cast<std::size_t>(z[static_cast<std::size_t>(v)])];
    std::vector<int> nbr(static_cast<std::size_t>(K), 0);
    for (int w : g.neighbors(i)) ++nbr[static_cast<std::size_t>(z[static_cast<std::size_t>(w)])];

    std::vector<double> out(static_cast<std::size_t>(K), 0.0);
    for (int k = 0; k < K; ++k) {
        double w = log_pi[static_cast<std::size_t>(k)];
        for (int l = 0; l < K; ++l) {
            int others = sizes[static_cast<std::size_t>(l)] - (z[static_cast<std::size_t>(i)] == l ? 1 : 0);
            int e = nbr[static_cast<std::size_t>(l)];
            double rate = clamp_rate(B[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]);
            w += e * std::log(rate) + (others - e) * std::log1p(-rate);
        }
        out[static_cast<std::size_t>(k)] = w;
    }
    return out;
}

namespace {

// Restricted two-block Gibbs chain for the split test.
class SbmChain final : public Chain {
public:
    SbmChain(const Graph& g, bool separated, double threshold, SbmPriors priors, std::uint64_t seed)
        : g_(g), separated_(separated), threshold_(threshold), priors_(priors), rng_(seed) {
        z_.resize(static_cast<std::size_t>(g_.n()));
        for (int v = 0; v < g_.n(); ++v) z_[static_cast<std::size_t>(v)] = rng_.bernoulli(0.5) ? 1 : 0;
        rates_ = init_rate_pair(separated_, threshold_);
        pi_ = {0.5, 0.5};
        order_.resize(static_cast<std::size_t>(g_.n()));
        std::iota(order_.begin(), order_.end(), 0);
    }

    void run(int sweeps, int burn_in, int thin, PosteriorTrace& out) override {
        for (int s = 0; s < burn_in; ++s) sweep();
        for (int s = 0; s < sweeps; ++s) {
            sweep();
            if (s % thin != 0) continue;
            store(out);
        }
    }

private:
    struct PairCounts {
        int aw = 0, nw = 0, ab = 0, nb = 0;
    };

    PairCounts tally() const {
        PairCounts c;
        int n1 = 0;
        for (int v = 0; v < g_.n(); ++v) n1 += z_[static_cast<std::size_t>(v)];
        int n0 = g_.n() - n1;
        c.nw = n0 * (n0 - 1) / 2 + n1 * (n1 - 1) / 2;
        c.nb = n0 * n1;
        for (int v = 0; v < g_.n(); ++v) {
            for (int w : g_.neighbors(v)) {
                if (w <= v) continue;
                if (z_[static_cast<std::size_t>(v)] == z_[static_cast<std::size_t>(w)])
                    ++c.aw;
                else
                    ++c.ab;
            }
        }
        return c;
    }

    void sweep() {
        int n1 = 0;
        for (int v = 0; v < g_.n(); ++v) n1 += z_[static_cast<std::size_t>(v)];
        int n0 = g_.n() - n1;

        pi_ = rng_.dirichlet({priors_.gamma + n0, priors_.gamma + n1});

        PairCounts c = tally();
        if (!separated_ && threshold_ == 0.0) {
            double p = clamp_rate(rng_.beta(1.0 + c.aw + c.ab, 1.0 + (c.nw - c.aw) + (c.nb - c.ab)));
            rates_.a = rates_.b = p;
        } else {
            rates_ = draw_rate_pair(rng_, separated_, threshold_, 1.0 + c.aw, 1.0 + c.nw - c.aw, 1.0 + c.ab,
                                    1.0 + c.nb - c.ab, rates_);
            rates_.a = clamp_rate(rates_.a);
            rates_.b = clamp_rate(rates_.b);
        }

        update_labels(n0, n1);
    }

    void update_labels(int n0, int n1) {
        double la = std::log(rates_.a), l1a = std::log1p(-rates_.a);
        double lb = std::log(rates_.b), l1b = std::log1p(-rates_.b);
        double lp0 = std::log(std::max(pi_[0], 1e-300));
        double lp1 = std::log(std::max(pi_[1], 1e-300));
        int sizes[2] = {n0, n1};

        rng_.shuffle(order_);
        std::vector<double> w(2);
        for (int i : order_) {
            int zi = z_[static_cast<std::size_t>(i)];
            int nbr[2] = {0, 0};
            for (int j : g_.neighbors(i)) ++nbr[z_[static_cast<std::size_t>(j)]];
            int m0 = sizes[0] - (zi == 0 ? 1 : 0);
            int m1 = sizes[1] - (zi == 1 ? 1 : 0);
            // assigned to 0: same-block pairs with the m0 others, cross with m1
            w[0] = lp0 + nbr[0] * la + (m0 - nbr[0]) * l1a + nbr[1] * lb + (m1 - nbr[1]) * l1b;
            w[1] = lp1 + nbr[1] * la + (m1 - nbr[1]) * l1a + nbr[0] * lb + (m0 - nbr[0]) * l1b;
            int znew = rng_.categorical_log(w);
            if (znew != zi) {
                --sizes[zi];
                ++sizes[znew];
                z_[static_cast<std::size_t>(i)] = znew;
            }
        }
    }

    void store(PosteriorTrace& out) {
        PairCounts c = tally();
        double ll = bernoulli_block_ll(c.aw, c.nw, rates_.a) + bernoulli_block_ll(c.ab, c.nb, rates_.b);
        std::vector<int> labels = z_;
        if (reference_.empty()) {
            reference_ = labels;
        } else {
            int agree = 0;
            for (std::size_t v = 0; v < labels.size(); ++v) agree += labels[v] == reference_[v];
            if (2 * agree < static_cast<int>(labels.size()))
                for (int& zv : labels) zv = 1 - zv;
        }
        out.loglik.push_back(ll);
        out.labels.push_back(std::move(labels));
    }

    const Graph& g_;
    bool separated_;
    double threshold_;
    SbmPriors priors_;
    Rng rng_;
    std::vector<int> z_;
    RatePair rates_;
    std::vector<double> pi_;
    std::vector<int> order_;
    std::vector<int> reference_;
};

class SbmDriver final : public BipartitionDriver {
public:
    SbmDriver(Graph g, double threshold, SbmPriors priors)
        : g_(std::move(g)), threshold_(threshold), priors_(priors) {}

    int size() const override { return g_.n(); }
    bool degenerate() const override { return g_.m() == 0; }
    const std::vector<std::string>& unit_ids() const override { return g_.ids(); }

    std::unique_ptr<Chain> make_chain(bool separated, std::uint64_t seed) const override {
        return std::make_unique<SbmChain>(g_, separated, threshold_, priors_, seed);
    }

    std::unique_ptr<BipartitionDriver> restrict_to(const std::vector<int>& members) const override {
        return std::make_unique<SbmDriver>(g_.induced(members), threshold_, priors_);
    }

private:
    Graph g_;
    double threshold_;
    SbmPriors priors_;
};

}  // namespace

std::unique_ptr<BipartitionDriver> make_sbm_driver(const Graph& g, double threshold, SbmPriors priors) {
    if (threshold < 0.0 || threshold >= 1.0) throw std::invalid_argument("sbm threshold must lie in [0, 1)");
    return std::make_unique<SbmDriver>(g, threshold, priors);
}

SbmFit fit_sbm_k(const Graph& g, int K, const McmcBudget& budget, std::uint64_t seed, SbmPriors priors) {
    if (K < 1) throw std::invalid_argument("fit_sbm_k: K must be positive");
    SbmFit fit;
    const int n = g.n();
    std::vector<int> reference;

    for (int chain = 0; chain < budget.chains; ++chain) {
        Rng rng(mix_seed(seed, 0x5b, static_cast<std::uint64_t>(chain)));
        std::vector<int> z(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) z[static_cast<std::size_t>(v)] = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(K)));
        std::vector<std::vector<double>> B(static_cast<std::size_t>(K),
                                           std::vector<double>(static_cast<std::size_t>(K), 0.5));
        std::vector<double> pi(static_cast<std::size_t>(K), 1.0 / K);
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);

        auto sweep = [&]() {
            std::vector<int> sizes(static_cast<std::size_t>(K), 0);
            for (int v = 0; v < n; ++v) ++sizes[static_cast<std::size_t>(z[static_cast<std::size_t>(v)])];
            std::vector<double> alpha(static_cast<std::size_t>(K));
            for (int k = 0; k < K; ++k) alpha[static_cast<std::size_t>(k)] = priors.gamma + sizes[static_cast<std::size_t>(k)];
            pi = rng.dirichlet(alpha);

            BlockPairCounts c = count_block_pairs(g, z, K);
            for (int k = 0; k < K; ++k) {
                for (int l = k; l < K; ++l) {
                    int e = c.edges[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
                    int p = c.pairs[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
                    double rate = clamp_rate(rng.beta(1.0 + e, 1.0 + p - e));
                    B[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = rate;
                    B[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] = rate;
                }
            }

            std::vector<std::vector<double>> logB(static_cast<std::size_t>(K),
                                                  std::vector<double>(static_cast<std::size_t>(K)));
            std::vector<std::vector<double>> log1mB = logB;
            for (int k = 0; k < K; ++k) {
                for (int l = 0; l < K; ++l) {
                    logB[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                        std::log(B[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]);
                    log1mB[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                        std::log1p(-B[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]);
                }
            }
            std::vector<double> log_pi(static_cast<std::size_t>(K));
            for (int k = 0; k < K; ++k) log_pi[static_cast<std::size_t>(k)] = std::log(std::max(pi[static_cast<std::size_t>(k)], 1e-300));

            rng.shuffle(order);
            std::vector<double> w(static_cast<std::size_t>(K));
            std::vector<int> nbr(static_cast<std::size_t>(K));
            for (int i : order) {
                int zi = z[static_cast<std::size_t>(i)];
                std::fill(nbr.begin(), nbr.end(), 0);
                for (int j : g.neighbors(i)) ++nbr[static_cast<std::size_t>(z[static_cast<std::size_t>(j)])];
                for (int k = 0; k < K; ++k) {
                    double lw = log_pi[static_cast<std::size_t>(k)];
                    for (int l = 0; l < K; ++l) {
                        int others = sizes[static_cast<std::size_t>(l)] - (zi == l ? 1 : 0);
                        int e = nbr[static_cast<std::size_t>(l)];
                        lw += e * logB[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] +
                              (others - e) * log1mB[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
                    }
                    w[static_cast<std::size_t>(k)] = lw;
                }
                int znew = rng.categorical_log(w);
                if (znew != zi) {
                    --sizes[static_cast<std::size_t>(zi)];
                    ++sizes[static_cast<std::size_t>(znew)];
                    z[static_cast<std::size_t>(i)] = znew;
                }
            }
        };

        for (int s = 0; s < budget.burn_in; ++s) sweep();
        for (int s = 0; s < budget.sweeps; ++s) {
            sweep();
            if (s % budget.thin != 0) continue;

            std::vector<int> labels = z;
            std::vector<double> pi_store = pi;
            std::vector<std::vector<double>> B_store = B;
            if (reference.empty()) {
                reference = labels;
            } else {
                std::vector<int> sigma = best_label_permutation(labels, reference, K);
                apply_permutation(labels, sigma);
                for (int k = 0; k < K; ++k) {
                    pi_store[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])] = pi[static_cast<std::size_t>(k)];
                    for (int l = 0; l < K; ++l)
                        B_store[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])]
                               [static_cast<std::size_t>(sigma[static_cast<std::size_t>(l)])] =
                                   B[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
                }
            }
            std::vector<double> params;
            params.reserve(static_cast<std::size_t>(K + K * (K + 1) / 2));
            for (int k = 0; k < K; ++k) params.push_back(pi_store[static_cast<std::size_t>(k)]);
            for (int k = 0; k < K; ++k)
                for (int l = k; l < K; ++l) params.push_back(B_store[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]);

            fit.trace.loglik.push_back(sbm_full_loglik(g, labels, B_store));
            fit.trace.labels.push_back(std::move(labels));
            fit.trace.params.push_back(std::move(params));
        }
    }

    // posterior means of the aligned continuous parameters, labels at the mode
    const int n_draws = fit.trace.size();
    std::vector<double> mean_params(fit.trace.params.front().size(), 0.0);
    for (const auto& p : fit.trace.params)
        for (std::size_t j = 0; j < p.size(); ++j) mean_params[j] += p[j] / n_draws;
    std::vector<std::vector<double>> B_mean(static_cast<std::size_t>(K),
                                            std::vector<double>(static_cast<std::size_t>(K)));
    std::size_t idx = static_cast<std::size_t>(K);
    for (int k = 0; k < K; ++k) {
        for (int l = k; l < K; ++l) {
            B_mean[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = mean_params[idx];
            B_mean[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)] = mean_params[idx];
            ++idx;
        }
    }
    fit.map_labels = modal_labels(fit.trace, K);
    fit.dic = dic(fit.trace.loglik, sbm_full_loglik(g, fit.map_labels, B_mean));
    return fit;
}

}  // namespace recpart
