#include "recpart/ee.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "recpart/mathutil.hpp"
#include "recpart/spaces.hpp"
#include "recpart/trace.hpp"

namespace recpart {

int PyUrn::sample_snapshot(Rng& rng) const {
    double u = rng.uniform() * (theta_ + total_);
    double acc = 0.0;
    for (std::size_t v = 0; v < counts_.size(); ++v) {
        acc += counts_[v] - alpha_;
        if (u < acc) return static_cast<int>(v);
    }
    return -1;
}

double ee_collapsed_loglik(int n_nodes, const std::vector<Interaction>& events, const std::vector<int>& z,
                           const std::vector<double>& pi, const std::vector<std::vector<double>>& B, double alpha,
                           double theta) {
    const int K = static_cast<int>(pi.size());
    std::vector<double> log_pi(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) log_pi[static_cast<std::size_t>(k)] = std::log(std::max(pi[static_cast<std::size_t>(k)], 1e-300));
    std::vector<std::vector<double>> log_B(static_cast<std::size_t>(K), std::vector<double>(static_cast<std::size_t>(K)));
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < K; ++l)
            log_B[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] =
                std::log(std::max(B[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)], 1e-300));

    double ll = 0.0;
    std::vector<int> D(static_cast<std::size_t>(n_nodes), 0);
    for (const auto& e : events) {
        ll += log_pi[static_cast<std::size_t>(z[static_cast<std::size_t>(e.sender)])] +
              log_B[static_cast<std::size_t>(z[static_cast<std::size_t>(e.sender)])]
                   [static_cast<std::size_t>(z[static_cast<std::size_t>(e.receiver)])];
        ++D[static_cast<std::size_t>(e.sender)];
        ++D[static_cast<std::size_t>(e.receiver)];
    }

    std::vector<int> n_blk(static_cast<std::size_t>(K), 0);   // distinct appearing nodes
    std::vector<long> N_blk(static_cast<std::size_t>(K), 0);  // total appearances
    for (int v = 0; v < n_nodes; ++v) {
        if (D[static_cast<std::size_t>(v)] == 0) continue;
        int k = z[static_cast<std::size_t>(v)];
        ++n_blk[static_cast<std::size_t>(k)];
        N_blk[static_cast<std::size_t>(k)] += D[static_cast<std::size_t>(v)];
        // repeat factors of this node: prod_{j=1}^{D-1} (j - alpha)
        ll += std::lgamma(D[static_cast<std::size_t>(v)] - alpha) - std::lgamma(1.0 - alpha);
    }
    for (int k = 0; k < K; ++k) {
        for (int i = 1; i < n_blk[static_cast<std::size_t>(k)]; ++i) ll += std::log(theta + i * alpha);
        if (N_blk[static_cast<std::size_t>(k)] >= 2)
            ll -= std::lgamma(theta + static_cast<double>(N_blk[static_cast<std::size_t>(k)])) - std::lgamma(theta + 1.0);
    }
    return ll;
}

namespace {

struct EeData {
    int n = 0;
    std::vector<Interaction> events;
    std::vector<int> D;           // appearances per node
    std::vector<int> send_count;  // events with the node as sender
    std::vector<int> self_count;  // node-to-self events
    std::vector<std::vector<int>> partners;  // other endpoint of each non-self event, with multiplicity
    long N_total = 0;
};

EeData build_ee_data(int n, std::vector<Interaction> events) {
    EeData d;
    d.n = n;
    d.events = std::move(events);
    d.D.assign(static_cast<std::size_t>(n), 0);
    d.send_count.assign(static_cast<std::size_t>(n), 0);
    d.self_count.assign(static_cast<std::size_t>(n), 0);
    d.partners.assign(static_cast<std::size_t>(n), {});
    for (const auto& e : d.events) {
        ++d.D[static_cast<std::size_t>(e.sender)];
        ++d.D[static_cast<std::size_t>(e.receiver)];
        ++d.send_count[static_cast<std::size_t>(e.sender)];
        if (e.sender == e.receiver) {
            ++d.self_count[static_cast<std::size_t>(e.sender)];
        } else {
            d.partners[static_cast<std::size_t>(e.sender)].push_back(e.receiver);
            d.partners[static_cast<std::size_t>(e.receiver)].push_back(e.sender);
        }
        d.N_total += 2;
    }
    return d;
}

}  // namespace

std::vector<double> ee_label_log_weights(int n_nodes, const std::vector<Interaction>& events, const std::vector<int>& z,
                                         int i, const std::vector<double>& pi, double a, double alpha, double theta) {
    EeData d = build_ee_data(n_nodes, events);
    const double la = std::log(a), l1a = std::log1p(-a);
    int Di = d.D[static_cast<std::size_t>(i)];

    int n_excl[2] = {0, 0};
    long N_excl[2] = {0, 0};
    for (int v = 0; v < n_nodes; ++v) {
        if (v == i || d.D[static_cast<std::size_t>(v)] == 0) continue;
        ++n_excl[z[static_cast<std::size_t>(v)]];
        N_excl[z[static_cast<std::size_t>(v)]] += d.D[static_cast<std::size_t>(v)];
    }
    int c[2] = {0, 0};
    for (int j : d.partners[static_cast<std::size_t>(i)]) ++c[z[static_cast<std::size_t>(j)]];

    std::vector<double> w(2, 0.0);
    for (int k = 0; k < 2; ++k) {
        double lw = (1.0 + d.send_count[static_cast<std::size_t>(i)]) *
                    std::log(std::max(pi[static_cast<std::size_t>(k)], 1e-300));
        lw += (c[k] + d.self_count[static_cast<std::size_t>(i)]) * la + c[1 - k] * l1a;
        if (Di > 0) {
            if (n_excl[k] >= 1) lw += std::log(theta + n_excl[k] * alpha);
            lw += std::lgamma(Di - alpha) - std::lgamma(1.0 - alpha);
            // appearance normalizer extends from N_excl to N_excl + Di
            lw -= std::lgamma(theta + static_cast<double>(N_excl[k]) + Di) -
                  std::lgamma(theta + std::max<double>(1.0, static_cast<double>(N_excl[k])));
        }
        w[static_cast<std::size_t>(k)] = lw;
    }
    return w;
}

namespace {

class EeChain final : public Chain {
public:
    EeChain(const EeData& data, bool separated, double threshold, EePriors priors, std::uint64_t seed)
        : d_(data), separated_(separated), threshold_(threshold), priors_(priors), rng_(seed) {
        z_.resize(static_cast<std::size_t>(d_.n));
        for (int v = 0; v < d_.n; ++v) z_[static_cast<std::size_t>(v)] = rng_.bernoulli(0.5) ? 1 : 0;
        alpha_ = 0.5;
        theta_ = 1.0;
        a_ = separated_ ? 0.5 * (1.0 + threshold_) : 0.5 * (0.5 + threshold_);
        pi_ = {0.5, 0.5};
        recount_blocks();
        order_.resize(static_cast<std::size_t>(d_.n));
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
    void recount_blocks() {
        n_blk_[0] = n_blk_[1] = 0;
        N_blk_[0] = N_blk_[1] = 0;
        for (int v = 0; v < d_.n; ++v) {
            if (d_.D[static_cast<std::size_t>(v)] == 0) continue;
            int k = z_[static_cast<std::size_t>(v)];
            ++n_blk_[k];
            N_blk_[k] += d_.D[static_cast<std::size_t>(v)];
        }
    }

    void rebuild_tables() {
        cumnorm_.resize(static_cast<std::size_t>(d_.N_total) + 1);
        cumnorm_[0] = 0.0;
        if (d_.N_total >= 1) cumnorm_[1] = 0.0;
        for (long j = 2; j <= d_.N_total; ++j)
            cumnorm_[static_cast<std::size_t>(j)] = cumnorm_[static_cast<std::size_t>(j - 1)] + std::log(theta_ + static_cast<double>(j - 1));
        lognew_.resize(static_cast<std::size_t>(d_.n) + 1);
        lognew_[0] = 0.0;
        for (int i = 1; i <= d_.n; ++i) lognew_[static_cast<std::size_t>(i)] = std::log(theta_ + i * alpha_);
    }

    void sweep() {
        rebuild_tables();
        update_labels();
        update_urn_params();
        update_a();
        update_pi();
    }

    void update_labels() {
        const double la = std::log(a_), l1a = std::log1p(-a_);
        const double lp[2] = {std::log(std::max(pi_[0], 1e-300)), std::log(std::max(pi_[1], 1e-300))};
        rng_.shuffle(order_);
        std::vector<double> w(2);
        for (int i : order_) {
            int zi = z_[static_cast<std::size_t>(i)];
            int Di = d_.D[static_cast<std::size_t>(i)];
            int c[2] = {0, 0};
            for (int j : d_.partners[static_cast<std::size_t>(i)]) ++c[z_[static_cast<std::size_t>(j)]];
            for (int k = 0; k < 2; ++k) {
                double lw = (1.0 + d_.send_count[static_cast<std::size_t>(i)]) * lp[k];
                lw += (c[k] + d_.self_count[static_cast<std::size_t>(i)]) * la + c[1 - k] * l1a;
                if (Di > 0) {
                    int ne = n_blk_[k] - (zi == k ? 1 : 0);
                    long Ne = N_blk_[k] - (zi == k ? Di : 0);
                    lw += lognew_[static_cast<std::size_t>(ne)];
                    lw -= cumnorm_[static_cast<std::size_t>(Ne + Di)] - cumnorm_[static_cast<std::size_t>(Ne)];
                }
                w[static_cast<std::size_t>(k)] = lw;
            }
            int znew = rng_.categorical_log(w);
            if (znew != zi) {
                z_[static_cast<std::size_t>(i)] = znew;
                if (Di > 0) {
                    --n_blk_[zi];
                    ++n_blk_[znew];
                    N_blk_[zi] -= Di;
                    N_blk_[znew] += Di;
                }
            }
        }
    }

    void update_urn_params() {
        double sum_y = 0.0, sum_1my = 0.0, sum_1mz = 0.0, sum_log_x = 0.0;
        for (int k = 0; k < 2; ++k) {
            if (N_blk_[k] >= 2) {
                double x = std::max(rng_.beta(theta_ + 1.0, static_cast<double>(N_blk_[k] - 1)), 1e-300);
                sum_log_x += std::log(x);
            }
            for (int i = 1; i < n_blk_[k]; ++i) {
                bool y = rng_.bernoulli(theta_ / (theta_ + i * alpha_));
                sum_y += y ? 1.0 : 0.0;
                sum_1my += y ? 0.0 : 1.0;
            }
        }
        for (int v = 0; v < d_.n; ++v) {
            for (int j = 1; j < d_.D[static_cast<std::size_t>(v)]; ++j) {
                bool zb = rng_.bernoulli((j - 1.0) / (j - alpha_));
                sum_1mz += zb ? 0.0 : 1.0;
            }
        }
        theta_ = std::max(rng_.gamma(priors_.theta_shape + sum_y, priors_.theta_rate - sum_log_x), 1e-9);
        alpha_ = std::min(std::max(rng_.beta(priors_.alpha_a + sum_1my, priors_.alpha_b + sum_1mz), 1e-9), 1.0 - 1e-9);
    }

    void update_a() {
        int same = 0;
        for (const auto& e : d_.events)
            same += z_[static_cast<std::size_t>(e.sender)] == z_[static_cast<std::size_t>(e.receiver)];
        int diff = static_cast<int>(d_.events.size()) - same;
        a_ = draw_diag_rate(rng_, separated_, threshold_, 1.0 + same, 1.0 + diff);
        a_ = std::min(std::max(a_, 0.5), 1.0 - 1e-12);
    }

    void update_pi() {
        double cnt[2] = {0.0, 0.0};
        for (int v = 0; v < d_.n; ++v) cnt[z_[static_cast<std::size_t>(v)]] += 1.0;
        for (const auto& e : d_.events) cnt[z_[static_cast<std::size_t>(e.sender)]] += 1.0;
        pi_ = rng_.dirichlet({priors_.gamma + cnt[0], priors_.gamma + cnt[1]});
    }

    void store(PosteriorTrace& out) {
        std::vector<std::vector<double>> B = {{a_, 1.0 - a_}, {1.0 - a_, a_}};
        double ll = ee_collapsed_loglik(d_.n, d_.events, z_, pi_, B, alpha_, theta_);
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

    const EeData& d_;
    bool separated_;
    double threshold_;
    EePriors priors_;
    Rng rng_;
    std::vector<int> z_;
    double alpha_, theta_, a_;
    std::vector<double> pi_;
    int n_blk_[2] = {0, 0};
    long N_blk_[2] = {0, 0};
    std::vector<double> cumnorm_;
    std::vector<double> lognew_;
    std::vector<int> order_;
    std::vector<int> reference_;
};

class EeDriver final : public BipartitionDriver {
public:
    EeDriver(std::vector<std::string> ids, std::vector<Interaction> events, double threshold, EePriors priors)
        : ids_(std::move(ids)),
          data_(build_ee_data(static_cast<int>(ids_.size()), std::move(events))),
          threshold_(threshold),
          priors_(priors) {}

    int size() const override { return static_cast<int>(ids_.size()); }
    bool degenerate() const override { return data_.events.empty(); }
    const std::vector<std::string>& unit_ids() const override { return ids_; }

    std::unique_ptr<Chain> make_chain(bool separated, std::uint64_t seed) const override {
        return std::make_unique<EeChain>(data_, separated, threshold_, priors_, seed);
    }

    std::unique_ptr<BipartitionDriver> restrict_to(const std::vector<int>& members) const override {
        std::vector<int> local(ids_.size(), -1);
        std::vector<std::string> sub_ids;
        sub_ids.reserve(members.size());
        for (std::size_t j = 0; j < members.size(); ++j) {
            local[static_cast<std::size_t>(members[j])] = static_cast<int>(j);
            sub_ids.push_back(ids_[static_cast<std::size_t>(members[j])]);
        }
        std::vector<Interaction> sub_events;
        for (const auto& e : data_.events) {
            int s = local[static_cast<std::size_t>(e.sender)];
            int r = local[static_cast<std::size_t>(e.receiver)];
            if (s >= 0 && r >= 0) sub_events.push_back({s, r});
        }
        return std::make_unique<EeDriver>(std::move(sub_ids), std::move(sub_events), threshold_, priors_);
    }

private:
    std::vector<std::string> ids_;
    EeData data_;
    double threshold_;
    EePriors priors_;
};

}  // namespace

std::unique_ptr<BipartitionDriver> make_ee_driver(const InteractionSequence& seq, double threshold, EePriors priors) {
    if (threshold < 0.5 || threshold >= 1.0)
        throw std::invalid_argument("interaction-model threshold must lie in [1/2, 1)");
    return std::make_unique<EeDriver>(seq.ids(), seq.events(), threshold, priors);
}

}  // namespace recpart
