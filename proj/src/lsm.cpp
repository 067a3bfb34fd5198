#include "recpart/lsm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "recpart/mathutil.hpp"
#include "recpart/spaces.hpp"
#include "recpart/trace.hpp"

namespace recpart {

namespace {

double pos_dist(const std::vector<double>& pos, int dim, int i, int j) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a)
        s += sq(pos[static_cast<std::size_t>(i * dim + a)] - pos[static_cast<std::size_t>(j * dim + a)]);
    return std::sqrt(s);
}

double log_normal_sq(double dist_sq, int dim, double sigma_sq) {
    return -0.5 * dim * std::log(2.0 * M_PI * sigma_sq) - 0.5 * dist_sq / sigma_sq;
}

}  // namespace

double lsm_edge_loglik(const Graph& g, const std::vector<double>& pos, int dim, double beta) {
    double ll = 0.0;
    for (int i = 0; i < g.n(); ++i) {
        for (int j = i + 1; j < g.n(); ++j) {
            double eta = -beta * pos_dist(pos, dim, i, j);
            ll += (g.has_edge(i, j) ? eta : 0.0) - log1pexp(eta);
        }
    }
    return ll;
}

std::vector<double> lsm_responsibilities(const std::vector<double>& point, const std::vector<std::vector<double>>& mus,
                                         const std::vector<double>& sigma_sqs, const std::vector<double>& lambdas) {
    const int K = static_cast<int>(mus.size());
    const int dim = static_cast<int>(point.size());
    std::vector<double> lw(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        double dist_sq = 0.0;
        for (int a = 0; a < dim; ++a) dist_sq += sq(point[static_cast<std::size_t>(a)] - mus[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
        lw[static_cast<std::size_t>(k)] = std::log(std::max(lambdas[static_cast<std::size_t>(k)], 1e-300)) +
                                          log_normal_sq(dist_sq, dim, sigma_sqs[static_cast<std::size_t>(k)]);
    }
    double norm = log_sum_exp(lw);
    std::vector<double> out(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) out[static_cast<std::size_t>(k)] = std::exp(lw[static_cast<std::size_t>(k)] - norm);
    return out;
}

void lsm_center_posterior(const std::vector<double>& pos, const std::vector<int>& labels, int k, int dim,
                          double sigma_sq, double omega_sq, std::vector<double>& mean_out, double& var_out) {
    int n_k = 0;
    mean_out.assign(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != k) continue;
        ++n_k;
        for (int a = 0; a < dim; ++a) mean_out[static_cast<std::size_t>(a)] += pos[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)];
    }
    double prec = n_k / sigma_sq + 1.0 / omega_sq;
    var_out = 1.0 / prec;
    for (int a = 0; a < dim; ++a) mean_out[static_cast<std::size_t>(a)] *= var_out / sigma_sq;
}

namespace {

class LsmChain final : public Chain {
public:
    LsmChain(const Graph& g, bool separated, double threshold, LsmPriors priors, std::uint64_t seed)
        : g_(g), separated_(separated), threshold_(threshold), pr_(priors), rng_(seed), dim_(priors.dim) {
        const int n = g_.n();
        beta_ = pr_.beta_fixed;
        sigma_sq_ = {pr_.sigma0_sq, pr_.sigma0_sq};
        lambda_ = {0.5, 0.5};
        mu_.assign(2, std::vector<double>(static_cast<std::size_t>(dim_), 0.0));
        double off = separated_ ? std::max(1.0, threshold_) : 0.45 * threshold_;
        mu_[0][0] = off;
        mu_[1][0] = -off;
        c_.resize(static_cast<std::size_t>(n));
        pos_.resize(static_cast<std::size_t>(n * dim_));
        double sd = std::sqrt(pr_.sigma0_sq);
        for (int i = 0; i < n; ++i) {
            c_[static_cast<std::size_t>(i)] = rng_.bernoulli(0.5) ? 1 : 0;
            for (int a = 0; a < dim_; ++a)
                pos_[static_cast<std::size_t>(i * dim_ + a)] =
                    rng_.normal(mu_[static_cast<std::size_t>(c_[static_cast<std::size_t>(i)])][static_cast<std::size_t>(a)], sd);
        }
        order_.resize(static_cast<std::size_t>(n));
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
    void sweep() {
        update_lambda();
        update_centers();
        update_labels();
        update_positions();
    }

    void update_lambda() {
        double cnt[2] = {0.0, 0.0};
        for (int ci : c_) cnt[ci] += 1.0;
        lambda_ = rng_.dirichlet({pr_.nu + cnt[0], pr_.nu + cnt[1]});
    }

    void update_centers() {
        std::vector<double> m1, m2;
        double v1 = 0.0, v2 = 0.0;
        lsm_center_posterior(pos_, c_, 0, dim_, sigma_sq_[0], pr_.omega_sq, m1, v1);
        lsm_center_posterior(pos_, c_, 1, dim_, sigma_sq_[1], pr_.omega_sq, m2, v2);
        draw_center_pair(rng_, separated_, threshold_, mu_[0], mu_[1], m1, v1, m2, v2);
    }

    void update_labels() {
        double ls[2] = {std::log(std::max(lambda_[0], 1e-300)), std::log(std::max(lambda_[1], 1e-300))};
        std::vector<double> w(2);
        for (int i = 0; i < g_.n(); ++i) {
            for (int k = 0; k < 2; ++k) {
                double dist_sq = 0.0;
                for (int a = 0; a < dim_; ++a)
                    dist_sq += sq(pos_[static_cast<std::size_t>(i * dim_ + a)] - mu_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
                w[static_cast<std::size_t>(k)] = ls[k] + log_normal_sq(dist_sq, dim_, sigma_sq_[static_cast<std::size_t>(k)]);
            }
            c_[static_cast<std::size_t>(i)] = rng_.categorical_log(w);
        }
    }

    void update_positions() {
        rng_.shuffle(order_);
        std::vector<double> prop(static_cast<std::size_t>(dim_));
        for (int i : order_) {
            for (int a = 0; a < dim_; ++a)
                prop[static_cast<std::size_t>(a)] = pos_[static_cast<std::size_t>(i * dim_ + a)] + rng_.normal(0.0, pr_.step_z);
            double delta = 0.0;
            for (int j = 0; j < g_.n(); ++j) {
                if (j == i) continue;
                double d_old = pos_dist(pos_, dim_, i, j);
                double d_new = 0.0;
                for (int a = 0; a < dim_; ++a)
                    d_new += sq(prop[static_cast<std::size_t>(a)] - pos_[static_cast<std::size_t>(j * dim_ + a)]);
                d_new = std::sqrt(d_new);
                double eta_old = -beta_ * d_old, eta_new = -beta_ * d_new;
                bool edge = g_.has_edge(i, j);
                delta += (edge ? eta_new - eta_old : 0.0) - (log1pexp(eta_new) - log1pexp(eta_old));
            }
            int k = c_[static_cast<std::size_t>(i)];
            double ds_old = 0.0, ds_new = 0.0;
            for (int a = 0; a < dim_; ++a) {
                ds_old += sq(pos_[static_cast<std::size_t>(i * dim_ + a)] - mu_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
                ds_new += sq(prop[static_cast<std::size_t>(a)] - mu_[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
            }
            delta += -0.5 * (ds_new - ds_old) / sigma_sq_[static_cast<std::size_t>(k)];
            if (delta >= 0.0 || std::log(std::max(rng_.uniform(), 1e-300)) < delta) {
                for (int a = 0; a < dim_; ++a) pos_[static_cast<std::size_t>(i * dim_ + a)] = prop[static_cast<std::size_t>(a)];
            }
        }
    }

    void store(PosteriorTrace& out) {
        double ll = lsm_edge_loglik(g_, pos_, dim_, beta_);
        std::vector<int> labels = c_;
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
    LsmPriors pr_;
    Rng rng_;
    int dim_;
    double beta_;
    std::vector<double> sigma_sq_;
    std::vector<double> lambda_;
    std::vector<std::vector<double>> mu_;
    std::vector<int> c_;
    std::vector<double> pos_;
    std::vector<int> order_;
    std::vector<int> reference_;
};

class LsmDriver final : public BipartitionDriver {
public:
    LsmDriver(Graph g, double threshold, LsmPriors priors)
        : g_(std::move(g)), threshold_(threshold), priors_(priors) {}

    int size() const override { return g_.n(); }
    bool degenerate() const override { return g_.m() == 0; }
    const std::vector<std::string>& unit_ids() const override { return g_.ids(); }

    std::unique_ptr<Chain> make_chain(bool separated, std::uint64_t seed) const override {
        return std::make_unique<LsmChain>(g_, separated, threshold_, priors_, seed);
    }

    std::unique_ptr<BipartitionDriver> restrict_to(const std::vector<int>& members) const override {
        return std::make_unique<LsmDriver>(g_.induced(members), threshold_, priors_);
    }

private:
    Graph g_;
    double threshold_;
    LsmPriors priors_;
};

}  // namespace

std::unique_ptr<BipartitionDriver> make_lsm_driver(const Graph& g, double threshold, LsmPriors priors) {
    if (threshold < 0.0) throw std::invalid_argument("latent-space threshold must be nonnegative");
    return std::make_unique<LsmDriver>(g, threshold, priors);
}

LsmFit fit_lsm_k(const Graph& g, int K, const McmcBudget& budget, std::uint64_t seed, LsmPriors priors) {
    if (K < 1) throw std::invalid_argument("fit_lsm_k: K must be positive");
    const int n = g.n();
    const int dim = priors.dim;
    Rng rng(mix_seed(seed, 0x15, static_cast<std::uint64_t>(K)));

    std::vector<int> c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(K)));
    std::vector<double> pos(static_cast<std::size_t>(n * dim));
    for (double& x : pos) x = rng.normal(0.0, 1.0);
    std::vector<std::vector<double>> mu(static_cast<std::size_t>(K), std::vector<double>(static_cast<std::size_t>(dim), 0.0));
    std::vector<double> sigma_sq(static_cast<std::size_t>(K), priors.sigma0_sq);
    std::vector<double> lambda(static_cast<std::size_t>(K), 1.0 / K);
    double beta = std::max(priors.beta_mean, 0.1);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);

    LsmFit fit;
    std::vector<int> reference;

    auto sweep = [&]() {
        // shares
        std::vector<double> alpha(static_cast<std::size_t>(K), priors.nu);
        for (int ci : c) alpha[static_cast<std::size_t>(ci)] += 1.0;
        lambda = rng.dirichlet(alpha);

        // centers (unrestricted conjugate) and spreads
        for (int k = 0; k < K; ++k) {
            std::vector<double> m;
            double v = 0.0;
            lsm_center_posterior(pos, c, k, dim, sigma_sq[static_cast<std::size_t>(k)], priors.omega_sq, m, v);
            double sd = std::sqrt(v);
            for (int a = 0; a < dim; ++a) mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)] = rng.normal(m[static_cast<std::size_t>(a)], sd);

            double ssd = 0.0;
            int n_k = 0;
            for (int i = 0; i < n; ++i) {
                if (c[static_cast<std::size_t>(i)] != k) continue;
                ++n_k;
                for (int a = 0; a < dim; ++a)
                    ssd += sq(pos[static_cast<std::size_t>(i * dim + a)] - mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
            }
            sigma_sq[static_cast<std::size_t>(k)] =
                (priors.sigma0_sq + ssd) / std::max(rng.chisq(priors.alpha_df + n_k * dim), 1e-12);
        }

        // labels
        std::vector<double> w(static_cast<std::size_t>(K));
        std::vector<double> point(static_cast<std::size_t>(dim));
        for (int i = 0; i < n; ++i) {
            for (int a = 0; a < dim; ++a) point[static_cast<std::size_t>(a)] = pos[static_cast<std::size_t>(i * dim + a)];
            for (int k = 0; k < K; ++k) {
                double dist_sq = 0.0;
                for (int a = 0; a < dim; ++a) dist_sq += sq(point[static_cast<std::size_t>(a)] - mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
                w[static_cast<std::size_t>(k)] = std::log(std::max(lambda[static_cast<std::size_t>(k)], 1e-300)) +
                                                 log_normal_sq(dist_sq, dim, sigma_sq[static_cast<std::size_t>(k)]);
            }
            c[static_cast<std::size_t>(i)] = rng.categorical_log(w);
        }

        // positions
        rng.shuffle(order);
        std::vector<double> prop(static_cast<std::size_t>(dim));
        for (int i : order) {
            for (int a = 0; a < dim; ++a) prop[static_cast<std::size_t>(a)] = pos[static_cast<std::size_t>(i * dim + a)] + rng.normal(0.0, priors.step_z);
            double delta = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                double d_old = pos_dist(pos, dim, i, j);
                double d_new = 0.0;
                for (int a = 0; a < dim; ++a) d_new += sq(prop[static_cast<std::size_t>(a)] - pos[static_cast<std::size_t>(j * dim + a)]);
                d_new = std::sqrt(d_new);
                bool edge = g.has_edge(i, j);
                delta += (edge ? -beta * (d_new - d_old) : 0.0) - (log1pexp(-beta * d_new) - log1pexp(-beta * d_old));
            }
            int k = c[static_cast<std::size_t>(i)];
            double ds_old = 0.0, ds_new = 0.0;
            for (int a = 0; a < dim; ++a) {
                ds_old += sq(pos[static_cast<std::size_t>(i * dim + a)] - mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
                ds_new += sq(prop[static_cast<std::size_t>(a)] - mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(a)]);
            }
            delta += -0.5 * (ds_new - ds_old) / sigma_sq[static_cast<std::size_t>(k)];
            if (delta >= 0.0 || std::log(std::max(rng.uniform(), 1e-300)) < delta) {
                for (int a = 0; a < dim; ++a) pos[static_cast<std::size_t>(i * dim + a)] = prop[static_cast<std::size_t>(a)];
            }
        }

        // distance coefficient
        double beta_prop = beta + rng.normal(0.0, priors.step_beta);
        if (beta_prop > 0.0) {
            std::vector<double> dists;
            dists.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) dists.push_back(pos_dist(pos, dim, i, j));
            auto ll_at = [&](double b) {
                double ll = 0.0;
                std::size_t idx = 0;
                for (int i = 0; i < n; ++i) {
                    for (int j = i + 1; j < n; ++j) {
                        double eta = -b * dists[idx++];
                        ll += (g.has_edge(i, j) ? eta : 0.0) - log1pexp(eta);
                    }
                }
                return ll;
            };
            double delta = ll_at(beta_prop) - ll_at(beta);
            delta += -0.5 * (sq(beta_prop - priors.beta_mean) - sq(beta - priors.beta_mean)) / priors.beta_var;
            if (delta >= 0.0 || std::log(std::max(rng.uniform(), 1e-300)) < delta) beta = beta_prop;
        }
    };

    for (int s = 0; s < budget.burn_in; ++s) sweep();
    for (int s = 0; s < budget.sweeps; ++s) {
        sweep();
        if (s % budget.thin != 0) continue;

        std::vector<int> labels = c;
        if (reference.empty()) {
            reference = labels;
        } else {
            std::vector<int> sigma = best_label_permutation(labels, reference, K);
            apply_permutation(labels, sigma);
        }
        std::vector<double> params = pos;
        params.push_back(beta);
        fit.trace.loglik.push_back(lsm_edge_loglik(g, pos, dim, beta));
        fit.trace.labels.push_back(std::move(labels));
        fit.trace.params.push_back(std::move(params));
    }

    const int n_draws = fit.trace.size();
    std::vector<double> mean_params(fit.trace.params.front().size(), 0.0);
    for (const auto& p : fit.trace.params)
        for (std::size_t j = 0; j < p.size(); ++j) mean_params[j] += p[j] / n_draws;
    double beta_mean_post = mean_params.back();
    mean_params.pop_back();
    fit.map_labels = modal_labels(fit.trace, K);
    fit.dic = dic(fit.trace.loglik, lsm_edge_loglik(g, mean_params, dim, beta_mean_post));
    return fit;
}

}  // namespace recpart
