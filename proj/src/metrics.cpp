#include "recpart/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace recpart {

double nmi(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("nmi: size mismatch");
    if (a.empty()) throw std::invalid_argument("nmi: empty labelings");
    const double n = static_cast<double>(a.size());

    std::map<int, double> ca, cb;
    std::map<std::pair<int, int>, double> joint;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ca[a[i]] += 1.0;
        cb[b[i]] += 1.0;
        joint[{a[i], b[i]}] += 1.0;
    }

    double ha = 0.0, hb = 0.0, mi = 0.0;
    for (const auto& [k, c] : ca) ha -= c / n * std::log(c / n);
    for (const auto& [k, c] : cb) hb -= c / n * std::log(c / n);
    for (const auto& [kl, c] : joint)
        mi += c / n * std::log(n * c / (ca[kl.first] * cb[kl.second]));

    if (ha == 0.0 && hb == 0.0) return 1.0;  // both trivial: identical partitions
    if (ha == 0.0 || hb == 0.0) return 0.0;
    return 2.0 * mi / (ha + hb);
}

double erm_modularity(const Graph& g, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != g.n()) throw std::invalid_argument("erm_modularity: label size mismatch");
    int K = 0;
    for (int l : labels) K = std::max(K, l + 1);
    std::vector<double> within(static_cast<std::size_t>(K), 0.0);
    std::vector<double> sizes(static_cast<std::size_t>(K), 0.0);
    for (int v = 0; v < g.n(); ++v) ++sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])];
    const double L = 2.0 * g.m();  // ordered edge count
    for (int v = 0; v < g.n(); ++v) {
        for (int w : g.neighbors(v)) {
            if (labels[static_cast<std::size_t>(v)] == labels[static_cast<std::size_t>(w)])
                within[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])] += 1.0;  // counts each edge twice
        }
    }
    double q = 0.0;
    const double n = static_cast<double>(g.n());
    for (int k = 0; k < K; ++k)
        q += within[static_cast<std::size_t>(k)] - (sizes[static_cast<std::size_t>(k)] / n) * (sizes[static_cast<std::size_t>(k)] / n) * L;
    return q;
}

ErmResult erm_bruteforce_max(const Graph& g) {
    const int n = g.n();
    if (n == 0) return {};
    if (n > 14) throw std::invalid_argument("erm_bruteforce_max: graph too large for exhaustive search");

    // restricted growth strings: labels[i] <= 1 + max(labels[0..i-1])
    std::vector<int> labels(static_cast<std::size_t>(n), 0);
    ErmResult best;
    best.labels = labels;
    best.score = erm_modularity(g, labels);

    std::vector<int> maxima(static_cast<std::size_t>(n), 0);
    for (;;) {
        // advance to the next restricted growth string
        int i = n - 1;
        while (i > 0) {
            if (labels[static_cast<std::size_t>(i)] <= maxima[static_cast<std::size_t>(i - 1)]) break;
            --i;
        }
        if (i == 0) break;
        ++labels[static_cast<std::size_t>(i)];
        maxima[static_cast<std::size_t>(i)] = std::max(maxima[static_cast<std::size_t>(i - 1)], labels[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j) {
            labels[static_cast<std::size_t>(j)] = 0;
            maxima[static_cast<std::size_t>(j)] = maxima[static_cast<std::size_t>(j - 1)];
        }
        double q = erm_modularity(g, labels);
        if (q > best.score) {
            best.score = q;
            best.labels = labels;
        }
    }
    return best;
}

SpectralResult spectral_eigengap(const Graph& g, int k_max) {
    SpectralResult res;
    std::vector<int> keep;
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) > 0)
            keep.push_back(v);
        else
            ++res.n_isolated_dropped;
    }
    const int n = static_cast<int>(keep.size());
    if (n == 0) {
        res.k_estimate = 0;
        return res;
    }

    std::vector<int> pos(static_cast<std::size_t>(g.n()), -1);
    for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])] = i;

    Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i) {
        int v = keep[static_cast<std::size_t>(i)];
        double dv = static_cast<double>(g.degree(v));
        for (int w : g.neighbors(v)) {
            int j = pos[static_cast<std::size_t>(w)];
            double dw = static_cast<double>(g.degree(w));
            lap(i, j) = -1.0 / std::sqrt(dv * dw);
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
    if (solver.info() != Eigen::Success) throw std::runtime_error("spectral_eigengap: eigensolver failed");
    res.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(res.eigenvalues.begin(), res.eigenvalues.end());

    int m = std::min(k_max, n);
    res.k_estimate = 1;
    double best_gap = -1.0;
    for (int k = 1; k < m; ++k) {
        double gap = res.eigenvalues[static_cast<std::size_t>(k)] - res.eigenvalues[static_cast<std::size_t>(k - 1)];
        if (gap > best_gap) {
            best_gap = gap;
            res.k_estimate = k;
        }
    }
    return res;
}

}  // namespace recpart
