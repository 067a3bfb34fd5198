#include "recpart/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "recpart/ee.hpp"
#include "recpart/generators.hpp"
#include "recpart/lsm.hpp"
#include "recpart/mathutil.hpp"
#include "recpart/metrics.hpp"
#include "recpart/recursion.hpp"
#include "recpart/rng.hpp"
#include "recpart/sbm.hpp"

namespace recpart {

namespace {

const McmcBudget detect_budget{2000, 500, 1, 3};
const McmcBudget dic_budget{1500, 400, 1, 1};
const McmcBudget fig1_budget{800, 200, 1, 2};
const StopRule stop_rule{10.0, 3};
const int dic_restarts = 3;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// smallest K whose best-restart criterion sits within Monte-Carlo resolution
// of the overall minimum; a fit that leaves its extra blocks empty is the
// smaller model refit, so a bare argmin flips between such ties on noise
int k_dic_select(const std::vector<double>& dic_by_k) {
    double best = *std::min_element(dic_by_k.begin(), dic_by_k.end());
    for (std::size_t i = 0; i < dic_by_k.size(); ++i)
        if (dic_by_k[i] <= best + 10.0) return static_cast<int>(i) + 1;
    return static_cast<int>(dic_by_k.size());
}

}  // namespace

int BenchRow::n_correct_k() const {
    int c = 0;
    for (const auto& r : repeats) c += r.k_hat == k_true;
    return c;
}

int BenchRow::n_correct_dic() const {
    int c = 0;
    for (const auto& r : repeats) c += r.k_dic == k_true;
    return c;
}

double BenchRow::mean_k() const {
    double s = 0.0;
    for (const auto& r : repeats) s += r.k_hat;
    return repeats.empty() ? 0.0 : s / static_cast<double>(repeats.size());
}

double BenchRow::mean_nmi() const {
    double s = 0.0;
    for (const auto& r : repeats) s += r.nmi_score;
    return repeats.empty() ? 0.0 : s / static_cast<double>(repeats.size());
}

BenchRow bench_sbm_recursion(int repeats, std::uint64_t seed, bool with_dic, std::ostream* log) {
    auto start = std::chrono::steady_clock::now();
    BenchRow row;
    row.name = "sbm-two-block";
    row.k_true = 2;
    row.has_dic = with_dic;
    for (int r = 0; r < repeats; ++r) {
        SbmSample sample = generate_sbm(100, {0.5, 0.5}, {{0.9, 0.1}, {0.1, 0.9}}, mix_seed(seed, 0xb1, static_cast<std::uint64_t>(r)));
        // threshold 0.3: a dense block's sparsest bipartition sits near rate
        // 0.82, so testing a 0.1 gap re-discovers those fluctuations; the
        // planted 0.8 gap leaves a wide margin
        auto driver = make_sbm_driver(sample.graph, 0.3);
        CommunityTree tree = detect_communities(*driver, detect_budget, stop_rule, mix_seed(seed, 0xb2, static_cast<std::uint64_t>(r)), log);
        BenchRepeat rep;
        rep.k_hat = tree.n_communities(stop_rule.cutoff);
        rep.nmi_score = nmi(tree.flatten(stop_rule.cutoff), sample.labels);
        if (with_dic) {
            std::vector<double> by_k;
            for (int K = 1; K <= 4; ++K) {
                double best = std::numeric_limits<double>::infinity();
                for (int c = 0; c < dic_restarts; ++c) {
                    SbmFit fit = fit_sbm_k(sample.graph, K, dic_budget,
                                           mix_seed(seed, 0xb3, static_cast<std::uint64_t>(r),
                                                    static_cast<std::uint64_t>(K * 16 + c)));
                    best = std::min(best, fit.dic);
                }
                by_k.push_back(best);
            }
            rep.k_dic = k_dic_select(by_k);
        }
        row.repeats.push_back(rep);
        if (log) *log << "[bench " << row.name << "] repeat " << r + 1 << "/" << repeats << " K=" << rep.k_hat << "\n";
    }
    row.seconds = elapsed_seconds(start);
    return row;
}

BenchRow bench_ee_recursion(int repeats, std::uint64_t seed, std::ostream* log) {
    auto start = std::chrono::steady_clock::now();
    BenchRow row;
    row.name = "ee-four-block";
    row.k_true = 4;
    const double off = 0.1 / 3.0;
    std::vector<std::vector<double>> B(4, std::vector<double>(4, off));
    for (int k = 0; k < 4; ++k) B[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 0.9;
    for (int r = 0; r < repeats; ++r) {
        EeSample sample = generate_ee(1000, {0.25, 0.25, 0.25, 0.25}, B, 0.3, 2.0, mix_seed(seed, 0xe1, static_cast<std::uint64_t>(r)));
        // threshold 0.7: a pure block's best fictitious division keeps a same-side
        // rate near 1/2, and pricing that at 0.7 costs ~0.09 nats per event, enough
        // to sink chance exceedances; merged true pairs sit above 0.93 regardless
        auto driver = make_ee_driver(sample.seq, 0.7);
        CommunityTree tree = detect_communities(*driver, detect_budget, stop_rule, mix_seed(seed, 0xe2, static_cast<std::uint64_t>(r)), log);
        BenchRepeat rep;
        rep.k_hat = tree.n_communities(stop_rule.cutoff);
        rep.nmi_score = nmi(tree.flatten(stop_rule.cutoff), sample.labels);
        row.repeats.push_back(rep);
        if (log) *log << "[bench " << row.name << "] repeat " << r + 1 << "/" << repeats << " K=" << rep.k_hat << "\n";
    }
    row.seconds = elapsed_seconds(start);
    return row;
}

BenchRow bench_lsm_recursion(int repeats, std::uint64_t seed, bool with_dic, std::ostream* log) {
    auto start = std::chrono::steady_clock::now();
    BenchRow row;
    row.name = "lsm-two-cluster";
    row.k_true = 2;
    row.has_dic = with_dic;
    for (int r = 0; r < repeats; ++r) {
        LsmSample sample = generate_lsm(100, {0.5, 0.5}, {{0.0, 0.0}, {6.0, 0.0}}, 0.0625, 1.0,
                                        mix_seed(seed, 0xc1, static_cast<std::uint64_t>(r)));
        auto driver = make_lsm_driver(sample.graph, 0.0);
        CommunityTree tree = detect_communities(*driver, detect_budget, stop_rule, mix_seed(seed, 0xc2, static_cast<std::uint64_t>(r)), log);
        BenchRepeat rep;
        rep.k_hat = tree.n_communities(stop_rule.cutoff);
        rep.nmi_score = nmi(tree.flatten(stop_rule.cutoff), sample.labels);
        if (with_dic) {
            std::vector<double> by_k;
            for (int K = 1; K <= 4; ++K) {
                double best = std::numeric_limits<double>::infinity();
                for (int c = 0; c < dic_restarts; ++c) {
                    LsmFit fit = fit_lsm_k(sample.graph, K, dic_budget,
                                           mix_seed(seed, 0xc3, static_cast<std::uint64_t>(r),
                                                    static_cast<std::uint64_t>(K * 16 + c)));
                    best = std::min(best, fit.dic);
                }
                by_k.push_back(best);
            }
            rep.k_dic = k_dic_select(by_k);
        }
        row.repeats.push_back(rep);
        if (log) *log << "[bench " << row.name << "] repeat " << r + 1 << "/" << repeats << " K=" << rep.k_hat << "\n";
    }
    row.seconds = elapsed_seconds(start);
    return row;
}

std::vector<Fig1Point> figure1_sweep(double a, int repeats, std::uint64_t seed, std::ostream* log) {
    std::vector<double> grid;
    for (int i = 0; i <= 9; ++i) grid.push_back(0.50 + 0.05 * i);
    std::vector<std::vector<double>> log_bfs(grid.size());

    for (int r = 0; r < repeats; ++r) {
        std::uint64_t a_tag = static_cast<std::uint64_t>(std::llround(a * 100));
        EeSample sample = generate_ee(1000, {0.5, 0.5}, {{a, 1.0 - a}, {1.0 - a, a}}, 0.3, 2.0,
                                      mix_seed(seed, 0xf1, a_tag, static_cast<std::uint64_t>(r)));
        for (std::size_t ti = 0; ti < grid.size(); ++ti) {
            auto driver = make_ee_driver(sample.seq, grid[ti]);
            SplitTest st = run_split_test(*driver, fig1_budget,
                                          mix_seed(seed, 0xf2, a_tag, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(ti)));
            log_bfs[ti].push_back(st.log_bf());
        }
        if (log) *log << "[figure1 a=" << a << "] repeat " << r + 1 << "/" << repeats << "\n";
    }

    std::vector<Fig1Point> points;
    for (std::size_t ti = 0; ti < grid.size(); ++ti) {
        Fig1Point p;
        p.a = a;
        p.threshold = grid[ti];
        p.repeats = repeats;
        double mean = 0.0;
        for (double x : log_bfs[ti]) mean += x;
        mean /= static_cast<double>(log_bfs[ti].size());
        double var = 0.0;
        for (double x : log_bfs[ti]) var += sq(x - mean);
        var = log_bfs[ti].size() > 1 ? var / static_cast<double>(log_bfs[ti].size() - 1) : 0.0;
        p.mean_log_bf = mean;
        p.half_width = 1.96 * std::sqrt(var / static_cast<double>(log_bfs[ti].size()));
        points.push_back(p);
    }
    return points;
}

std::string benchmark_report(const std::vector<BenchRow>& rows) {
    std::ostringstream ss;
    ss << std::left << std::setw(16) << "scenario" << std::right << std::setw(8) << "repeats" << std::setw(8)
       << "trueK" << std::setw(10) << "K-correct" << std::setw(8) << "mean-K" << std::setw(10) << "mean-NMI"
       << std::setw(12) << "DIC-correct" << std::setw(10) << "seconds" << "\n";
    for (const auto& row : rows) {
        ss << std::left << std::setw(16) << row.name << std::right << std::setw(8) << row.repeats.size()
           << std::setw(8) << row.k_true << std::setw(10) << row.n_correct_k() << std::fixed << std::setprecision(2)
           << std::setw(8) << row.mean_k() << std::setw(10) << row.mean_nmi();
        if (row.has_dic)
            ss << std::setw(12) << row.n_correct_dic();
        else
            ss << std::setw(12) << "-";
        ss << std::setw(10) << std::setprecision(1) << row.seconds << "\n";
        ss.unsetf(std::ios::fixed);
    }
    return ss.str();
}

std::string benchmark_json(const std::vector<BenchRow>& rows) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json jr;
        jr["scenario"] = row.name;
        jr["k_true"] = row.k_true;
        jr["seconds"] = row.seconds;
        jr["repeats"] = nlohmann::json::array();
        for (const auto& rep : row.repeats) {
            nlohmann::json jj = {{"k_hat", rep.k_hat}, {"nmi", rep.nmi_score}};
            if (row.has_dic) jj["k_dic"] = rep.k_dic;
            jr["repeats"].push_back(jj);
        }
        j.push_back(jr);
    }
    return j.dump(2) + "\n";
}

std::string figure1_report(const std::vector<Fig1Point>& points) {
    std::ostringstream ss;
    ss << std::left << std::setw(8) << "a" << std::right << std::setw(12) << "threshold" << std::setw(14)
       << "mean-logBF" << std::setw(12) << "ci-half" << "\n";
    for (const auto& p : points) {
        ss << std::left << std::fixed << std::setprecision(2) << std::setw(8) << p.a << std::right << std::setw(12)
           << p.threshold << std::setprecision(2) << std::setw(14) << p.mean_log_bf << std::setw(12) << p.half_width
           << "\n";
        ss.unsetf(std::ios::fixed);
    }
    return ss.str();
}

std::string figure1_json(const std::vector<Fig1Point>& points) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : points) {
        j.push_back({{"a", p.a},
                     {"threshold", p.threshold},
                     {"mean_log_bf", p.mean_log_bf},
                     {"ci_half_width", p.half_width},
                     {"repeats", p.repeats}});
    }
    return j.dump(2) + "\n";
}

}  // namespace recpart
