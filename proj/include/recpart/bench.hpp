#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace recpart {

struct BenchRepeat {
    int k_hat = 0;
    double nmi_score = 0.0;
    int k_dic = 0;  // information-criterion pick, when run
};

struct BenchRow {
    std::string name;
    int k_true = 0;
    bool has_dic = false;
    double seconds = 0.0;
    std::vector<BenchRepeat> repeats;

    int n_correct_k() const;
    int n_correct_dic() const;
    double mean_k() const;
    double mean_nmi() const;
};

// Canned simulation rows at desk scale; each repeat generates a fresh network
// from the row's scenario and runs the full recursive detection on it.
BenchRow bench_sbm_recursion(int repeats, std::uint64_t seed, bool with_dic, std::ostream* log = nullptr);
BenchRow bench_ee_recursion(int repeats, std::uint64_t seed, std::ostream* log = nullptr);
BenchRow bench_lsm_recursion(int repeats, std::uint64_t seed, bool with_dic, std::ostream* log = nullptr);

struct Fig1Point {
    double a = 0.0;          // true same-block receiver rate of the generator
    double threshold = 0.0;  // separation threshold the test was run at
    double mean_log_bf = 0.0;
    double half_width = 0.0;  // 1.96 * sd / sqrt(repeats)
    int repeats = 0;
};

// Root-level split evidence of two-block interaction networks as a function
// of the separation threshold; each repeat's network is shared across the
// whole threshold grid.
std::vector<Fig1Point> figure1_sweep(double a, int repeats, std::uint64_t seed, std::ostream* log = nullptr);

std::string benchmark_report(const std::vector<BenchRow>& rows);
std::string benchmark_json(const std::vector<BenchRow>& rows);
std::string figure1_report(const std::vector<Fig1Point>& points);
std::string figure1_json(const std::vector<Fig1Point>& points);

}  // namespace recpart
