#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "recpart/ee.hpp"
#include "recpart/lsm.hpp"
#include "recpart/recursion.hpp"
#include "recpart/sbm.hpp"

namespace recpart {

// Configuration problems (missing/unknown/ill-typed keys, bad values) carry
// the offending key in the message and map to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string model;  // "sbm" | "ee" | "lsm"
    std::uint64_t seed = 0;
    std::optional<double> threshold;  // separation threshold; per-model default when absent
    double cutoff = 10.0;
    int min_size = 3;
    McmcBudget mcmc;
    SbmPriors sbm;
    EePriors ee;
    LsmPriors lsm;

    double resolved_threshold() const;
    StopRule stop_rule() const { return {cutoff, min_size}; }
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::string& path);

struct GenSpec {
    std::string model;
    std::uint64_t seed = 0;
    int n = 0;       // nodes (sbm / lsm)
    int events = 0;  // interactions (ee)
    std::vector<double> pi;
    std::vector<std::vector<double>> B;        // sbm: symmetric rates; ee: row-stochastic receiver rows
    std::vector<std::vector<double>> centers;  // lsm
    double sigma_sq = 0.0625;
    double beta = 1.0;
    double alpha = 0.3;  // urn discount (ee)
    double theta = 2.0;  // urn strength (ee)
};

GenSpec parse_gen_spec(const std::string& text);
GenSpec load_gen_spec(const std::string& path);

}  // namespace recpart
