#include "recpart/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace recpart {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string qualify(const std::string& scope, const std::string& key) {
    return scope.empty() ? key : scope + "." + key;
}

void check_keys(const json& j, const std::string& scope, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) fail("unknown key \"" + qualify(scope, it.key()) + "\"");
    }
}

const json& require(const json& j, const std::string& scope, const char* key) {
    if (!j.contains(key)) fail("missing required key \"" + qualify(scope, key) + "\"");
    return j[key];
}

double number(const json& j, const std::string& scope, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) fail("key \"" + qualify(scope, key) + "\" must be a number");
    return j[key].get<double>();
}

int integer(const json& j, const std::string& scope, const char* key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) fail("key \"" + qualify(scope, key) + "\" must be an integer");
    return j[key].get<int>();
}

std::uint64_t require_seed(const json& j, const std::string& scope) {
    const json& s = require(j, scope, "seed");
    if (!s.is_number_integer() || s.get<double>() < 0)
        fail("key \"" + qualify(scope, "seed") + "\" must be a nonnegative integer");
    return s.get<std::uint64_t>();
}

std::string require_model(const json& j, const std::string& scope) {
    const json& m = require(j, scope, "model");
    if (!m.is_string()) fail("key \"" + qualify(scope, "model") + "\" must be a string");
    std::string model = m.get<std::string>();
    if (model != "sbm" && model != "ee" && model != "lsm")
        fail("key \"" + qualify(scope, "model") + "\" must be one of \"sbm\", \"ee\", \"lsm\"");
    return model;
}

std::vector<double> number_vector(const json& j, const std::string& scope, const char* key) {
    const json& v = require(j, scope, key);
    if (!v.is_array() || v.empty()) fail("key \"" + qualify(scope, key) + "\" must be a nonempty array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) fail("key \"" + qualify(scope, key) + "\" must be a nonempty array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<std::vector<double>> number_matrix(const json& j, const std::string& scope, const char* key) {
    const json& v = require(j, scope, key);
    if (!v.is_array() || v.empty()) fail("key \"" + qualify(scope, key) + "\" must be a nonempty array of rows");
    std::vector<std::vector<double>> out;
    for (const auto& row : v) {
        if (!row.is_array() || row.empty()) fail("key \"" + qualify(scope, key) + "\" must contain nonempty numeric rows");
        std::vector<double> r;
        for (const auto& x : row) {
            if (!x.is_number()) fail("key \"" + qualify(scope, key) + "\" must contain numeric rows");
            r.push_back(x.get<double>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

double RunConfig::resolved_threshold() const {
    if (threshold) return *threshold;
    if (model == "sbm") return 0.1;
    if (model == "ee") return 0.6;
    return 0.0;  // lsm
}

RunConfig parse_run_config(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) fail("configuration must be a JSON object");
    check_keys(j, "", {"model", "seed", "threshold", "cutoff", "min_size", "mcmc", "priors"});

    RunConfig cfg;
    cfg.model = require_model(j, "");
    cfg.seed = require_seed(j, "");

    if (j.contains("threshold")) {
        if (!j["threshold"].is_number()) fail("key \"threshold\" must be a number");
        double t = j["threshold"].get<double>();
        if (cfg.model == "sbm" && !(t >= 0.0 && t < 1.0)) fail("key \"threshold\" must lie in [0, 1) for model sbm");
        if (cfg.model == "ee" && !(t >= 0.5 && t < 1.0)) fail("key \"threshold\" must lie in [0.5, 1) for model ee");
        if (cfg.model == "lsm" && !(t >= 0.0)) fail("key \"threshold\" must be nonnegative for model lsm");
        cfg.threshold = t;
    }

    cfg.cutoff = number(j, "", "cutoff", cfg.cutoff);
    if (!(cfg.cutoff > 0.0)) fail("key \"cutoff\" must be positive");
    cfg.min_size = integer(j, "", "min_size", cfg.min_size);
    if (cfg.min_size < 2) fail("key \"min_size\" must be at least 2");

    if (j.contains("mcmc")) {
        const json& m = j["mcmc"];
        if (!m.is_object()) fail("key \"mcmc\" must be an object");
        check_keys(m, "mcmc", {"sweeps", "burn_in", "thin", "chains"});
        cfg.mcmc.sweeps = integer(m, "mcmc", "sweeps", cfg.mcmc.sweeps);
        cfg.mcmc.burn_in = integer(m, "mcmc", "burn_in", cfg.mcmc.burn_in);
        cfg.mcmc.thin = integer(m, "mcmc", "thin", cfg.mcmc.thin);
        cfg.mcmc.chains = integer(m, "mcmc", "chains", cfg.mcmc.chains);
        if (cfg.mcmc.sweeps < 1) fail("key \"mcmc.sweeps\" must be positive");
        if (cfg.mcmc.burn_in < 0) fail("key \"mcmc.burn_in\" must be nonnegative");
        if (cfg.mcmc.thin < 1) fail("key \"mcmc.thin\" must be positive");
        if (cfg.mcmc.chains < 1) fail("key \"mcmc.chains\" must be positive");
    }

    if (j.contains("priors")) {
        const json& p = j["priors"];
        if (!p.is_object()) fail("key \"priors\" must be an object");
        if (cfg.model == "sbm") {
            check_keys(p, "priors", {"gamma"});
            cfg.sbm.gamma = number(p, "priors", "gamma", cfg.sbm.gamma);
            if (!(cfg.sbm.gamma > 0.0)) fail("key \"priors.gamma\" must be positive");
        } else if (cfg.model == "ee") {
            check_keys(p, "priors", {"gamma", "theta_shape", "theta_rate", "alpha_a", "alpha_b"});
            cfg.ee.gamma = number(p, "priors", "gamma", cfg.ee.gamma);
            cfg.ee.theta_shape = number(p, "priors", "theta_shape", cfg.ee.theta_shape);
            cfg.ee.theta_rate = number(p, "priors", "theta_rate", cfg.ee.theta_rate);
            cfg.ee.alpha_a = number(p, "priors", "alpha_a", cfg.ee.alpha_a);
            cfg.ee.alpha_b = number(p, "priors", "alpha_b", cfg.ee.alpha_b);
            if (!(cfg.ee.gamma > 0.0)) fail("key \"priors.gamma\" must be positive");
            if (!(cfg.ee.theta_shape > 0.0)) fail("key \"priors.theta_shape\" must be positive");
            if (!(cfg.ee.theta_rate > 0.0)) fail("key \"priors.theta_rate\" must be positive");
            if (!(cfg.ee.alpha_a > 0.0)) fail("key \"priors.alpha_a\" must be positive");
            if (!(cfg.ee.alpha_b > 0.0)) fail("key \"priors.alpha_b\" must be positive");
        } else {
            check_keys(p, "priors",
                       {"dim", "nu", "omega_sq", "sigma0_sq", "alpha_df", "beta_mean", "beta_var", "beta_fixed",
                        "step_z", "step_beta"});
            cfg.lsm.dim = integer(p, "priors", "dim", cfg.lsm.dim);
            cfg.lsm.nu = number(p, "priors", "nu", cfg.lsm.nu);
            cfg.lsm.omega_sq = number(p, "priors", "omega_sq", cfg.lsm.omega_sq);
            cfg.lsm.sigma0_sq = number(p, "priors", "sigma0_sq", cfg.lsm.sigma0_sq);
            cfg.lsm.alpha_df = number(p, "priors", "alpha_df", cfg.lsm.alpha_df);
            cfg.lsm.beta_mean = number(p, "priors", "beta_mean", cfg.lsm.beta_mean);
            cfg.lsm.beta_var = number(p, "priors", "beta_var", cfg.lsm.beta_var);
            cfg.lsm.beta_fixed = number(p, "priors", "beta_fixed", cfg.lsm.beta_fixed);
            cfg.lsm.step_z = number(p, "priors", "step_z", cfg.lsm.step_z);
            cfg.lsm.step_beta = number(p, "priors", "step_beta", cfg.lsm.step_beta);
            if (cfg.lsm.dim < 1) fail("key \"priors.dim\" must be at least 1");
            if (!(cfg.lsm.nu > 0.0)) fail("key \"priors.nu\" must be positive");
            if (!(cfg.lsm.omega_sq > 0.0)) fail("key \"priors.omega_sq\" must be positive");
            if (!(cfg.lsm.sigma0_sq > 0.0)) fail("key \"priors.sigma0_sq\" must be positive");
            if (!(cfg.lsm.alpha_df > 0.0)) fail("key \"priors.alpha_df\" must be positive");
            if (!(cfg.lsm.beta_var > 0.0)) fail("key \"priors.beta_var\" must be positive");
            if (!(cfg.lsm.beta_fixed > 0.0)) fail("key \"priors.beta_fixed\" must be positive");
            if (!(cfg.lsm.step_z > 0.0)) fail("key \"priors.step_z\" must be positive");
            if (!(cfg.lsm.step_beta > 0.0)) fail("key \"priors.step_beta\" must be positive");
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) { return parse_run_config(read_file(path)); }

GenSpec parse_gen_spec(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) fail("generator spec must be a JSON object");
    check_keys(j, "", {"model", "seed", "n", "events", "pi", "B", "centers", "sigma_sq", "beta", "alpha", "theta"});

    GenSpec spec;
    spec.model = require_model(j, "");
    spec.seed = require_seed(j, "");

    auto check_shares = [&](const std::vector<double>& pi, const char* key) {
        double s = 0.0;
        for (double x : pi) {
            if (x < 0.0) fail(std::string("key \"") + key + "\" must contain nonnegative entries");
            s += x;
        }
        if (std::abs(s - 1.0) > 1e-6) fail(std::string("key \"") + key + "\" must sum to 1");
    };

    if (spec.model == "sbm" || spec.model == "lsm") {
        spec.n = integer(j, "", "n", 0);
        if (spec.n < 2) fail("key \"n\" must be at least 2");
    }

    spec.pi = number_vector(j, "", "pi");
    check_shares(spec.pi, "pi");
    const std::size_t K = spec.pi.size();

    if (spec.model == "sbm" || spec.model == "ee") {
        spec.B = number_matrix(j, "", "B");
        if (spec.B.size() != K) fail("key \"B\" must have one row per entry of \"pi\"");
        for (const auto& row : spec.B) {
            if (row.size() != K) fail("key \"B\" must be a square matrix matching \"pi\"");
            for (double x : row)
                if (x < 0.0 || x > 1.0) fail("key \"B\" entries must lie in [0, 1]");
        }
    }
    if (spec.model == "sbm") {
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t l = 0; l < K; ++l)
                if (std::abs(spec.B[k][l] - spec.B[l][k]) > 1e-12) fail("key \"B\" must be symmetric for model sbm");
    }
    if (spec.model == "ee") {
        spec.events = integer(j, "", "events", 0);
        if (spec.events < 1) fail("key \"events\" must be positive");
        for (const auto& row : spec.B) {
            double s = 0.0;
            for (double x : row) s += x;
            if (std::abs(s - 1.0) > 1e-6) fail("key \"B\" rows must sum to 1 for model ee");
        }
        spec.alpha = number(j, "", "alpha", spec.alpha);
        spec.theta = number(j, "", "theta", spec.theta);
        if (!(spec.alpha >= 0.0 && spec.alpha < 1.0)) fail("key \"alpha\" must lie in [0, 1)");
        if (!(spec.theta > 0.0)) fail("key \"theta\" must be positive");
    }
    if (spec.model == "lsm") {
        spec.centers = number_matrix(j, "", "centers");
        if (spec.centers.size() != K) fail("key \"centers\" must have one row per entry of \"pi\"");
        const std::size_t dim = spec.centers.front().size();
        for (const auto& c : spec.centers)
            if (c.size() != dim) fail("key \"centers\" rows must share one dimension");
        spec.sigma_sq = number(j, "", "sigma_sq", spec.sigma_sq);
        spec.beta = number(j, "", "beta", spec.beta);
        if (!(spec.sigma_sq > 0.0)) fail("key \"sigma_sq\" must be positive");
        if (!(spec.beta > 0.0)) fail("key \"beta\" must be positive");
    }
    return spec;
}

GenSpec load_gen_spec(const std::string& path) { return parse_gen_spec(read_file(path)); }

}  // namespace recpart
