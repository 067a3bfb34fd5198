#include "recpart/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "recpart/bench.hpp"
#include "recpart/config.hpp"
#include "recpart/ee.hpp"
#include "recpart/generators.hpp"
#include "recpart/graph.hpp"
#include "recpart/lsm.hpp"
#include "recpart/metrics.hpp"
#include "recpart/recursion.hpp"
#include "recpart/rng.hpp"
#include "recpart/sbm.hpp"
#include "recpart/serialize.hpp"

namespace recpart {

namespace {

namespace fs = std::filesystem;

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

nlohmann::json budget_json(const McmcBudget& b) {
    return {{"sweeps", b.sweeps}, {"burn_in", b.burn_in}, {"thin", b.thin}, {"chains", b.chains}};
}

int cmd_detect(const std::string& config_path, const std::string& input_path, const std::string& out_dir) {
    RunConfig cfg = load_run_config(config_path);
    ensure_dir(out_dir);

    std::unique_ptr<BipartitionDriver> driver;
    nlohmann::json load_info;
    if (cfg.model == "ee") {
        InteractionSequence seq = load_interactions(input_path);
        load_info = {{"events", seq.m()}, {"nodes", seq.n()}};
        driver = make_ee_driver(seq, cfg.resolved_threshold(), cfg.ee);
    } else {
        LoadReport rep;
        Graph g = load_edge_list(input_path, &rep);
        load_info = {{"lines_read", rep.lines_read},
                     {"edges_kept", rep.edges_kept},
                     {"self_loops_dropped", rep.self_loops_dropped},
                     {"duplicates_dropped", rep.duplicates_dropped},
                     {"nodes", g.n()}};
        if (cfg.model == "sbm")
            driver = make_sbm_driver(g, cfg.resolved_threshold(), cfg.sbm);
        else
            driver = make_lsm_driver(g, cfg.resolved_threshold(), cfg.lsm);
    }

    CommunityTree tree = detect_communities(*driver, cfg.mcmc, cfg.stop_rule(), cfg.seed, &std::cerr);
    std::vector<int> labels = tree.flatten(cfg.cutoff);

    write_labels_csv(join_path(out_dir, "labels.csv"), tree.unit_ids, labels);
    write_text_file(join_path(out_dir, "dendrogram.json"), dendrogram_to_json(tree));

    nlohmann::json manifest = {{"command", "detect"},
                               {"input", input_path},
                               {"model", cfg.model},
                               {"seed", cfg.seed},
                               {"threshold", cfg.resolved_threshold()},
                               {"cutoff", cfg.cutoff},
                               {"min_size", cfg.min_size},
                               {"mcmc", budget_json(cfg.mcmc)},
                               {"load", load_info},
                               {"n_units", tree.n_units()},
                               {"n_communities", tree.n_communities(cfg.cutoff)},
                               {"outputs", {"labels.csv", "dendrogram.json"}}};
    write_text_file(join_path(out_dir, "manifest.json"), manifest.dump(2) + "\n");

    std::cout << "communities: " << tree.n_communities(cfg.cutoff) << " (" << tree.n_units() << " units)\n";
    std::cout << "wrote " << join_path(out_dir, "labels.csv") << "\n";
    return 0;
}

int cmd_simulate(const std::string& spec_path, const std::string& out_dir) {
    GenSpec spec = load_gen_spec(spec_path);
    ensure_dir(out_dir);

    nlohmann::json manifest = {{"command", "simulate"}, {"model", spec.model}, {"seed", spec.seed}};
    std::string network_file;
    if (spec.model == "sbm") {
        SbmSample sample = generate_sbm(spec.n, spec.pi, spec.B, spec.seed);
        network_file = "edges.tsv";
        write_edge_list(join_path(out_dir, network_file), sample.graph);
        write_labels_csv(join_path(out_dir, "labels.csv"), sample.graph.ids(), sample.labels);
        manifest["n_nodes"] = sample.graph.n();
        manifest["n_edges"] = sample.graph.m();
    } else if (spec.model == "ee") {
        EeSample sample = generate_ee(spec.events, spec.pi, spec.B, spec.alpha, spec.theta, spec.seed);
        network_file = "interactions.tsv";
        write_interactions(join_path(out_dir, network_file), sample.seq);
        write_labels_csv(join_path(out_dir, "labels.csv"), sample.seq.ids(), sample.labels);
        manifest["n_nodes"] = sample.seq.n();
        manifest["n_events"] = sample.seq.m();
    } else {
        LsmSample sample = generate_lsm(spec.n, spec.pi, spec.centers, spec.sigma_sq, spec.beta, spec.seed);
        network_file = "edges.tsv";
        write_edge_list(join_path(out_dir, network_file), sample.graph);
        write_labels_csv(join_path(out_dir, "labels.csv"), sample.graph.ids(), sample.labels);
        std::size_t dim = sample.positions.size() / static_cast<std::size_t>(sample.graph.n());
        std::string pos = "node_id";
        for (std::size_t d = 0; d < dim; ++d) pos += ",x" + std::to_string(d + 1);
        pos += "\n";
        for (int v = 0; v < sample.graph.n(); ++v) {
            pos += sample.graph.id(v);
            for (std::size_t d = 0; d < dim; ++d)
                pos += "," + std::to_string(sample.positions[static_cast<std::size_t>(v) * dim + d]);
            pos += "\n";
        }
        write_text_file(join_path(out_dir, "positions.csv"), pos);
        manifest["n_nodes"] = sample.graph.n();
        manifest["n_edges"] = sample.graph.m();
        manifest["outputs"] = {network_file, "labels.csv", "positions.csv"};
    }
    if (!manifest.contains("outputs")) manifest["outputs"] = {network_file, "labels.csv"};
    write_text_file(join_path(out_dir, "manifest.json"), manifest.dump(2) + "\n");

    std::cout << "wrote " << join_path(out_dir, network_file) << "\n";
    return 0;
}

int cmd_evaluate(const std::string& labels_path, const std::string& truth_path, const std::string& graph_path) {
    std::vector<LabelRow> cand = read_labels_csv(labels_path);
    std::vector<LabelRow> truth = read_labels_csv(truth_path);

    std::unordered_map<std::string, int> truth_map;
    for (const auto& row : truth) truth_map[row.node_id] = row.community;
    if (truth_map.size() != truth.size()) throw std::runtime_error("duplicate node ids in " + truth_path);

    std::vector<int> a, b;
    std::unordered_map<std::string, int> cand_map;
    for (const auto& row : cand) {
        if (!cand_map.emplace(row.node_id, row.community).second)
            throw std::runtime_error("duplicate node ids in " + labels_path);
        auto it = truth_map.find(row.node_id);
        if (it == truth_map.end())
            throw std::runtime_error("node '" + row.node_id + "' appears in " + labels_path + " but not in " + truth_path);
        a.push_back(row.community);
        b.push_back(it->second);
    }
    if (cand.size() != truth.size())
        throw std::runtime_error("label files cover different node sets (" + std::to_string(cand.size()) + " vs " +
                                 std::to_string(truth.size()) + " nodes)");

    nlohmann::json out = {{"n_nodes", cand.size()}, {"nmi", nmi(a, b)}};
    if (!graph_path.empty()) {
        Graph g = load_edge_list(graph_path);
        std::vector<int> glabels(static_cast<std::size_t>(g.n()));
        for (int v = 0; v < g.n(); ++v) {
            auto it = cand_map.find(g.id(v));
            if (it == cand_map.end()) throw std::runtime_error("graph node '" + g.id(v) + "' missing from " + labels_path);
            glabels[static_cast<std::size_t>(v)] = it->second;
        }
        out["modularity"] = erm_modularity(g, glabels);
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_benchmark(const std::string& suite, double scale, std::uint64_t seed, const std::string& out_dir) {
    ensure_dir(out_dir);
    nlohmann::json manifest = {{"command", "benchmark"}, {"suite", suite}, {"scale", scale}, {"seed", seed}};

    if (suite == "table1" || suite == "all") {
        int repeats = std::max(1, static_cast<int>(std::lround(10.0 * scale)));
        manifest["table1_repeats"] = repeats;
        std::vector<BenchRow> rows;
        rows.push_back(bench_sbm_recursion(repeats, mix_seed(seed, 1), true, &std::cerr));
        rows.push_back(bench_ee_recursion(repeats, mix_seed(seed, 2), &std::cerr));
        rows.push_back(bench_lsm_recursion(repeats, mix_seed(seed, 3), true, &std::cerr));
        std::string table = benchmark_report(rows);
        write_text_file(join_path(out_dir, "table1.txt"), table);
        write_text_file(join_path(out_dir, "table1.json"), benchmark_json(rows));
        std::cout << table;
    }
    if (suite == "figure1" || suite == "all") {
        int repeats = std::max(1, static_cast<int>(std::lround(20.0 * scale)));
        manifest["figure1_repeats"] = repeats;
        std::vector<Fig1Point> points;
        for (double a : {0.5, 0.6, 0.7, 0.8, 0.9}) {
            std::uint64_t a_tag = static_cast<std::uint64_t>(std::llround(a * 100));
            auto pts = figure1_sweep(a, repeats, mix_seed(seed, 4, a_tag), &std::cerr);
            points.insert(points.end(), pts.begin(), pts.end());
        }
        std::string table = figure1_report(points);
        write_text_file(join_path(out_dir, "figure1.txt"), table);
        write_text_file(join_path(out_dir, "figure1.json"), figure1_json(points));
        std::cout << table;
    }
    write_text_file(join_path(out_dir, "manifest.json"), manifest.dump(2) + "\n");
    return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Bayesian recursive community detection for networks"};
    app.require_subcommand(1);

    std::string config_path, input_path, out_dir, spec_path, labels_path, truth_path, graph_path;
    std::string suite = "all";
    double scale = 1.0;
    std::uint64_t bench_seed = 1;

    auto* detect = app.add_subcommand("detect", "Recursively partition a network");
    detect->add_option("--config", config_path, "JSON run configuration")->required();
    detect->add_option("--input", input_path, "edge list (sbm/lsm) or interaction list (ee)")->required();
    detect->add_option("--output-dir", out_dir, "directory for labels.csv, dendrogram.json, manifest.json")->required();

    auto* simulate = app.add_subcommand("simulate", "Sample a synthetic network from a generator spec");
    simulate->add_option("--spec", spec_path, "JSON generator spec")->required();
    simulate->add_option("--output-dir", out_dir, "directory for the network file, labels.csv, manifest.json")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Compare two label files (prints JSON to stdout)");
    evaluate->add_option("--labels", labels_path, "candidate labels.csv")->required();
    evaluate->add_option("--truth", truth_path, "reference labels.csv")->required();
    evaluate->add_option("--graph", graph_path, "optional edge list; adds modularity of the candidate labels");

    auto* benchmark = app.add_subcommand("benchmark", "Run the canned simulation studies");
    benchmark->add_option("--suite", suite, "which study to run")
        ->check(CLI::IsMember({"table1", "figure1", "all"}));
    benchmark->add_option("--scale", scale, "repeat multiplier (1.0 = full size)")->check(CLI::PositiveNumber);
    benchmark->add_option("--seed", bench_seed, "top-level seed");
    benchmark->add_option("--output-dir", out_dir, "directory for report files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // fold CLI11 usage codes into the config-error exit
    }

    try {
        if (detect->parsed()) return cmd_detect(config_path, input_path, out_dir);
        if (simulate->parsed()) return cmd_simulate(spec_path, out_dir);
        if (evaluate->parsed()) return cmd_evaluate(labels_path, truth_path, graph_path);
        return cmd_benchmark(suite, scale, bench_seed, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace recpart
