#include "recpart/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace recpart {

void write_labels_csv(const std::string& path, const std::vector<std::string>& ids, const std::vector<int>& labels) {
    if (ids.size() != labels.size()) throw std::invalid_argument("write_labels_csv: size mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "node_id,community\n";
    for (std::size_t i = 0; i < ids.size(); ++i) out << ids[i] << "," << labels[i] + 1 << "\n";
}

std::vector<LabelRow> read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labels file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("labels file is empty: " + path);
    if (line == "node_id,community\r") line.pop_back();
    if (line != "node_id,community")
        throw std::runtime_error("malformed labels header at line 1: expected \"node_id,community\"");

    std::vector<LabelRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw std::runtime_error("malformed labels row at line " + std::to_string(line_no) +
                                     ": expected 2 comma-separated fields");
        LabelRow row;
        row.node_id = line.substr(0, comma);
        std::string comm = line.substr(comma + 1);
        try {
            std::size_t used = 0;
            row.community = std::stoi(comm, &used);
            if (used != comm.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw std::runtime_error("malformed community at line " + std::to_string(line_no) + ": \"" + comm + "\"");
        }
        if (row.node_id.empty() || row.community < 1)
            throw std::runtime_error("malformed labels row at line " + std::to_string(line_no));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

nlohmann::json node_to_json(const TreeNode& node, const std::vector<std::string>& ids) {
    nlohmann::json j;
    j["kind"] = node.is_leaf ? "leaf" : "internal";
    j["n"] = node.members.size();
    if (std::isnan(node.log_bf)) {
        j["log_bf"] = nullptr;
    } else {
        j["log_bf"] = node.log_bf;
        j["diagnostics"] = {{"se_cohesive", node.se_cohesive},
                            {"se_separated", node.se_separated},
                            {"draws", node.draws}};
    }
    if (node.is_leaf) {
        nlohmann::json members = nlohmann::json::array();
        for (int v : node.members) members.push_back(ids[static_cast<std::size_t>(v)]);
        j["members"] = std::move(members);
        j["reason"] = node.leaf_reason;
    } else {
        j["children"] = nlohmann::json::array({node_to_json(*node.left, ids), node_to_json(*node.right, ids)});
    }
    return j;
}

}  // namespace

std::string dendrogram_to_json(const CommunityTree& tree) {
    nlohmann::json j;
    j["n_units"] = tree.unit_ids.size();
    j["root"] = tree.root ? node_to_json(*tree.root, tree.unit_ids) : nlohmann::json(nullptr);
    return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

void write_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (int v = 0; v < g.n(); ++v) {
        for (int w : g.neighbors(v)) {
            if (w <= v) continue;
            out << g.id(v) << "\t" << g.id(w) << "\n";
        }
    }
}

void write_interactions(const std::string& path, const InteractionSequence& seq) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (const auto& e : seq.events()) out << seq.id(e.sender) << "\t" << seq.id(e.receiver) << "\n";
}

}  // namespace recpart
