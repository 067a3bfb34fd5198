#include "recpart/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace recpart {

Graph::Graph(std::vector<std::string> ids) : ids_(std::move(ids)) {
    adj_mat_.assign(static_cast<std::size_t>(ids_.size()) * ids_.size(), 0);
    adj_.assign(ids_.size(), {});
}

void Graph::add_edge(int u, int v) {
    if (u == v) return;
    if (u < 0 || v < 0 || u >= n() || v >= n()) throw std::out_of_range("add_edge: node index out of range");
    if (adj_mat_[idx(u, v)]) return;
    adj_mat_[idx(u, v)] = 1;
    adj_mat_[idx(v, u)] = 1;
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
    ++m_;
}

Graph Graph::induced(const std::vector<int>& members) const {
    std::vector<std::string> sub_ids;
    sub_ids.reserve(members.size());
    for (int v : members) sub_ids.push_back(ids_[static_cast<std::size_t>(v)]);
    Graph g(std::move(sub_ids));
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            if (has_edge(members[a], members[b])) g.add_edge(static_cast<int>(a), static_cast<int>(b));
        }
    }
    return g;
}

std::vector<int> Graph::component_labels(int* n_components) const {
    std::vector<int> label(static_cast<std::size_t>(n()), -1);
    int comp = 0;
    std::vector<int> stack;
    for (int start = 0; start < n(); ++start) {
        if (label[static_cast<std::size_t>(start)] != -1) continue;
        stack.push_back(start);
        label[static_cast<std::size_t>(start)] = comp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : neighbors(v)) {
                if (label[static_cast<std::size_t>(w)] == -1) {
                    label[static_cast<std::size_t>(w)] = comp;
                    stack.push_back(w);
                }
            }
        }
        ++comp;
    }
    if (n_components) *n_components = comp;
    return label;
}

int InteractionSequence::intern(const std::string& id) {
    auto it = index_.find(id);
    if (it != index_.end()) return it->second;
    int v = static_cast<int>(ids_.size());
    ids_.push_back(id);
    appearances_.push_back(0);
    index_.emplace(id, v);
    return v;
}

void InteractionSequence::add_event(int sender, int receiver) {
    if (sender < 0 || receiver < 0 || sender >= n() || receiver >= n())
        throw std::out_of_range("add_event: node index out of range");
    events_.push_back({sender, receiver});
    ++appearances_[static_cast<std::size_t>(sender)];
    ++appearances_[static_cast<std::size_t>(receiver)];
}

Graph InteractionSequence::to_graph() const {
    Graph g(ids_);
    for (const auto& e : events_) g.add_edge(e.sender, e.receiver);
    return g;
}

namespace {

// Splits a line on commas or whitespace; returns tokens.
std::vector<std::string> tokenize(const std::string& line) {
    std::string normalized = line;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::replace(normalized.begin(), normalized.end(), '\t', ' ');
    std::istringstream ss(normalized);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

bool skippable(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;  // blank
}

}  // namespace

Graph load_edge_list(const std::string& path, LoadReport* report) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open edge list file: " + path);

    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> ids;
    std::unordered_map<std::string, int> index;
    LoadReport rep;

    auto intern = [&](const std::string& id) {
        auto it = index.find(id);
        if (it != index.end()) return it->second;
        int v = static_cast<int>(ids.size());
        ids.push_back(id);
        index.emplace(id, v);
        return v;
    };

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        ++rep.lines_read;
        auto toks = tokenize(line);
        if (toks.size() != 2)
            throw std::runtime_error("malformed edge at line " + std::to_string(line_no) + ": expected 2 fields, got " +
                                     std::to_string(toks.size()));
        int u = intern(toks[0]);
        int v = intern(toks[1]);
        if (u == v) {
            ++rep.self_loops_dropped;
            continue;
        }
        edges.emplace_back(u, v);
    }

    Graph g(std::move(ids));
    for (auto [u, v] : edges) {
        if (g.has_edge(u, v)) {
            ++rep.duplicates_dropped;
            continue;
        }
        g.add_edge(u, v);
        ++rep.edges_kept;
    }
    if (report) *report = rep;
    return g;
}

InteractionSequence load_interactions(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open interaction file: " + path);

    InteractionSequence seq;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto toks = tokenize(line);
        if (toks.size() != 2)
            throw std::runtime_error("malformed interaction at line " + std::to_string(line_no) +
                                     ": expected 2 fields, got " + std::to_string(toks.size()));
        int s = seq.intern(toks[0]);
        int r = seq.intern(toks[1]);
        seq.add_event(s, r);
    }
    return seq;
}

}  // namespace recpart
