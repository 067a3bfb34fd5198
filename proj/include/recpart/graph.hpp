#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace recpart {

// Undirected simple graph over a contiguous node index range. External ids are
// preserved so induced subgraphs and output files can refer to original nodes.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::vector<std::string> ids);

    int n() const { return static_cast<int>(ids_.size()); }
    int m() const { return m_; }

    const std::string& id(int v) const { return ids_[static_cast<std::size_t>(v)]; }
    const std::vector<std::string>& ids() const { return ids_; }

    bool has_edge(int u, int v) const { return adj_mat_[idx(u, v)] != 0; }
    void add_edge(int u, int v);

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    // Subgraph induced on `members` (node indices of this graph); keeps external ids.
    Graph induced(const std::vector<int>& members) const;

    // Connected-component labels, 0-based, and the number of components.
    std::vector<int> component_labels(int* n_components) const;

private:
    std::size_t idx(int u, int v) const {
        return static_cast<std::size_t>(u) * static_cast<std::size_t>(ids_.size()) + static_cast<std::size_t>(v);
    }

    std::vector<std::string> ids_;
    std::vector<std::uint8_t> adj_mat_;
    std::vector<std::vector<int>> adj_;
    int m_ = 0;
};

// Ordered multigraph of timestamped interactions. Nodes are indexed in order of
// first appearance; every event stores (sender, receiver) node indices.
struct Interaction {
    int sender = 0;
    int receiver = 0;
};

class InteractionSequence {
public:
    InteractionSequence() = default;

    int n() const { return static_cast<int>(ids_.size()); }
    int m() const { return static_cast<int>(events_.size()); }

    const std::string& id(int v) const { return ids_[static_cast<std::size_t>(v)]; }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<Interaction>& events() const { return events_; }

    // Registers the id if unseen; returns the node index.
    int intern(const std::string& id);
    void add_event(int sender, int receiver);

    // Total number of appearances of v across both endpoints of all events.
    int appearances(int v) const { return appearances_[static_cast<std::size_t>(v)]; }

    // Collapse to a simple undirected graph (dedupe, drop self loops).
    Graph to_graph() const;

private:
    std::vector<std::string> ids_;
    std::vector<Interaction> events_;
    std::vector<int> appearances_;
    std::unordered_map<std::string, int> index_;
};

struct LoadReport {
    int lines_read = 0;
    int edges_kept = 0;
    int self_loops_dropped = 0;
    int duplicates_dropped = 0;
};

// Reads an edge list: one edge per line, two whitespace/comma-separated node
// ids. Lines starting with '#' and blank lines are skipped. Throws
// std::runtime_error mentioning the offending line number on malformed input.
Graph load_edge_list(const std::string& path, LoadReport* report = nullptr);

// Reads an interaction list: one event per line, "sender receiver" in time
// order (comma or whitespace separated). Same comment/blank handling.
InteractionSequence load_interactions(const std::string& path);

}  // namespace recpart
