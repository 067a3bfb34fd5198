#pragma once

#include <string>
#include <vector>

#include "recpart/graph.hpp"
#include "recpart/recursion.hpp"

namespace recpart {

struct LabelRow {
    std::string node_id;
    int community = 0;  // 1-based in files
};

// labels.csv with header "node_id,community"; in-memory labels are 0-based
// and written 1-based, preserving unit order.
void write_labels_csv(const std::string& path, const std::vector<std::string>& ids, const std::vector<int>& labels);
std::vector<LabelRow> read_labels_csv(const std::string& path);  // errors carry line numbers

std::string dendrogram_to_json(const CommunityTree& tree);
void write_text_file(const std::string& path, const std::string& text);

void write_edge_list(const std::string& path, const Graph& g);
void write_interactions(const std::string& path, const InteractionSequence& seq);

}  // namespace recpart
