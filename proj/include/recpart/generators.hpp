#pragma once

#include <cstdint>
#include <vector>

#include "recpart/graph.hpp"

namespace recpart {

struct SbmSample {
    Graph graph;
    std::vector<int> labels;
};

struct EeSample {
    InteractionSequence seq;
    std::vector<int> labels;
};

struct LsmSample {
    Graph graph;
    std::vector<int> labels;
    std::vector<double> positions;  // node-major, dim coords per node
};

// Block-model graph: labels from pi, unordered edges from the symmetric rate
// matrix B. Node ids are "1".."n".
SbmSample generate_sbm(int n, const std::vector<double>& pi, const std::vector<std::vector<double>>& B,
                       std::uint64_t seed);

// Interaction sequence from block urns: each event picks the sender block
// from pi and the sender node from that block's urn, then the receiver block
// from row B[sender block] and the receiver node from that urn. Both
// endpoints see the urn state left by the previous event; the first event
// therefore introduces two distinct new nodes. Node ids are assigned "1",
// "2", ... in order of first appearance.
EeSample generate_ee(int n_events, const std::vector<double>& pi, const std::vector<std::vector<double>>& B,
                     double alpha, double theta, std::uint64_t seed);

// Latent-space graph: labels from lambda, positions from spherical normals
// around the component centers, edges Bernoulli(sigmoid(-beta * distance)).
LsmSample generate_lsm(int n, const std::vector<double>& lambda, const std::vector<std::vector<double>>& centers,
                       double sigma_sq, double beta, std::uint64_t seed);

}  // namespace recpart
