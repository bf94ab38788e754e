#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace agora {

using NodeId = std::uint32_t;

enum class TopologyKind { ring_lattice, small_world, random_graph, complete };

std::string to_string(TopologyKind kind);
TopologyKind topology_kind_from_string(const std::string& s);

struct GraphBuildParams {
    int k = 0;               // mean degree (even for lattice/small-world)
    double p = 0.0;          // rewiring probability
    std::uint64_t seed = 0;
};

// Undirected relation network over agents. Adjacency is kept as sorted
// neighbor lists; all mutators maintain symmetry and reject self-loops.
class RelationGraph {
public:
    RelationGraph() = default;
    explicit RelationGraph(NodeId node_count);

    NodeId node_count() const { return static_cast<NodeId>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }
    bool has_edge(NodeId i, NodeId j) const;
    const std::vector<NodeId>& neighbors(NodeId i) const { return adjacency_[i]; }
    std::size_t degree(NodeId i) const { return adjacency_[i].size(); }

    void add_edge(NodeId i, NodeId j);
    void remove_edge(NodeId i, NodeId j);

    TopologyKind kind() const { return kind_; }
    const GraphBuildParams& build_params() const { return params_; }
    void set_build_info(TopologyKind kind, GraphBuildParams params);

    // All undirected edges as (i, j) with i < j, lexicographically sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    bool operator==(const RelationGraph& other) const {
        return adjacency_ == other.adjacency_;
    }

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::size_t edge_count_ = 0;
    TopologyKind kind_ = TopologyKind::ring_lattice;
    GraphBuildParams params_;
};

struct GraphMetrics {
    double clustering_coefficient = 0.0;
    double average_path_length = 0.0;  // over the largest connected component
    double degree_min = 0.0;
    double degree_mean = 0.0;
    double degree_max = 0.0;
    double reachable_fraction = 0.0;   // nodes in the largest component / N
};

enum class TransmissionRule { all_neighbors, fanout };

struct DisseminationRound {
    int round_index = 0;
    std::size_t newly_informed = 0;
    double cumulative_informed_fraction = 0.0;
};

struct DisseminationTrace {
    std::vector<DisseminationRound> rounds;  // starts at round 0 (the seeding)
    std::vector<NodeId> seed_nodes;
    TransmissionRule rule = TransmissionRule::all_neighbors;
};

struct RewireStats {
    std::size_t edges_visited = 0;
    std::size_t edges_rewired = 0;
    std::size_t skipped_no_candidate = 0;
};

// Ring lattice: node i adjacent to j iff ring distance |i-j| mod N is in
// [1, k/2]. Every node ends with degree exactly k.
RelationGraph build_ring_lattice(NodeId n, int k);

// Watts-Strogatz rewiring pass over a ring lattice. Each undirected lattice
// edge is visited exactly once from its lower-indexed endpoint i; with
// probability p the far endpoint is replaced by a uniform draw over nodes
// that are neither i nor currently adjacent to i. Keeps the edge when no
// candidate exists. Edge count is conserved for every p and seed.
RelationGraph rewire_small_world(const RelationGraph& lattice, double p, std::uint64_t seed,
                                 RewireStats* stats = nullptr);

// Convenience: lattice + rewiring pass.
RelationGraph build_small_world(NodeId n, int k, double p, std::uint64_t seed,
                                RewireStats* stats = nullptr);

// Uniform simple graph with N*k/2 edges (no self-loops, no multi-edges).
RelationGraph build_random_graph(NodeId n, int k, std::uint64_t seed);

RelationGraph build_complete_graph(NodeId n);

GraphMetrics compute_metrics(const RelationGraph& g);

// Round-based spreading: round 0 informs the seed set; each later round every
// informed node transmits to neighbors per the rule (all of them, or `fanout`
// uniformly chosen ones). Newly informed nodes transmit from the next round.
DisseminationTrace simulate_dissemination(const RelationGraph& g,
                                          const std::vector<NodeId>& seed_nodes,
                                          int rounds, TransmissionRule rule,
                                          std::uint64_t seed, int fanout = 1);

// Edge-list text format: header "N k p seed kind", then one "i j" per line,
// 0-indexed, i < j.
void save_edge_list(const RelationGraph& g, std::ostream& out);
void save_edge_list_file(const RelationGraph& g, const std::string& path);
RelationGraph load_edge_list(std::istream& in);
RelationGraph load_edge_list_file(const std::string& path);

} // namespace agora
