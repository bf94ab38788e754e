#include "agora/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "agora/errors.hpp"
#include "agora/rng.hpp"

namespace agora {

std::string to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::ring_lattice: return "ring_lattice";
        case TopologyKind::small_world: return "small_world";
        case TopologyKind::random_graph: return "random";
        case TopologyKind::complete: return "complete";
    }
    return "unknown";
}

TopologyKind topology_kind_from_string(const std::string& s) {
    if (s == "ring_lattice") return TopologyKind::ring_lattice;
    if (s == "small_world") return TopologyKind::small_world;
    if (s == "random") return TopologyKind::random_graph;
    if (s == "complete") return TopologyKind::complete;
    throw ParamError("unknown topology kind: " + s);
}

RelationGraph::RelationGraph(NodeId node_count) : adjacency_(node_count) {}

bool RelationGraph::has_edge(NodeId i, NodeId j) const {
    const auto& adj = adjacency_[i];
    return std::binary_search(adj.begin(), adj.end(), j);
}

void RelationGraph::add_edge(NodeId i, NodeId j) {
    if (i == j) throw ParamError("self-loop rejected: node " + std::to_string(i));
    if (has_edge(i, j)) return;
    auto insert_sorted = [](std::vector<NodeId>& v, NodeId x) {
        v.insert(std::upper_bound(v.begin(), v.end(), x), x);
    };
    insert_sorted(adjacency_[i], j);
    insert_sorted(adjacency_[j], i);
    ++edge_count_;
}

void RelationGraph::remove_edge(NodeId i, NodeId j) {
    auto erase_sorted = [](std::vector<NodeId>& v, NodeId x) {
        auto it = std::lower_bound(v.begin(), v.end(), x);
        if (it != v.end() && *it == x) {
            v.erase(it);
            return true;
        }
        return false;
    };
    if (erase_sorted(adjacency_[i], j)) {
        erase_sorted(adjacency_[j], i);
        --edge_count_;
    }
}

void RelationGraph::set_build_info(TopologyKind kind, GraphBuildParams params) {
    kind_ = kind;
    params_ = params;
}

std::vector<std::pair<NodeId, NodeId>> RelationGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    out.reserve(edge_count_);
    for (NodeId i = 0; i < node_count(); ++i) {
        for (NodeId j : adjacency_[i]) {
            if (i < j) out.emplace_back(i, j);
        }
    }
    return out;
}

RelationGraph build_ring_lattice(NodeId n, int k) {
    if (n < 3) throw ParamError("ring lattice needs N >= 3, got N=" + std::to_string(n));
    if (k <= 0 || k % 2 != 0) throw ParamError("ring lattice needs even k > 0, got k=" + std::to_string(k));
    if (static_cast<NodeId>(k) >= n) {
        throw ParamError("ring lattice needs k < N, got k=" + std::to_string(k) +
                         ", N=" + std::to_string(n));
    }
    RelationGraph g(n);
    for (NodeId i = 0; i < n; ++i) {
        for (int off = 1; off <= k / 2; ++off) {
            g.add_edge(i, (i + static_cast<NodeId>(off)) % n);
        }
    }
    g.set_build_info(TopologyKind::ring_lattice, {k, 0.0, 0});
    return g;
}

RelationGraph rewire_small_world(const RelationGraph& lattice, double p, std::uint64_t seed,
                                 RewireStats* stats) {
    if (p < 0.0 || p > 1.0) throw ParamError("rewiring probability must lie in [0,1]");
    if (lattice.kind() != TopologyKind::ring_lattice) {
        throw ParamError("rewire_small_world expects a ring lattice input");
    }
    const NodeId n = lattice.node_count();
    const int k = lattice.build_params().k;

    RelationGraph g = lattice;
    Rng rng(seed);
    RewireStats local{};

    // Visit each undirected lattice edge once, from its lower ring endpoint.
    for (NodeId i = 0; i < n; ++i) {
        for (int off = 1; off <= k / 2; ++off) {
            const NodeId j = (i + static_cast<NodeId>(off)) % n;
            ++local.edges_visited;
            if (!rng.bernoulli(p)) continue;
            // Candidates: nodes that are neither i nor current neighbors of i.
            const std::size_t deg_i = g.degree(i);
            if (deg_i + 1 >= n) {
                ++local.skipped_no_candidate;  // i already adjacent to everyone
                continue;
            }
            NodeId m;
            if (deg_i < n / 2) {
                do {
                    m = static_cast<NodeId>(rng.below(n));
                } while (m == i || g.has_edge(i, m));
            } else {
                std::vector<NodeId> candidates;
                candidates.reserve(n - deg_i - 1);
                for (NodeId c = 0; c < n; ++c) {
                    if (c != i && !g.has_edge(i, c)) candidates.push_back(c);
                }
                m = candidates[rng.index(candidates.size())];
            }
            g.remove_edge(i, j);
            g.add_edge(i, m);
            ++local.edges_rewired;
        }
    }
    g.set_build_info(TopologyKind::small_world, {k, p, seed});
    if (stats) *stats = local;
    return g;
}

RelationGraph build_small_world(NodeId n, int k, double p, std::uint64_t seed,
                                RewireStats* stats) {
    return rewire_small_world(build_ring_lattice(n, k), p, seed, stats);
}

RelationGraph build_random_graph(NodeId n, int k, std::uint64_t seed) {
    if (n < 3) throw ParamError("random graph needs N >= 3, got N=" + std::to_string(n));
    if (k <= 0) throw ParamError("random graph needs k > 0");
    if ((static_cast<std::uint64_t>(n) * k) % 2 != 0) {
        throw ParamError("random graph needs N*k even, got N=" + std::to_string(n) +
                         ", k=" + std::to_string(k));
    }
    const std::size_t target_edges = static_cast<std::size_t>(n) * k / 2;
    const std::size_t max_edges = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (target_edges > max_edges) {
        throw ParamError("random graph edge budget N*k/2 exceeds simple-graph capacity");
    }
    RelationGraph g(n);
    Rng rng(seed);
    while (g.edge_count() < target_edges) {
        const NodeId a = static_cast<NodeId>(rng.below(n));
        const NodeId b = static_cast<NodeId>(rng.below(n));
        if (a == b || g.has_edge(a, b)) continue;
        g.add_edge(a, b);
    }
    g.set_build_info(TopologyKind::random_graph, {k, 0.0, seed});
    return g;
}

RelationGraph build_complete_graph(NodeId n) {
    if (n < 2) throw ParamError("complete graph needs N >= 2");
    RelationGraph g(n);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) g.add_edge(i, j);
    }
    g.set_build_info(TopologyKind::complete, {static_cast<int>(n) - 1, 0.0, 0});
    return g;
}

namespace {

// BFS distances from src; -1 marks unreachable. Scratch buffers are reused by
// the caller to keep the all-pairs sweep allocation-free.
void bfs(const RelationGraph& g, NodeId src, std::vector<int>& dist, std::vector<NodeId>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    dist[src] = 0;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId u = queue[head];
        for (NodeId v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
}

} // namespace

GraphMetrics compute_metrics(const RelationGraph& g) {
    const NodeId n = g.node_count();
    GraphMetrics m;
    if (n == 0) return m;

    // Clustering: mean over nodes of closed-triple fraction; degree < 2 counts 0.
    double cc_sum = 0.0;
    for (NodeId i = 0; i < n; ++i) {
        const auto& nb = g.neighbors(i);
        const std::size_t d = nb.size();
        if (d < 2) continue;
        std::size_t closed = 0;
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = a + 1; b < d; ++b) {
                if (g.has_edge(nb[a], nb[b])) ++closed;
            }
        }
        cc_sum += static_cast<double>(closed) / (static_cast<double>(d) * (d - 1) / 2.0);
    }
    m.clustering_coefficient = cc_sum / n;

    std::size_t dmin = g.degree(0), dmax = g.degree(0), dsum = 0;
    for (NodeId i = 0; i < n; ++i) {
        const std::size_t d = g.degree(i);
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
        dsum += d;
    }
    m.degree_min = static_cast<double>(dmin);
    m.degree_max = static_cast<double>(dmax);
    m.degree_mean = static_cast<double>(dsum) / n;

    // Largest connected component via repeated BFS.
    std::vector<int> component(n, -1);
    std::vector<int> dist(n);
    std::vector<NodeId> queue;
    queue.reserve(n);
    int comp_id = 0;
    std::size_t best_size = 0;
    int best_comp = 0;
    for (NodeId i = 0; i < n; ++i) {
        if (component[i] >= 0) continue;
        bfs(g, i, dist, queue);
        std::size_t size = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (dist[v] >= 0) {
                component[v] = comp_id;
                ++size;
            }
        }
        if (size > best_size) {
            best_size = size;
            best_comp = comp_id;
        }
        ++comp_id;
    }
    m.reachable_fraction = static_cast<double>(best_size) / n;

    // APL: mean shortest-path length over ordered reachable pairs inside the
    // largest component.
    if (best_size >= 2) {
        long double total = 0.0;
        for (NodeId i = 0; i < n; ++i) {
            if (component[i] != best_comp) continue;
            bfs(g, i, dist, queue);
            for (NodeId v = 0; v < n; ++v) {
                if (component[v] == best_comp && v != i) total += dist[v];
            }
        }
        m.average_path_length =
            static_cast<double>(total / (static_cast<long double>(best_size) * (best_size - 1)));
    }
    return m;
}

DisseminationTrace simulate_dissemination(const RelationGraph& g,
                                          const std::vector<NodeId>& seed_nodes,
                                          int rounds, TransmissionRule rule,
                                          std::uint64_t seed, int fanout) {
    if (seed_nodes.empty()) throw ParamError("dissemination needs a nonempty seed set");
    if (rounds < 1) throw ParamError("dissemination needs rounds >= 1");
    if (rule == TransmissionRule::fanout && fanout < 1) throw ParamError("fanout must be >= 1");

    const NodeId n = g.node_count();
    std::vector<char> informed(n, 0);
    std::vector<NodeId> active;  // all informed nodes, in discovery order
    for (NodeId s : seed_nodes) {
        if (s >= n) throw ParamError("seed node out of range: " + std::to_string(s));
        if (!informed[s]) {
            informed[s] = 1;
            active.push_back(s);
        }
    }

    DisseminationTrace trace;
    trace.seed_nodes = seed_nodes;
    trace.rule = rule;
    std::size_t informed_count = active.size();
    trace.rounds.push_back({0, informed_count, static_cast<double>(informed_count) / n});

    Rng rng(seed);
    for (int r = 1; r <= rounds; ++r) {
        std::vector<NodeId> fresh;
        const std::size_t transmitters = active.size();
        for (std::size_t idx = 0; idx < transmitters; ++idx) {
            const NodeId u = active[idx];
            const auto& nb = g.neighbors(u);
            if (nb.empty()) continue;
            if (rule == TransmissionRule::all_neighbors) {
                for (NodeId v : nb) {
                    if (!informed[v]) {
                        informed[v] = 1;
                        fresh.push_back(v);
                    }
                }
            } else {
                for (int f = 0; f < fanout; ++f) {
                    const NodeId v = nb[rng.index(nb.size())];
                    if (!informed[v]) {
                        informed[v] = 1;
                        fresh.push_back(v);
                    }
                }
            }
        }
        informed_count += fresh.size();
        trace.rounds.push_back({r, fresh.size(), static_cast<double>(informed_count) / n});
        active.insert(active.end(), fresh.begin(), fresh.end());
    }
    return trace;
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    std::string s = os.str();
    // shortest round-trip representation
    for (int prec = 1; prec < 17; ++prec) {
        std::ostringstream t;
        t.precision(prec);
        t << v;
        double back = 0.0;
        std::istringstream(t.str()) >> back;
        if (back == v) return t.str();
    }
    return s;
}

} // namespace

void save_edge_list(const RelationGraph& g, std::ostream& out) {
    const auto& bp = g.build_params();
    out << g.node_count() << ' ' << bp.k << ' ' << format_double(bp.p) << ' ' << bp.seed << ' '
        << to_string(g.kind()) << '\n';
    for (const auto& [i, j] : g.edges()) {
        out << i << ' ' << j << '\n';
    }
}

void save_edge_list_file(const RelationGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    save_edge_list(g, out);
}

RelationGraph load_edge_list(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw IoError("empty edge-list stream");
    std::istringstream hs(header);
    std::uint64_t n = 0;
    GraphBuildParams bp;
    std::string kind_str;
    if (!(hs >> n >> bp.k >> bp.p >> bp.seed >> kind_str)) {
        throw IoError("malformed edge-list header: " + header);
    }
    RelationGraph g(static_cast<NodeId>(n));
    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        NodeId i, j;
        if (!(ls >> i >> j) || i >= n || j >= n) {
            throw IoError("malformed edge at line " + std::to_string(line_no) + ": " + line);
        }
        g.add_edge(i, j);
    }
    g.set_build_info(topology_kind_from_string(kind_str), bp);
    return g;
}

RelationGraph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge list: " + path);
    return load_edge_list(in);
}

} // namespace agora
