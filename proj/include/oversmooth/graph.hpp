#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace oversmooth {

/// Simple undirected graph: node count plus a sorted, deduplicated list of
/// edges stored as (i, j) with i < j. No self-loops, no multi-edges.
class Graph {
public:
  Graph(int n, std::vector<std::pair<int, int>> edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  std::vector<int> degrees() const;
  std::vector<std::vector<int>> adjacency_lists() const;

private:
  int n_;
  std::vector<std::pair<int, int>> edges_;
};

/// Partition of the node set into connected components. Labels are assigned
/// in order of first appearance, so node 0 always has label 0.
struct ComponentLabeling {
  std::vector<int> labels;
  int m_count = 0;

  /// 0/1 indicator of component m.
  std::vector<double> indicator(int m) const;
  /// Node lists per component.
  std::vector<std::vector<int>> members() const;
};

/// Parses an edge-list document. Format: optional header line "n <count>",
/// then one "i j" pair per line. '#' starts a comment; blank lines ignored.
/// Throws std::runtime_error naming the offending line on malformed input.
Graph from_edge_list(const std::string& text);
Graph load_edge_list(const std::string& path);

/// G(n, p): each of the n(n-1)/2 unordered pairs appears independently with
/// probability p. Deterministic for a fixed seed.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

struct EdgeAdditionResult {
  Graph graph;
  int added = 0;
};

/// Adds `count` uniformly sampled previously-absent edges (without
/// replacement). Throws if count exceeds the number of absent pairs.
EdgeAdditionResult add_random_edges(const Graph& g, int count, std::uint64_t seed);

ComponentLabeling connected_components(const Graph& g);

/// The 4-node connected non-bipartite graph used by the rank counterexample:
/// edges {(0,1),(0,2),(0,3),(1,2)}.
Graph counterexample_graph();

}  // namespace oversmooth
