#include "oversmooth/graph.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace oversmooth {

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw std::invalid_argument("node count must be non-negative");
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u == v) throw std::invalid_argument("self-loop forbidden");
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= n_)
      throw std::invalid_argument("edge endpoint out of range");
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Graph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(n_);
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<double> ComponentLabeling::indicator(int m) const {
  std::vector<double> u(labels.size(), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == m) u[i] = 1.0;
  return u;
}

std::vector<std::vector<int>> ComponentLabeling::members() const {
  std::vector<std::vector<int>> out(m_count);
  for (std::size_t i = 0; i < labels.size(); ++i)
    out[labels[i]].push_back(static_cast<int>(i));
  return out;
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& why) {
  std::ostringstream os;
  os << "edge list parse error at line " << line_no << ": " << why;
  throw std::runtime_error(os.str());
}

}  // namespace

Graph from_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int declared_n = -1;
  bool saw_edge_line = false;
  int max_index = -1;
  std::vector<std::pair<int, int>> edges;

  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank or comment-only

    if (first == "n") {
      if (saw_edge_line || declared_n >= 0)
        parse_fail(line_no, "header \"n <count>\" must come first");
      long n = 0;
      std::string extra;
      if (!(std::istringstream(line.substr(line.find('n') + 1)) >> n) || n < 0)
        parse_fail(line_no, "bad node count");
      declared_n = static_cast<int>(n);
      continue;
    }

    long u = 0, v = 0;
    std::string extra;
    std::istringstream es(line);
    if (!(es >> u >> v) || (es >> extra))
      parse_fail(line_no, "expected \"i j\"");
    if (u < 0 || v < 0) parse_fail(line_no, "negative node index");
    if (u == v) parse_fail(line_no, "self-loop");
    if (declared_n >= 0 && (u >= declared_n || v >= declared_n))
      parse_fail(line_no, "index >= declared node count");
    saw_edge_line = true;
    max_index = std::max(max_index, static_cast<int>(std::max(u, v)));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }

  const int n = declared_n >= 0 ? declared_n : max_index + 1;
  return Graph(n, std::move(edges));
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_edge_list(buf.str());
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("edge probability must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (unif(rng) < p) edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

EdgeAdditionResult add_random_edges(const Graph& g, int count,
                                    std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("count must be non-negative");
  const int n = g.node_count();
  std::vector<std::pair<int, int>> absent;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g.has_edge(i, j)) absent.emplace_back(i, j);
  if (count > static_cast<int>(absent.size()))
    throw std::invalid_argument("count exceeds number of absent pairs");

  // Partial Fisher-Yates: the first `count` slots become the sample.
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, absent.size() - 1);
    std::swap(absent[i], absent[pick(rng)]);
  }

  std::vector<std::pair<int, int>> edges = g.edges();
  edges.insert(edges.end(), absent.begin(), absent.begin() + count);
  return {Graph(n, std::move(edges)), count};
}

ComponentLabeling connected_components(const Graph& g) {
  const int n = g.node_count();
  const auto adj = g.adjacency_lists();
  ComponentLabeling out;
  out.labels.assign(n, -1);
  for (int start = 0; start < n; ++start) {
    if (out.labels[start] >= 0) continue;
    const int label = out.m_count++;
    std::deque<int> queue{start};
    out.labels[start] = label;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj[u]) {
        if (out.labels[v] < 0) {
          out.labels[v] = label;
          queue.push_back(v);
        }
      }
    }
  }
  return out;
}

Graph counterexample_graph() {
  return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
}

}  // namespace oversmooth
