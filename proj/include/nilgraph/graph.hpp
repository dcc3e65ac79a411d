#pragma once

// Undirected simple graphs on bit-packed adjacency rows, with the
// diagnostics used throughout: degrees, complete-multipartite recognition,
// diameter, Hamiltonian search, blow-ups, induced subgraphs, and the DOT /
// JSON / edge-list interchange formats.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace nilgraph {

class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t n, std::vector<std::string> labels = {})
      : n_(n), words_((n + 63) / 64), bits_(n * words_, 0), labels_(std::move(labels)) {
    if (labels_.empty()) {
      labels_.reserve(n);
      for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i + 1));
    }
    if (labels_.size() != n) throw std::invalid_argument("Graph: one label per vertex required");
  }

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return words_; }
  const std::string& label(std::size_t v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }

  void add_edge(std::size_t u, std::size_t v) {
    check(u);
    check(v);
    if (u == v) throw std::invalid_argument("Graph: no loops");
    set_bit(u, v);
    set_bit(v, u);
  }

  bool adjacent(std::size_t u, std::size_t v) const {
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1;
  }

  std::size_t degree(std::size_t v) const {
    check(v);
    std::size_t d = 0;
    for (std::size_t w = 0; w < words_; ++w) d += std::popcount(bits_[v * words_ + w]);
    return d;
  }

  std::vector<std::size_t> degree_sequence() const {
    std::vector<std::size_t> ds(n_);
    for (std::size_t v = 0; v < n_; ++v) ds[v] = degree(v);
    std::sort(ds.begin(), ds.end());
    return ds;
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (std::uint64_t w : bits_) total += std::popcount(w);
    return total / 2;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
  }

  const std::uint64_t* row(std::size_t v) const { return bits_.data() + v * words_; }

  // Builder access: set one direction only, then mirror. Lets parallel
  // writers own disjoint rows.
  void set_bit(std::size_t u, std::size_t v) { bits_[u * words_ + v / 64] |= 1ull << (v % 64); }

  void mirror_upper() {
    for (std::size_t u = 0; u < n_; ++u)
      for (std::size_t v = u + 1; v < n_; ++v)
        if (adjacent(u, v)) set_bit(v, u);
  }

 private:
  void check(std::size_t v) const {
    if (v >= n_) throw std::invalid_argument("Graph: vertex out of range");
  }

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------

struct IsolatedRemoval {
  Graph graph;
  std::vector<std::size_t> kept;     // original ids of surviving vertices
  std::vector<std::size_t> removed;  // original ids of isolated vertices
};

inline Graph induced_subgraph(const Graph& g, const std::vector<std::size_t>& vs) {
  std::vector<char> seen(g.size(), 0);
  std::vector<std::string> labels;
  for (std::size_t v : vs) {
    if (v >= g.size()) throw std::invalid_argument("induced_subgraph: unknown vertex");
    if (seen[v]) throw std::invalid_argument("induced_subgraph: duplicate vertex");
    seen[v] = 1;
    labels.push_back(g.label(v));
  }
  Graph h(vs.size(), std::move(labels));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.adjacent(vs[i], vs[j])) h.add_edge(i, j);
  return h;
}

inline IsolatedRemoval remove_isolated(const Graph& g) {
  IsolatedRemoval out;
  for (std::size_t v = 0; v < g.size(); ++v)
    (g.degree(v) > 0 ? out.kept : out.removed).push_back(v);
  out.graph = induced_subgraph(g, out.kept);
  return out;
}

// c pairwise non-adjacent copies of every vertex; copies of a and b are
// adjacent exactly when a and b were.
inline Graph blow_up(const Graph& g, std::size_t c) {
  if (c < 1) throw std::invalid_argument("blow_up: order must be >= 1");
  std::vector<std::string> labels;
  labels.reserve(g.size() * c);
  for (std::size_t v = 0; v < g.size(); ++v)
    for (std::size_t i = 0; i < c; ++i)
      labels.push_back(c == 1 ? g.label(v) : g.label(v) + "." + std::to_string(i + 1));
  Graph h(g.size() * c, std::move(labels));
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v) {
      if (!g.adjacent(u, v)) continue;
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) h.add_edge(u * c + i, v * c + j);
    }
  return h;
}

// Partition into independent parts with all cross edges present, if one
// exists; i.e. non-adjacency must be an equivalence relation.
inline std::optional<std::vector<std::vector<std::size_t>>> is_complete_multipartite(const Graph& g) {
  std::vector<std::size_t> part_of(g.size(), SIZE_MAX);
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (part_of[v] != SIZE_MAX) continue;
    parts.emplace_back();
    for (std::size_t u = v; u < g.size(); ++u) {
      if (part_of[u] == SIZE_MAX && !g.adjacent(v, u)) {
        part_of[u] = parts.size() - 1;
        parts.back().push_back(u);
      }
    }
  }
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = u + 1; v < g.size(); ++v)
      if (g.adjacent(u, v) != (part_of[u] != part_of[v])) return std::nullopt;
  return parts;
}

inline std::vector<std::size_t> part_sizes(const std::vector<std::vector<std::size_t>>& parts) {
  std::vector<std::size_t> sizes;
  for (const auto& p : parts) sizes.push_back(p.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

// Max over vertex pairs of the BFS distance; nullopt when the graph is
// disconnected (or empty).
inline std::optional<std::size_t> diameter(const Graph& g) {
  if (g.size() == 0) return std::nullopt;
  std::size_t words = g.words_per_row();
  std::size_t best = 0;
  std::vector<std::uint64_t> reached(words), frontier(words), next(words);
  for (std::size_t s = 0; s < g.size(); ++s) {
    std::fill(reached.begin(), reached.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    reached[s / 64] = frontier[s / 64] = 1ull << (s % 64);
    std::size_t seen = 1, dist = 0;
    while (true) {
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t f = frontier[w];
        while (f) {
          std::size_t v = w * 64 + std::size_t(std::countr_zero(f));
          f &= f - 1;
          const std::uint64_t* r = g.row(v);
          for (std::size_t x = 0; x < words; ++x) next[x] |= r[x];
        }
      }
      std::size_t grew = 0;
      for (std::size_t w = 0; w < words; ++w) {
        frontier[w] = next[w] & ~reached[w];
        reached[w] |= next[w];
        grew += std::popcount(frontier[w]);
      }
      if (!grew) break;
      seen += grew;
      ++dist;
    }
    if (seen != g.size()) return std::nullopt;
    best = std::max(best, dist);
  }
  return best;
}

inline bool is_connected(const Graph& g) {
  if (g.size() <= 1) return true;
  return diameter(g).has_value();
}

// ---------------------------------------------------------------------------
// Hamiltonian cycles: exact backtracking up to `budget` vertices (64 max),
// with the Dirac minimum-degree condition reported alongside.

struct HamiltonianReport {
  enum class Status { found, none, unknown };
  Status status = Status::unknown;
  std::vector<std::size_t> cycle;
  bool dirac = false;
};

namespace detail {

// 1 = found, 0 = exhausted, -1 = node budget hit.
inline int ham_dfs(const std::vector<std::uint64_t>& adj, std::size_t u, std::uint64_t visited,
                   std::uint64_t all, std::vector<std::size_t>& path, std::uint64_t& nodes_left) {
  if (nodes_left == 0) return -1;
  --nodes_left;
  if (visited == all) return (adj[u] >> path[0]) & 1 ? 1 : 0;
  // fewest-onward-options first
  std::vector<std::pair<int, std::size_t>> order;
  std::uint64_t c = adj[u] & ~visited;
  while (c) {
    std::size_t v = std::size_t(std::countr_zero(c));
    c &= c - 1;
    order.emplace_back(std::popcount(adj[v] & ~visited), v);
  }
  std::sort(order.begin(), order.end());
  bool truncated = false;
  for (auto [k, v] : order) {
    (void)k;
    path.push_back(v);
    int r = ham_dfs(adj, v, visited | (1ull << v), all, path, nodes_left);
    if (r == 1) return 1;
    path.pop_back();
    if (r == -1) truncated = true;
  }
  return truncated ? -1 : 0;
}

}  // namespace detail

inline HamiltonianReport hamiltonian(const Graph& g, std::size_t budget = 24) {
  HamiltonianReport rep;
  std::size_t n = g.size();
  rep.dirac = n >= 3 && 2 * g.degree_sequence().front() >= n;
  if (n < 3) {
    rep.status = HamiltonianReport::Status::none;
    return rep;
  }
  if (n > budget || n > 64) {
    rep.status = HamiltonianReport::Status::unknown;
    return rep;
  }
  std::vector<std::uint64_t> adj(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (g.adjacent(u, v)) adj[u] |= 1ull << v;
  std::uint64_t all = n == 64 ? ~0ull : (1ull << n) - 1;
  std::vector<std::size_t> path{0};
  std::uint64_t nodes_left = 50'000'000;
  switch (detail::ham_dfs(adj, 0, 1ull, all, path, nodes_left)) {
    case 1:
      rep.status = HamiltonianReport::Status::found;
      rep.cycle = std::move(path);
      break;
    case 0: rep.status = HamiltonianReport::Status::none; break;
    default: rep.status = HamiltonianReport::Status::unknown; break;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Interchange formats

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string to_dot(const Graph& g) {
  std::ostringstream os;
  os << "graph nilgraph {\n";
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.degree(v) == 0) os << "  \"" << dot_escape(g.label(v)) << "\";\n";
  for (auto [u, v] : g.edges())
    os << "  \"" << dot_escape(g.label(u)) << "\" -- \"" << dot_escape(g.label(v)) << "\";\n";
  os << "}\n";
  return os.str();
}

inline nlohmann::ordered_json to_json(const Graph& g, const std::string& group_label) {
  nlohmann::ordered_json j;
  j["group"] = group_label;
  j["n_vertices"] = g.size();
  j["vertices"] = g.labels();
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  return j;
}

inline Graph from_json(const nlohmann::json& j) {
  std::vector<std::string> labels;
  if (j.contains("vertices"))
    labels = j.at("vertices").get<std::vector<std::string>>();
  std::size_t n = j.at("n_vertices").get<std::size_t>();
  if (!labels.empty() && labels.size() != n)
    throw std::invalid_argument("graph json: vertex label count mismatch");
  Graph g(n, std::move(labels));
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::invalid_argument("graph json: malformed edge");
    g.add_edge(e[0].get<std::size_t>(), e[1].get<std::size_t>());
  }
  return g;
}

// Plain text: vertex count, then one 1-based "i j" pair per edge.
inline Graph from_edge_list_text(const std::string& text) {
  std::istringstream is(text);
  std::size_t n;
  if (!(is >> n)) throw std::invalid_argument("edge list: missing vertex count");
  Graph g(n);
  std::size_t a, b;
  while (is >> a) {
    if (!(is >> b)) throw std::invalid_argument("edge list: dangling endpoint");
    if (a < 1 || a > n || b < 1 || b > n) throw std::invalid_argument("edge list: vertex out of range");
    g.add_edge(a - 1, b - 1);
  }
  return g;
}

}  // namespace nilgraph
