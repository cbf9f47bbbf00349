#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nse {

// Undirected simple graph. Nodes are 0..n-1 internally; the text format is
// 1-based. Edges are kept sorted with i < j so iteration order is stable.
struct Edge {
  int i = 0;
  int j = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& pairs);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool has_edge(int i, int j) const { return edge_index(i, j) >= 0; }
  // Position of {i,j} in edges(), or -1.
  int edge_index(int i, int j) const;

  Graph with_edge(int i, int j) const;
  Graph without_edge(int i, int j) const;
  // Subgraph induced on `keep` (renumbered in the given order).
  Graph induced(const std::vector<int>& keep) const;
  // Contract edge {i,j}: j merges into i, parallel edges collapse, the
  // result is renumbered to 0..n-2.
  Graph contracted(int i, int j) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> edge_pos_;  // flat n*n lookup, -1 when absent
  void rebuild();
};

// ---------------------------------------------------------------------------
// Text format: first significant line "n m", then m lines "i j" (1-based).
// Blank lines and lines starting with '#' are ignored. "i j" with i > j is
// accepted and swapped.

enum class ParseErrorKind {
  Header,      // missing or malformed "n m" line, or trailing junk
  EdgeFormat,  // edge line is not two integers
  IndexRange,  // endpoint outside 1..n
  Loop,        // i == j
  DuplicateEdge,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& message);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

Graph read_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);

// ---------------------------------------------------------------------------
// Connectivity and structure.

bool is_connected(const Graph& g);
std::vector<std::vector<int>> connected_components(const Graph& g);
// n >= 3, connected, and no articulation vertex.
bool is_biconnected(const Graph& g);
// Vertex sets of the biconnected components (bridges give 2-element sets;
// isolated vertices are omitted).
std::vector<std::vector<int>> blocks(const Graph& g);
// Node order along the path when g is a path graph, otherwise nullopt.
std::optional<std::vector<int>> path_order(const Graph& g);
// Node order around a Hamilton cycle starting at 0, or nullopt. Exponential
// in the worst case; meant for small n.
std::optional<std::vector<int>> hamilton_cycle(const Graph& g);

// ---------------------------------------------------------------------------
// Canonical form (n <= 16). Two graphs have equal keys iff isomorphic.

struct CanonKey {
  int n = 0;
  std::array<std::uint64_t, 2> bits{{0, 0}};
  friend bool operator==(const CanonKey&, const CanonKey&) = default;
  friend auto operator<=>(const CanonKey&, const CanonKey&) = default;
};

CanonKey canonical_key(const Graph& g);

struct CanonKeyHash {
  std::size_t operator()(const CanonKey& k) const noexcept;
};

// ---------------------------------------------------------------------------
// Enumeration up to isomorphism.

std::vector<Graph> connected_graphs(int n);    // n <= 9
std::vector<Graph> biconnected_graphs(int n);  // n <= 9
// 2-connected outerplanar graphs: cycle 0..n-1 plus a non-crossing chord set,
// deduplicated canonically.
std::vector<Graph> outerplanar_biconnected_graphs(int n);

// ---------------------------------------------------------------------------
// Minor containment. has_k4_minor works for any size (degree-two elimination
// decides treewidth <= 2 exactly); the K2,3 and outerplanarity tests are
// capped at n <= 12 and throw std::invalid_argument above.

bool has_k4_minor(const Graph& g);
bool has_k23_minor(const Graph& g);
bool is_outerplanar(const Graph& g);  // no K4 minor and no K2,3 minor

// ---------------------------------------------------------------------------
// Random connected graph: uniform spanning tree plus each remaining pair
// independently with probability extra_p.

Graph random_connected_graph(int n, double extra_p, std::mt19937_64& rng);

}  // namespace nse
