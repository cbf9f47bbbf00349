#include "nse/graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

namespace nse {
namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::pair<int, int>> edge_pairs(const Graph& g) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(g.edge_count());
  for (const auto& e : g.edges()) pairs.emplace_back(e.i, e.j);
  return pairs;
}

}  // namespace

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative node count");
  rebuild();
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& pairs) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative node count");
  edges_.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n) throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("loop edge");
    edges_.push_back({a, b});
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::pair(x.i, x.j) < std::pair(y.i, y.j);
  });
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (edges_[k] == edges_[k - 1]) throw std::invalid_argument("duplicate edge");
  rebuild();
}

void Graph::rebuild() {
  adj_.assign(n_, {});
  edge_pos_.assign(static_cast<std::size_t>(n_) * n_, -1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge e = edges_[k];
    adj_[e.i].push_back(e.j);
    adj_[e.j].push_back(e.i);
    edge_pos_[static_cast<std::size_t>(e.i) * n_ + e.j] = static_cast<int>(k);
    edge_pos_[static_cast<std::size_t>(e.j) * n_ + e.i] = static_cast<int>(k);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

int Graph::edge_index(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) return -1;
  return edge_pos_[static_cast<std::size_t>(i) * n_ + j];
}

Graph Graph::with_edge(int i, int j) const {
  auto pairs = edge_pairs(*this);
  pairs.emplace_back(i, j);
  return Graph(n_, pairs);
}

Graph Graph::without_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(edges_.size());
  for (const auto& e : edges_)
    if (!(e.i == i && e.j == j)) pairs.emplace_back(e.i, e.j);
  return Graph(n_, pairs);
}

Graph Graph::induced(const std::vector<int>& keep) const {
  std::vector<int> newid(n_, -1);
  for (std::size_t p = 0; p < keep.size(); ++p) newid[keep[p]] = static_cast<int>(p);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : edges_)
    if (newid[e.i] >= 0 && newid[e.j] >= 0) pairs.emplace_back(newid[e.i], newid[e.j]);
  return Graph(static_cast<int>(keep.size()), pairs);
}

Graph Graph::contracted(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_ || i == j) throw std::invalid_argument("bad contraction pair");
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : edges_) {
    int a = (e.i == j) ? i : e.i;
    int b = (e.j == j) ? i : e.j;
    if (a == b) continue;
    if (a > j) --a;
    if (b > j) --b;
    if (a > b) std::swap(a, b);
    pairs.emplace(a, b);
  }
  return Graph(n_ - 1, {pairs.begin(), pairs.end()});
}

// ---------------------------------------------------------------------------
// Parsing.

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      kind_(kind),
      line_(line) {}

namespace {

// Strips comments/whitespace; returns false when nothing is left.
bool significant(std::string& line) {
  if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  return std::any_of(line.begin(), line.end(),
                     [](unsigned char c) { return !std::isspace(c); });
}

bool two_ints(const std::string& line, long long& a, long long& b) {
  std::istringstream ss(line);
  if (!(ss >> a >> b)) return false;
  std::string rest;
  return !(ss >> rest);
}

}  // namespace

Graph read_edge_list(std::istream& in) {
  constexpr long long kMaxNodes = 4096;
  std::string line;
  int lineno = 0;
  long long n = -1, m = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!significant(line)) continue;
    if (!two_ints(line, n, m) || n < 0 || m < 0)
      throw ParseError(ParseErrorKind::Header, lineno, "expected header 'n m'");
    if (n > kMaxNodes)
      throw ParseError(ParseErrorKind::Header, lineno, "node count too large");
    break;
  }
  if (n < 0) throw ParseError(ParseErrorKind::Header, lineno + 1, "missing header 'n m'");
  std::vector<std::pair<int, int>> pairs;
  std::set<std::pair<int, int>> seen;
  while (static_cast<long long>(pairs.size()) < m && std::getline(in, line)) {
    ++lineno;
    if (!significant(line)) continue;
    long long a = 0, b = 0;
    if (!two_ints(line, a, b))
      throw ParseError(ParseErrorKind::EdgeFormat, lineno, "expected edge 'i j'");
    if (a < 1 || a > n || b < 1 || b > n)
      throw ParseError(ParseErrorKind::IndexRange, lineno,
                       "edge endpoint outside 1.." + std::to_string(n));
    if (a == b) throw ParseError(ParseErrorKind::Loop, lineno, "loop edge");
    if (a > b) std::swap(a, b);
    if (!seen.emplace(a, b).second)
      throw ParseError(ParseErrorKind::DuplicateEdge, lineno, "duplicate edge");
    pairs.emplace_back(static_cast<int>(a) - 1, static_cast<int>(b) - 1);
  }
  if (static_cast<long long>(pairs.size()) < m)
    throw ParseError(ParseErrorKind::EdgeFormat, lineno + 1,
                     "expected " + std::to_string(m) + " edges, got " +
                         std::to_string(pairs.size()));
  while (std::getline(in, line)) {
    ++lineno;
    if (significant(line))
      throw ParseError(ParseErrorKind::Header, lineno, "unexpected trailing content");
  }
  return Graph(static_cast<int>(n), pairs);
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream ss(text);
  return read_edge_list(ss);
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << e.i + 1 << ' ' << e.j + 1 << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Connectivity.

std::vector<std::vector<int>> connected_components(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int w : g.neighbors(v))
        if (comp[w] < 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

bool is_connected(const Graph& g) {
  return g.node_count() >= 1 && connected_components(g).size() == 1;
}

bool is_biconnected(const Graph& g) {
  const int n = g.node_count();
  if (n < 3 || !is_connected(g)) return false;
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  bool has_cut = false;
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = timer++;
    int children = 0;
    for (int w : g.neighbors(v)) {
      if (w == parent) continue;
      if (disc[w] >= 0) {
        low[v] = std::min(low[v], disc[w]);
        continue;
      }
      ++children;
      dfs(w, v);
      low[v] = std::min(low[v], low[w]);
      if (parent >= 0 && low[w] >= disc[v]) has_cut = true;
    }
    if (parent < 0 && children > 1) has_cut = true;
  };
  dfs(0, -1);
  return !has_cut;
}

std::optional<std::vector<int>> path_order(const Graph& g) {
  const int n = g.node_count();
  if (n == 0) return std::nullopt;
  if (n == 1) return std::vector<int>{0};
  if (g.edge_count() != n - 1 || !is_connected(g)) return std::nullopt;
  std::vector<int> ends;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) > 2) return std::nullopt;
    if (g.degree(v) == 1) ends.push_back(v);
  }
  if (ends.size() != 2) return std::nullopt;
  std::vector<int> order{ends.front()};
  int prev = -1, cur = ends.front();
  while (static_cast<int>(order.size()) < n) {
    int next = -1;
    for (int w : g.neighbors(cur))
      if (w != prev) next = w;
    if (next < 0) return std::nullopt;
    order.push_back(next);
    prev = cur;
    cur = next;
  }
  return order;
}

std::optional<std::vector<int>> hamilton_cycle(const Graph& g) {
  const int n = g.node_count();
  if (n < 3) return std::nullopt;
  std::vector<int> path{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  std::function<bool()> dfs = [&]() -> bool {
    if (static_cast<int>(path.size()) == n) return g.has_edge(path.back(), 0);
    for (int w : g.neighbors(path.back())) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      if (dfs()) return true;
      path.pop_back();
      used[w] = 0;
    }
    return false;
  };
  if (!dfs()) return std::nullopt;
  return path;
}

// ---------------------------------------------------------------------------
// Canonical form.

namespace {

// Iterated neighborhood refinement; the hash values are isomorphism-invariant
// node labels, so sorting the distinct values gives invariant rank classes.
std::vector<int> refinement_ranks(const Graph& g) {
  const int n = g.node_count();
  std::vector<std::uint64_t> color(n), next(n);
  for (int v = 0; v < n; ++v) color[v] = mix64(static_cast<std::uint64_t>(g.degree(v)) + 1);
  for (int round = 0; round < n; ++round) {
    for (int v = 0; v < n; ++v) {
      std::vector<std::uint64_t> nb;
      nb.reserve(g.degree(v));
      for (int w : g.neighbors(v)) nb.push_back(color[w]);
      std::sort(nb.begin(), nb.end());
      std::uint64_t h = mix64(color[v]);
      for (std::uint64_t c : nb) h = mix64(h ^ c);
      next[v] = h;
    }
    color = next;
  }
  std::vector<std::uint64_t> vals(color.begin(), color.end());
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  std::vector<int> rank(n);
  for (int v = 0; v < n; ++v)
    rank[v] = static_cast<int>(std::lower_bound(vals.begin(), vals.end(), color[v]) -
                               vals.begin());
  return rank;
}

// Branch-and-bound minimization of the per-position adjacency blocks over all
// rank-respecting vertex orders.
struct CanonSearch {
  int n = 0;
  std::vector<std::uint32_t> nbr;
  std::vector<int> rank;
  std::vector<int> pos_rank;
  std::vector<std::uint32_t> best;
  std::vector<int> perm;

  void dfs(int pos, std::uint32_t used) {
    if (pos == n) return;
    std::vector<std::pair<std::uint32_t, int>> cand;
    for (int v = 0; v < n; ++v) {
      if ((used >> v) & 1u) continue;
      if (rank[v] != pos_rank[pos]) continue;
      std::uint32_t b = 0;
      for (int i = 0; i < pos; ++i) b |= ((nbr[v] >> perm[i]) & 1u) << i;
      cand.emplace_back(b, v);
    }
    std::sort(cand.begin(), cand.end());
    std::vector<int> tried;
    for (auto [b, v] : cand) {
      if (b > best[pos]) break;
      bool redundant = false;
      for (int t : tried) {
        const std::uint32_t clear = ~((1u << v) | (1u << t));
        if ((nbr[v] & clear) == (nbr[t] & clear)) {
          redundant = true;  // swapping twin vertices is an automorphism
          break;
        }
      }
      if (redundant) continue;
      tried.push_back(v);
      if (b < best[pos]) {
        best[pos] = b;
        std::fill(best.begin() + pos + 1, best.end(),
                  std::numeric_limits<std::uint32_t>::max());
      }
      perm[pos] = v;
      dfs(pos + 1, used | (1u << v));
    }
  }
};

}  // namespace

CanonKey canonical_key(const Graph& g) {
  const int n = g.node_count();
  if (n > 16) throw std::invalid_argument("canonical_key supports n <= 16");
  CanonKey key;
  key.n = n;
  if (n <= 1) return key;
  CanonSearch s;
  s.n = n;
  s.nbr.assign(n, 0);
  for (const auto& e : g.edges()) {
    s.nbr[e.i] |= 1u << e.j;
    s.nbr[e.j] |= 1u << e.i;
  }
  s.rank = refinement_ranks(g);
  s.pos_rank = s.rank;
  std::sort(s.pos_rank.begin(), s.pos_rank.end());
  s.best.assign(n, std::numeric_limits<std::uint32_t>::max());
  s.perm.assign(n, -1);
  s.dfs(0, 0);
  int p = 0;
  for (int k = 1; k < n; ++k)
    for (int i = 0; i < k; ++i) {
      key.bits[p >> 6] |= static_cast<std::uint64_t>((s.best[k] >> i) & 1u) << (p & 63);
      ++p;
    }
  return key;
}

std::size_t CanonKeyHash::operator()(const CanonKey& k) const noexcept {
  std::uint64_t h = mix64(k.bits[0] ^ mix64(k.bits[1] + static_cast<std::uint64_t>(k.n)));
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Enumeration.

std::vector<Graph> connected_graphs(int n) {
  if (n < 1 || n > 9) throw std::invalid_argument("connected_graphs supports 1 <= n <= 9");
  std::vector<Graph> level{Graph(1)};
  for (int k = 1; k < n; ++k) {
    std::vector<Graph> next;
    std::set<CanonKey> seen;
    for (const Graph& g : level) {
      auto base = edge_pairs(g);
      for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        auto pairs = base;
        for (int v = 0; v < k; ++v)
          if ((mask >> v) & 1u) pairs.emplace_back(v, k);
        Graph g2(k + 1, pairs);
        if (seen.insert(canonical_key(g2)).second) next.push_back(std::move(g2));
      }
    }
    level = std::move(next);
  }
  return level;
}

std::vector<Graph> biconnected_graphs(int n) {
  if (n < 3) return {};
  std::vector<Graph> out;
  for (Graph& g : connected_graphs(n))
    if (is_biconnected(g)) out.push_back(std::move(g));
  return out;
}

std::vector<Graph> outerplanar_biconnected_graphs(int n) {
  if (n < 3) return {};
  std::vector<std::pair<int, int>> chords;
  for (int i = 0; i < n; ++i)
    for (int j = i + 2; j < n; ++j)
      if (!(i == 0 && j == n - 1)) chords.emplace_back(i, j);
  auto crossing = [](std::pair<int, int> a, std::pair<int, int> b) {
    return (a.first < b.first && b.first < a.second && a.second < b.second) ||
           (b.first < a.first && a.first < b.second && b.second < a.second);
  };
  std::vector<std::pair<int, int>> cycle;
  for (int i = 0; i < n; ++i) cycle.emplace_back(i, (i + 1) % n);
  std::set<CanonKey> seen;
  std::vector<Graph> out;
  std::vector<std::pair<int, int>> chosen;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    auto pairs = cycle;
    pairs.insert(pairs.end(), chosen.begin(), chosen.end());
    Graph g(n, pairs);
    if (seen.insert(canonical_key(g)).second) out.push_back(std::move(g));
    for (std::size_t c = from; c < chords.size(); ++c) {
      bool ok = true;
      for (const auto& prev : chosen)
        if (crossing(prev, chords[c])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      chosen.push_back(chords[c]);
      rec(c + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// Blocks.

std::vector<std::vector<int>> blocks(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<int, int>> estk;
  std::vector<std::vector<int>> out;
  int timer = 0;
  auto pop_block = [&](std::pair<int, int> until) {
    std::set<int> verts;
    for (;;) {
      auto e = estk.back();
      estk.pop_back();
      verts.insert(e.first);
      verts.insert(e.second);
      if (e == until) break;
    }
    out.emplace_back(verts.begin(), verts.end());
  };
  std::function<void(int, int)> dfs = [&](int v, int parent) {
    disc[v] = low[v] = timer++;
    for (int w : g.neighbors(v)) {
      if (w == parent) continue;
      if (disc[w] < 0) {
        estk.emplace_back(v, w);
        dfs(w, v);
        low[v] = std::min(low[v], low[w]);
        if (low[w] >= disc[v]) pop_block({v, w});
      } else if (disc[w] < disc[v]) {
        estk.emplace_back(v, w);
        low[v] = std::min(low[v], disc[w]);
      }
    }
  };
  for (int s = 0; s < n; ++s)
    if (disc[s] < 0 && g.degree(s) > 0) dfs(s, -1);
  return out;
}

// ---------------------------------------------------------------------------
// Minor containment.

namespace {

// Treewidth <= 2 test: repeatedly eliminate a vertex of degree <= 2, adding
// the fill edge between the two remaining neighbors. Elimination steps are
// edge contractions/deletions, so a stuck graph is a minor with minimum
// degree >= 3 and then contains a K4 subdivision; conversely an emptied graph
// has treewidth <= 2, which excludes a K4 minor.
bool eliminates_to_empty(const Graph& g) {
  const int n = g.node_count();
  std::vector<std::set<int>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.i].insert(e.j);
    adj[e.j].insert(e.i);
  }
  std::vector<char> alive(n, 1);
  int remaining = n;
  for (;;) {
    int v = -1;
    for (int u = 0; u < n; ++u)
      if (alive[u] && adj[u].size() <= 2) {
        v = u;
        break;
      }
    if (v < 0) return remaining == 0;
    if (adj[v].size() == 2) {
      int a = *adj[v].begin();
      int b = *std::next(adj[v].begin());
      adj[a].insert(b);
      adj[b].insert(a);
    }
    for (int w : adj[v]) adj[w].erase(v);
    adj[v].clear();
    alive[v] = 0;
    --remaining;
  }
}

// Outerplanarity of a 2-connected block: within the edge bound m <= 2n-3,
// the block is outerplanar iff some Hamilton cycle leaves all remaining
// edges as pairwise non-crossing chords.
bool block_outerplanar(const Graph& b) {
  const int n = b.node_count();
  if (n <= 3) return true;
  if (b.edge_count() > 2 * n - 3) return false;
  std::vector<int> path{0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  auto chords_noncrossing = [&]() {
    std::vector<int> pos(n);
    for (int p = 0; p < n; ++p) pos[path[p]] = p;
    std::vector<std::pair<int, int>> chords;
    for (const auto& e : b.edges()) {
      int x = pos[e.i], y = pos[e.j];
      if (x > y) std::swap(x, y);
      if (y - x != 1 && !(x == 0 && y == n - 1)) chords.emplace_back(x, y);
    }
    for (std::size_t p = 0; p < chords.size(); ++p)
      for (std::size_t q = p + 1; q < chords.size(); ++q) {
        auto [a, c] = chords[p];
        auto [x, y] = chords[q];
        if ((a < x && x < c && c < y) || (x < a && a < y && y < c)) return false;
      }
    return true;
  };
  std::function<bool()> dfs = [&]() -> bool {
    if (static_cast<int>(path.size()) == n)
      return b.has_edge(path.back(), 0) && chords_noncrossing();
    for (int w : b.neighbors(path.back())) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      if (dfs()) return true;
      path.pop_back();
      used[w] = 0;
    }
    return false;
  };
  return dfs();
}

void check_minor_cap(const Graph& g) {
  if (g.node_count() > 12)
    throw std::invalid_argument("K2,3/outerplanarity tests support n <= 12");
}

}  // namespace

bool has_k4_minor(const Graph& g) { return !eliminates_to_empty(g); }

// A 2-connected graph without a K2,3 minor is outerplanar or K4, and neither
// outerplanar blocks nor K4 contain one, so the test reduces to the blocks.
bool has_k23_minor(const Graph& g) {
  check_minor_cap(g);
  for (const auto& verts : blocks(g)) {
    if (verts.size() < 5) continue;
    Graph b = g.induced(verts);
    if (!block_outerplanar(b)) return true;
  }
  return false;
}

bool is_outerplanar(const Graph& g) {
  check_minor_cap(g);
  if (has_k4_minor(g)) return false;
  return !has_k23_minor(g);
}

// ---------------------------------------------------------------------------
// Random connected graph.

Graph random_connected_graph(int n, double extra_p, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("need n >= 1");
  std::vector<std::pair<int, int>> pairs;
  if (n == 2) pairs.emplace_back(0, 1);
  if (n >= 3) {
    std::vector<int> pruefer(n - 2);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int& x : pruefer) x = pick(rng);
    std::vector<int> deg(n, 1);
    for (int x : pruefer) ++deg[x];
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) leaves.insert(v);
    for (int x : pruefer) {
      int leaf = *leaves.begin();
      leaves.erase(leaves.begin());
      pairs.emplace_back(std::min(leaf, x), std::max(leaf, x));
      if (--deg[x] == 1) leaves.insert(x);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::set<std::pair<int, int>> have(pairs.begin(), pairs.end());
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!have.count({i, j}) && coin(rng) < extra_p) pairs.emplace_back(i, j);
  return Graph(n, pairs);
}

}  // namespace nse
