#include "conewit/graphs.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <set>

namespace conewit {

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw Error(Errc::BadVertexSet, "negative vertex count");
  adj_.assign(std::size_t(n) * std::size_t(n), 0);
}

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges) : Graph(n) {
  for (auto [i, j] : edges) add_edge(i, j);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_)
    throw Error(Errc::BadVertexSet, "vertex " + std::to_string(v) + " out of range [0," +
                                        std::to_string(n_) + ")");
}

bool Graph::has_edge(int i, int j) const {
  check_vertex(i);
  check_vertex(j);
  if (i == j) return false;
  return adj_[std::size_t(i) * n_ + j] != 0;
}

void Graph::add_edge(int i, int j) {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw Error(Errc::BadVertexSet, "self-loop at vertex " + std::to_string(i));
  adj_[std::size_t(i) * n_ + j] = 1;
  adj_[std::size_t(j) * n_ + i] = 1;
}

int Graph::edge_count() const {
  int c = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) c += adj_[std::size_t(i) * n_ + j];
  return c;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (adj_[std::size_t(i) * n_ + j]) out.emplace_back(i, j);
  return out;
}

std::vector<int> Graph::neighbors(int v) const {
  check_vertex(v);
  std::vector<int> out;
  for (int u = 0; u < n_; ++u)
    if (u != v && adj_[std::size_t(v) * n_ + u]) out.push_back(u);
  return out;
}

int Graph::degree(int v) const { return int(neighbors(v).size()); }

RMat Graph::adjacency_matrix() const {
  RMat a = RMat::Zero(n_, n_);
  for (auto [i, j] : edges()) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph Graph::cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph graph_of_matrix(const CMat& x, const Tolerance& tol) {
  if (x.rows() != x.cols()) throw Error(Errc::NonSquare, "graph_of_matrix: input not square");
  tol.validate();
  const double floor2 = std::pow(tol.zero_eps * frob_scale(x), 2);
  Graph g(int(x.rows()));
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (std::abs(x(i, j)) * std::abs(x(j, i)) > floor2) g.add_edge(i, j);
  return g;
}

ChordalityResult is_chordal(const Graph& g) {
  const int n = g.n();
  ChordalityResult res;
  if (n == 0) {
    res.chordal = true;
    return res;
  }

  // Maximum-cardinality search: visit the unvisited vertex with the most
  // visited neighbors; the reverse visit order is a perfect elimination
  // order iff the graph is chordal.
  std::vector<int> weight(n, 0);
  std::vector<char> visited(n, 0);
  std::vector<int> visit_order;
  visit_order.reserve(n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!visited[v] && (best == -1 || weight[v] > weight[best])) best = v;
    visited[best] = 1;
    visit_order.push_back(best);
    for (int u : g.neighbors(best))
      if (!visited[u]) ++weight[u];
  }

  std::vector<int> elim(visit_order.rbegin(), visit_order.rend());
  std::vector<int> pos(n);
  for (int k = 0; k < n; ++k) pos[elim[k]] = k;

  // Verify: for each v, its earliest later neighbor must be adjacent to all
  // other later neighbors of v.
  for (int k = 0; k < n; ++k) {
    const int v = elim[k];
    int parent = -1;
    std::vector<int> later;
    for (int u : g.neighbors(v))
      if (pos[u] > k) {
        later.push_back(u);
        if (parent == -1 || pos[u] < pos[parent]) parent = u;
      }
    for (int u : later)
      if (u != parent && !g.has_edge(parent, u)) return res; // chordal = false
  }
  res.chordal = true;
  res.elimination_order = std::move(elim);
  return res;
}

bool is_triangle_free(const Graph& g) {
  const int n = g.n();
  // trace(A^3) counts closed walks of length 3; integer arithmetic.
  std::vector<std::vector<int64_t>> a(n, std::vector<int64_t>(n, 0));
  for (auto [i, j] : g.edges()) a[i][j] = a[j][i] = 1;
  int64_t trace3 = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!a[i][j]) continue;
      for (int k = 0; k < n; ++k) trace3 += a[i][j] * a[j][k] * a[k][i];
    }
  return trace3 == 0;
}

namespace {

void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x,
                   const std::vector<std::uint64_t>& nbr,
                   std::vector<std::vector<int>>& out) {
  if (p == 0 && x == 0) {
    std::vector<int> clique;
    for (int v = 0; v < 64; ++v)
      if (r & (1ULL << v)) clique.push_back(v);
    out.push_back(std::move(clique));
    return;
  }
  // pivot: vertex of P|X with most neighbors in P
  int pivot = -1, best = -1;
  std::uint64_t px = p | x;
  for (int v = 0; v < 64; ++v)
    if (px & (1ULL << v)) {
      int c = std::popcount(p & nbr[v]);
      if (c > best) {
        best = c;
        pivot = v;
      }
    }
  std::uint64_t candidates = p & ~nbr[pivot];
  for (int v = 0; v < 64; ++v) {
    const std::uint64_t bit = 1ULL << v;
    if (!(candidates & bit)) continue;
    bron_kerbosch(r | bit, p & nbr[v], x & nbr[v], nbr, out);
    p &= ~bit;
    x |= bit;
  }
}

} // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  if (g.n() > 64) throw Error(Errc::TooLarge, "maximal_cliques: n > 64");
  std::vector<std::uint64_t> nbr(std::size_t(std::max(g.n(), 1)), 0);
  for (auto [i, j] : g.edges()) {
    nbr[i] |= 1ULL << j;
    nbr[j] |= 1ULL << i;
  }
  std::vector<std::vector<int>> out;
  if (g.n() > 0) {
    const std::uint64_t all = (g.n() == 64) ? ~0ULL : ((1ULL << g.n()) - 1);
    bron_kerbosch(0, all, 0, nbr, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Shortest x..y path avoiding the closed neighborhood of v except x, y.
// Together with v this closes an induced cycle.
std::optional<std::vector<int>> chordless_cycle_through(const Graph& g, int v, int x, int y) {
  const int n = g.n();
  std::vector<char> blocked(n, 0);
  blocked[v] = 1;
  for (int u : g.neighbors(v)) blocked[u] = 1;
  blocked[x] = 0;
  blocked[y] = 0;

  std::vector<int> prev(n, -1);
  std::deque<int> queue{x};
  std::vector<char> seen(n, 0);
  seen[x] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == y) break;
    for (int w : g.neighbors(u)) {
      if (blocked[w] || seen[w]) continue;
      seen[w] = 1;
      prev[w] = u;
      queue.push_back(w);
    }
  }
  if (!seen[y]) return std::nullopt;
  std::vector<int> cycle{v};
  std::vector<int> path;
  for (int u = y; u != -1; u = prev[u]) path.push_back(u);
  std::reverse(path.begin(), path.end()); // x ... y
  cycle.insert(cycle.end(), path.begin(), path.end());
  return cycle;
}

bool verify_induced_cycle(const Graph& g, const std::vector<int>& c) {
  const int k = int(c.size());
  if (k < 4) return false;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const bool consecutive = (b == a + 1) || (a == 0 && b == k - 1);
      if (g.has_edge(c[a], c[b]) != consecutive) return false;
    }
  return true;
}

} // namespace

std::optional<std::vector<int>> find_chordless_cycle(const Graph& g) {
  if (is_chordal(g).chordal) return std::nullopt;
  for (int v = 0; v < g.n(); ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        if (g.has_edge(nb[a], nb[b])) continue;
        auto cyc = chordless_cycle_through(g, v, nb[a], nb[b]);
        if (cyc && verify_induced_cycle(g, *cyc)) return cyc;
      }
  }
  // A non-chordal graph always has an induced cycle reachable by the scan.
  throw Error(Errc::InvariantViolation, "find_chordless_cycle: scan found no cycle");
}

std::vector<std::vector<int>> enumerate_chordless_cycles(const Graph& g, int max_count) {
  std::vector<std::vector<int>> out;
  std::set<std::vector<int>> seen;
  for (int v = 0; v < g.n() && int(out.size()) < max_count; ++v) {
    const auto nb = g.neighbors(v);
    for (std::size_t a = 0; a < nb.size() && int(out.size()) < max_count; ++a)
      for (std::size_t b = a + 1; b < nb.size() && int(out.size()) < max_count; ++b) {
        if (g.has_edge(nb[a], nb[b])) continue;
        auto cyc = chordless_cycle_through(g, v, nb[a], nb[b]);
        if (!cyc || !verify_induced_cycle(g, *cyc)) continue;
        std::vector<int> key = *cyc;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) out.push_back(*cyc);
      }
  }
  return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices) {
  std::set<int> unique(vertices.begin(), vertices.end());
  if (unique.size() != vertices.size())
    throw Error(Errc::BadVertexSet, "induced_subgraph: duplicate vertices");
  for (int v : vertices)
    if (v < 0 || v >= g.n())
      throw Error(Errc::BadVertexSet, "induced_subgraph: vertex out of range");
  Graph sub(int(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (g.has_edge(vertices[a], vertices[b])) sub.add_edge(int(a), int(b));
  return sub;
}

bool is_subgraph(const Graph& g, const Graph& h) {
  if (g.n() != h.n()) return false;
  for (auto [i, j] : g.edges())
    if (!h.has_edge(i, j)) return false;
  return true;
}

} // namespace conewit
