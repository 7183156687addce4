#ifndef CONEWIT_GRAPHS_HPP
#define CONEWIT_GRAPHS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "conewit/matcore.hpp"

namespace conewit {

/// Simple undirected graph on {0, ..., n-1}. No self-loops, no multi-edges.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return n_; }
  int edge_count() const;
  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);

  /// Edges as pairs (i, j) with i < j, sorted.
  std::vector<std::pair<int, int>> edges() const;
  std::vector<int> neighbors(int v) const;
  int degree(int v) const;

  RMat adjacency_matrix() const;

  static Graph empty(int n) { return Graph(n); }
  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);

  bool operator==(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<char> adj_; // n*n symmetric 0/1
};

/// Graph of a square matrix: edge {i,j} iff |X_ij| |X_ji| exceeds the squared
/// entry floor. Diagonal ignored.
Graph graph_of_matrix(const CMat& x, const Tolerance& tol = {});

struct ChordalityResult {
  bool chordal = false;
  std::vector<int> elimination_order; // perfect elimination order when chordal
};

/// Maximum-cardinality search followed by elimination-order verification.
ChordalityResult is_chordal(const Graph& g);

/// trace(A^3) == 0.
bool is_triangle_free(const Graph& g);

/// Bron-Kerbosch with pivoting; n <= 64. Cliques sorted, list sorted
/// lexicographically. Isolated vertices count as maximal cliques of size 1.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

/// An induced cycle of length >= 4 when the graph is not chordal, otherwise
/// nullopt. The returned cycle is verified: consecutive pairs are edges,
/// non-consecutive pairs are non-edges.
std::optional<std::vector<int>> find_chordless_cycle(const Graph& g);

/// All induced cycles of length >= 4 reachable by the (vertex, nonadjacent
/// neighbor pair) scan, deduplicated by vertex set, capped.
std::vector<std::vector<int>> enumerate_chordless_cycles(const Graph& g, int max_count = 64);

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices);

/// Same vertex count and E(g) subset of E(h).
bool is_subgraph(const Graph& g, const Graph& h);

} // namespace conewit

#endif
