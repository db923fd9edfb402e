#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "lcmident/matrix.hpp"
#include "lcmident/rational.hpp"

namespace lcmident {

/// Directed graph on vertices 1..n.  Self-loops and duplicate edges are
/// rejected: diagonal terms of the compartmental matrix come from outflows
/// and leaks, never from edges.
class Digraph {
  public:
    Digraph() = default;
    Digraph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    /// Out-neighbours per vertex, ascending; index 0 unused.
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

    bool has_edge(int from, int to) const;

    /// Position of an edge in edges(); throws if absent.
    std::size_t edge_index(int from, int to) const;

    friend bool operator==(const Digraph& a, const Digraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

bool is_strongly_connected(const Digraph& g);

/// Vertex ordering starting at root whose every prefix induces a strongly
/// connected subgraph, or nullopt when none exists.  Backtracking search with
/// memoization on dead vertex subsets.
std::optional<std::vector<int>> inductively_strongly_connected(const Digraph& g, int root);

/// All simple directed cycles (length >= 2), each rotated so its smallest
/// vertex comes first; Johnson's algorithm, deterministic order.
std::vector<std::vector<int>> simple_cycles(const Digraph& g);

/// |V| x |E| incidence matrix: the column of edge j->k has +1 in row j and
/// -1 in row k.
Matrix<Rational> incidence_matrix(const Digraph& g);

/// 0/1 membership vector of a cycle's edges, over the graph's edge order.
std::vector<int> cycle_indicator(const Digraph& g, const std::vector<int>& cycle);

/// |E|-|V|+1 simple cycles whose indicator vectors are linearly independent
/// and span the kernel of the incidence matrix.  Requires strong connectivity.
std::vector<std::vector<int>> cycle_space_basis(const Digraph& g);

/// All shortest paths between two distinct vertices.
struct PathSet {
    int source = 0;
    int target = 0;
    int length = 0;
    std::vector<std::vector<int>> paths;  // vertex sequences source..target
};

PathSet shortest_paths(const Digraph& g, int source, int target);

}  // namespace lcmident
