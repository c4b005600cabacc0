#pragma once

#include <string>
#include <vector>

#include "lyalasso/types.hpp"

namespace lyalasso {

// Directed edge between distinct nodes, 0-based.  Self-loops are never
// listed: every node of the model carries one implicitly.
struct Edge {
  int from = 0;
  int to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Digraph {
  int p = 0;
  std::vector<Edge> edges;  // sorted lexicographically, no duplicates
};

// The drift support encoding the graph: pair (j, i) for each edge i -> j,
// plus the whole diagonal.
SupportSet graph_support(const Digraph& g);

// Inverse of graph_support: off-diagonal support pairs (j, i) become edges
// i -> j; diagonal pairs are dropped.
Digraph graph_from_support(const SupportSet& support);

// Connectivity of the underlying undirected graph.
bool is_weakly_connected(const Digraph& g);

// True when the directed edges admit no cycle.
bool is_dag(const Digraph& g);

// All weakly connected digraphs on p nodes with at most max_edges directed
// edges (default p(p+1)/2), one representative per isomorphism class.  The
// representative is the relabeling with the smallest edge bitmask, and the
// output is sorted by edge count, then bitmask, so the enumeration order is
// deterministic.  Intended for small p; the edge universe must fit in 32
// bits (p <= 5).
std::vector<Digraph> enumerate_connected_digraphs(int p, int max_edges = -1);

// Human-readable 1-based edge list, e.g. "1->4 2->4 3->4"; "(none)" for an
// edgeless graph.
std::string graph_label(const Digraph& g);

}  // namespace lyalasso
