#include "lyalasso/graphs.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

namespace lyalasso {

namespace {

// Index of edge (a, b), a != b, in the lexicographic list of ordered pairs.
int edge_slot(int a, int b, int p) { return a * (p - 1) + (b > a ? b - 1 : b); }

std::uint32_t edge_mask(const Digraph& g) {
  std::uint32_t mask = 0;
  for (const Edge& e : g.edges) mask |= 1u << edge_slot(e.from, e.to, g.p);
  return mask;
}

Digraph graph_from_mask(int p, std::uint32_t mask) {
  Digraph g;
  g.p = p;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      if (a == b) continue;
      if (mask & (1u << edge_slot(a, b, p))) g.edges.push_back(Edge{a, b});
    }
  return g;
}

std::uint32_t permuted_mask(int p, std::uint32_t mask,
                            const std::vector<int>& perm) {
  std::uint32_t out = 0;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) {
      if (a == b) continue;
      if (mask & (1u << edge_slot(a, b, p)))
        out |= 1u << edge_slot(perm[a], perm[b], p);
    }
  return out;
}

bool is_canonical_mask(int p, std::uint32_t mask) {
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    if (permuted_mask(p, mask, perm) < mask) return false;
  }
  return true;
}

}  // namespace

SupportSet graph_support(const Digraph& g) {
  std::vector<Pair> pairs;
  pairs.reserve(g.edges.size() + static_cast<std::size_t>(g.p));
  for (int i = 0; i < g.p; ++i) pairs.push_back(Pair{i, i});
  for (const Edge& e : g.edges) pairs.push_back(Pair{e.to, e.from});
  return SupportSet(g.p, std::move(pairs));
}

Digraph graph_from_support(const SupportSet& support) {
  Digraph g;
  g.p = support.p();
  for (const Pair& pair : support.pairs())
    if (pair.row != pair.col) g.edges.push_back(Edge{pair.col, pair.row});
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

bool is_weakly_connected(const Digraph& g) {
  if (g.p <= 1) return true;
  std::vector<int> parent(g.p);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : g.edges) parent[find(e.from)] = find(e.to);
  const int root = find(0);
  for (int v = 1; v < g.p; ++v)
    if (find(v) != root) return false;
  return true;
}

bool is_dag(const Digraph& g) {
  std::vector<std::vector<int>> out_edges(g.p);
  std::vector<int> in_degree(g.p, 0);
  for (const Edge& e : g.edges) {
    out_edges[e.from].push_back(e.to);
    ++in_degree[e.to];
  }
  std::vector<int> ready;
  for (int v = 0; v < g.p; ++v)
    if (in_degree[v] == 0) ready.push_back(v);
  int removed = 0;
  while (!ready.empty()) {
    const int v = ready.back();
    ready.pop_back();
    ++removed;
    for (int w : out_edges[v])
      if (--in_degree[w] == 0) ready.push_back(w);
  }
  return removed == g.p;
}

std::vector<Digraph> enumerate_connected_digraphs(int p, int max_edges) {
  if (p < 1 || p > 5)
    throw std::invalid_argument(
        "enumerate_connected_digraphs: p must lie in [1,5]");
  if (max_edges < 0) max_edges = p * (p + 1) / 2;

  const int slots = p * (p - 1);
  std::vector<Digraph> out;
  for (std::uint32_t mask = 0; mask < (1u << slots); ++mask) {
    const int count = __builtin_popcount(mask);
    if (count > max_edges) continue;
    if (!is_canonical_mask(p, mask)) continue;
    Digraph g = graph_from_mask(p, mask);
    if (!is_weakly_connected(g)) continue;
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(), [](const Digraph& a, const Digraph& b) {
    if (a.edges.size() != b.edges.size())
      return a.edges.size() < b.edges.size();
    return edge_mask(a) < edge_mask(b);
  });
  return out;
}

std::string graph_label(const Digraph& g) {
  if (g.edges.empty()) return "(none)";
  std::ostringstream out;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (k > 0) out << ' ';
    out << g.edges[k].from + 1 << "->" << g.edges[k].to + 1;
  }
  return out.str();
}

}  // namespace lyalasso
