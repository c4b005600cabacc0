#include <set>

#include "doctest.h"
#include "lyalasso/graphs.hpp"

using namespace lyalasso;

TEST_CASE("support round trip keeps edges and drops the diagonal") {
  const Digraph g{4, {{0, 3}, {1, 3}, {2, 0}}};
  const SupportSet s = graph_support(g);
  CHECK(s.p() == 4);
  CHECK(s.size() == 7);
  CHECK(s.has_full_diagonal());
  CHECK(s.contains(3, 0));
  CHECK(s.contains(3, 1));
  CHECK(s.contains(0, 2));
  const Digraph back = graph_from_support(s);
  CHECK(back.p == 4);
  CHECK(back.edges == g.edges);
}

TEST_CASE("weak connectivity ignores edge direction") {
  CHECK(is_weakly_connected(Digraph{1, {}}));
  CHECK(!is_weakly_connected(Digraph{2, {}}));
  CHECK(is_weakly_connected(Digraph{2, {{1, 0}}}));
  CHECK(is_weakly_connected(Digraph{3, {{0, 1}, {2, 1}}}));
  CHECK(!is_weakly_connected(Digraph{3, {{0, 1}}}));
}

TEST_CASE("dag detection") {
  CHECK(is_dag(Digraph{3, {{0, 1}, {1, 2}}}));
  CHECK(!is_dag(Digraph{2, {{0, 1}, {1, 0}}}));
  CHECK(!is_dag(Digraph{3, {{0, 1}, {1, 2}, {2, 0}}}));
  CHECK(is_dag(Digraph{1, {}}));
}

TEST_CASE("enumeration counts match the catalog of weak isomorphism classes") {
  CHECK(enumerate_connected_digraphs(1).size() == 1);
  CHECK(enumerate_connected_digraphs(2).size() == 2);
  CHECK(enumerate_connected_digraphs(3).size() == 13);
  // The default edge cap p(p+1)/2 = 10 excludes exactly the 11- and
  // 12-edge classes of the full count 199.
  CHECK(enumerate_connected_digraphs(4).size() == 197);
  CHECK(enumerate_connected_digraphs(4, 12).size() == 199);
  CHECK(enumerate_connected_digraphs(3, 2).size() == 3);
  CHECK_THROWS_AS(enumerate_connected_digraphs(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_connected_digraphs(6), std::invalid_argument);
}

TEST_CASE("enumeration is deterministic, canonical, and sorted") {
  const std::vector<Digraph> graphs = enumerate_connected_digraphs(4);
  std::set<std::string> labels;
  std::size_t prev_edges = 0;
  for (const Digraph& g : graphs) {
    CHECK(g.edges.size() >= prev_edges);
    prev_edges = g.edges.size();
    CHECK(is_weakly_connected(g));
    CHECK(labels.insert(graph_label(g)).second);
  }

  const std::vector<Digraph> again = enumerate_connected_digraphs(4);
  REQUIRE(again.size() == graphs.size());
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    CHECK(again[k].edges == graphs[k].edges);
  }
}

TEST_CASE("star graphs appear under their canonical labels") {
  const std::vector<Digraph> graphs = enumerate_connected_digraphs(4);
  std::set<std::string> labels;
  for (const Digraph& g : graphs) labels.insert(graph_label(g));

  // All edges into one node, and all edges out of one node.
  CHECK(labels.count("1->4 2->4 3->4") == 1);
  CHECK(labels.count("1->2 1->3 1->4") == 1);
  // A relabeled in-star is not canonical and must not appear separately.
  CHECK(labels.count("2->1 3->1 4->1") == 0);
}

TEST_CASE("labels are 1-based and stable") {
  CHECK(graph_label(Digraph{4, {{0, 3}, {1, 3}, {2, 3}}}) == "1->4 2->4 3->4");
  CHECK(graph_label(Digraph{3, {}}) == "(none)");
}
