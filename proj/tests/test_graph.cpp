#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "nilgraph/graph.hpp"
#include "nilgraph/group_spec.hpp"
#include "nilgraph/nilgraph.hpp"

using namespace nilgraph;

namespace {

Elem elem_of(const FiniteGroup& g, const std::string& cycles, unsigned degree) {
  return dynamic_cast<const PermGroupRep&>(g.rep()).index_of(parse_cycles(cycles, degree));
}

Graph path3() {
  Graph g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  return g;
}

Graph complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_CASE("graph basics") {
  Graph g = path3();
  CHECK(g.adjacent(0, 1));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.degree_sequence() == std::vector<std::size_t>{1, 1, 2});
  CHECK(g.edge_count() == 2);
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.degree(5), std::invalid_argument);
}

TEST_CASE("nilpotent groups give edgeless graphs") {
  Graph g = build_nilgraph(make_group("D4"));
  CHECK(g.edge_count() == 0);
  CHECK(remove_isolated(g).graph.size() == 0);
}

TEST_CASE("the graph of S3, brute forced") {
  FiniteGroup s3 = make_group("S3");
  Graph g = build_nilgraph(s3);
  CHECK(g.degree(s3.identity()) == 0);

  auto survivors = remove_isolated(g);
  CHECK(survivors.graph.size() == 5);
  CHECK(survivors.removed == std::vector<std::size_t>{s3.identity()});

  auto parts = is_complete_multipartite(survivors.graph);
  REQUIRE(parts.has_value());
  CHECK(part_sizes(*parts) == std::vector<std::size_t>{1, 1, 1, 2});
}

TEST_CASE("the double transposition has degree 8 in the graph of S4") {
  FiniteGroup s4 = make_group("S4");
  Graph g = build_nilgraph(s4);
  Elem v = elem_of(s4, "(1 2)(3 4)", 4);
  CHECK(g.degree(v) == 8);

  auto survivors = remove_isolated(g);
  CHECK(survivors.graph.size() == 23);  // only the identity is isolated
  // same degree after isolated-vertex removal
  for (std::size_t i = 0; i < survivors.kept.size(); ++i)
    if (survivors.kept[i] == v) CHECK(survivors.graph.degree(i) == 8);
}

TEST_CASE("isolated vertices are exactly the hypercenter") {
  for (const char* spec : {"S3", "S4", "C2xS3", "C3xS3", "D9", "GD(C3xC3)"}) {
    FiniteGroup g = make_group(spec);
    auto survivors = remove_isolated(build_nilgraph(g));
    Subgroup z = hypercenter(g);
    std::vector<std::size_t> zs(z.members.begin(), z.members.end());
    CHECK(survivors.removed == zs);
  }
  CHECK(remove_isolated(build_nilgraph(make_group("C2xS3"))).graph.size() == 10);
}

TEST_CASE("blow-up") {
  Graph edge(2);
  edge.add_edge(0, 1);
  Graph c4 = blow_up(edge, 2);
  CHECK(c4.size() == 4);
  CHECK(c4.edge_count() == 4);
  CHECK(diameter(c4) == 2);

  Graph k222 = blow_up(complete(3), 2);
  CHECK(k222.size() == 6);
  CHECK(k222.edge_count() == 12);
  auto parts = is_complete_multipartite(k222);
  REQUIRE(parts.has_value());
  CHECK(part_sizes(*parts) == std::vector<std::size_t>{2, 2, 2});

  Graph same = blow_up(path3(), 1);
  CHECK(same.size() == 3);
  CHECK(same.edge_count() == 2);

  // vertex and edge counts scale by c and c^2
  Graph b3 = blow_up(path3(), 3);
  CHECK(b3.size() == 3 * 3);
  CHECK(b3.edge_count() == 9 * 2);
}

TEST_CASE("the order-18 pair from the introduction") {
  FiniteGroup d9 = make_group("D9");
  FiniteGroup gd = make_group("GD(C3xC3)");
  CHECK(d9.size() == 18);
  CHECK(gd.size() == 18);

  auto rd = remove_isolated(build_nilgraph(d9));
  auto rg = remove_isolated(build_nilgraph(gd));

  auto pd = is_complete_multipartite(rd.graph);
  auto pg = is_complete_multipartite(rg.graph);
  REQUIRE(pd.has_value());
  REQUIRE(pg.has_value());
  std::vector<std::size_t> expected{1, 1, 1, 1, 1, 1, 1, 1, 1, 8};
  CHECK(part_sizes(*pd) == expected);
  CHECK(part_sizes(*pg) == expected);  // equal part-size multisets: isomorphic

  // Degrees by brute force: the eight rotations see the nine involutions;
  // each involution sees everything else.
  auto degrees = rd.graph.degree_sequence();
  std::multiset<std::size_t> ds(degrees.begin(), degrees.end());
  CHECK(ds == std::multiset<std::size_t>{9, 9, 9, 9, 9, 9, 9, 9, 16, 16, 16, 16, 16, 16, 16, 16, 16});
}

TEST_CASE("the graph of S4 is not complete multipartite") {
  auto survivors = remove_isolated(build_nilgraph(make_group("S4")));
  CHECK_FALSE(is_complete_multipartite(survivors.graph).has_value());
}

TEST_CASE("quotient blow-up certificates") {
  auto s4 = verify_quotient_blowup(make_group("S4"));
  CHECK(s4.ok);
  CHECK(s4.copies == 1);

  auto c2s3 = verify_quotient_blowup(make_group("C2xS3"));
  CHECK(c2s3.ok);
  CHECK(c2s3.copies == 2);
  CHECK(c2s3.quotient_group.size() == 6);

  auto c3s3 = verify_quotient_blowup(make_group("C3xS3"));
  CHECK(c3s3.ok);
  CHECK(c3s3.copies == 3);

  CHECK_THROWS_AS(verify_quotient_blowup(make_group("D4")), std::invalid_argument);
}

TEST_CASE("diameter") {
  auto survivors = remove_isolated(build_nilgraph(make_group("S3")));
  CHECK(diameter(survivors.graph) == 2);
  CHECK(diameter(complete(5)) == 1);
  Graph disconnected(4);
  disconnected.add_edge(0, 1);
  CHECK_FALSE(diameter(disconnected).has_value());
  CHECK(diameter(path3()) == 2);
}

TEST_CASE("degree of a 5-cycle in the graph of S5") {
  FiniteGroup s5 = make_group("S5");
  Graph g = build_nilgraph(s5, 2);
  CHECK(g.degree(elem_of(s5, "(1 2 3 4 5)", 5)) == 115);  // 120 - 5
}

TEST_CASE("hamiltonian search") {
  Graph c4(4);
  c4.add_edge(0, 1);
  c4.add_edge(1, 2);
  c4.add_edge(2, 3);
  c4.add_edge(3, 0);
  auto rep = hamiltonian(c4);
  REQUIRE(rep.status == HamiltonianReport::Status::found);
  CHECK(rep.cycle.size() == 4);

  CHECK(hamiltonian(path3()).status == HamiltonianReport::Status::none);

  auto s3 = hamiltonian(remove_isolated(build_nilgraph(make_group("S3"))).graph);
  REQUIRE(s3.status == HamiltonianReport::Status::found);
  CHECK(s3.cycle.size() == 5);

  auto s4graph = remove_isolated(build_nilgraph(make_group("S4"))).graph;
  auto s4 = hamiltonian(s4graph);
  REQUIRE(s4.status == HamiltonianReport::Status::found);
  REQUIRE(s4.cycle.size() == 23);
  for (std::size_t i = 0; i < s4.cycle.size(); ++i)
    CHECK(s4graph.adjacent(s4.cycle[i], s4.cycle[(i + 1) % s4.cycle.size()]));

  CHECK(hamiltonian(complete(30)).status == HamiltonianReport::Status::unknown);
  CHECK(hamiltonian(complete(30)).dirac);
}

TEST_CASE("induced subgraphs") {
  FiniteGroup s4 = make_group("S4");
  Graph g = build_nilgraph(s4);
  std::vector<std::size_t> transpositions{elem_of(s4, "(1 2)", 4), elem_of(s4, "(1 3)", 4),
                                          elem_of(s4, "(2 3)", 4)};
  Graph t = induced_subgraph(g, transpositions);
  CHECK(t.edge_count() == 3);  // each pair generates a copy of S3

  std::vector<std::size_t> all(g.size());
  std::iota(all.begin(), all.end(), 0u);
  Graph whole = induced_subgraph(g, all);
  CHECK(whole.edge_count() == g.edge_count());

  CHECK_THROWS_AS(induced_subgraph(g, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(induced_subgraph(g, {999}), std::invalid_argument);
}

TEST_CASE("DOT export") {
  Graph g(3, {"a", "b", "loner"});
  g.add_edge(0, 1);
  std::string dot = to_dot(g);
  CHECK(dot == "graph nilgraph {\n  \"loner\";\n  \"a\" -- \"b\";\n}\n");
}

TEST_CASE("JSON export and import round trip") {
  FiniteGroup s3 = make_group("S3");
  Graph g = build_nilgraph(s3);
  auto j = to_json(g, s3.label());
  CHECK(j["group"] == "S3");
  CHECK(j["n_vertices"] == 6);
  // edges sorted with i < j
  std::pair<std::size_t, std::size_t> prev{0, 0};
  for (const auto& e : j["edges"]) {
    std::pair<std::size_t, std::size_t> cur{e[0].get<std::size_t>(), e[1].get<std::size_t>()};
    CHECK(cur.first < cur.second);
    CHECK(prev < cur);
    prev = cur;
  }

  Graph back = from_json(j);
  CHECK(back.size() == g.size());
  CHECK(back.edge_count() == g.edge_count());
  for (std::size_t u = 0; u < g.size(); ++u)
    for (std::size_t v = 0; v < g.size(); ++v) CHECK(back.adjacent(u, v) == g.adjacent(u, v));
}

TEST_CASE("edge list input") {
  Graph g = from_edge_list_text("3\n1 2\n2 3\n");
  CHECK(g.size() == 3);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 2));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK_THROWS_AS(from_edge_list_text("2\n1 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_edge_list_text("2\n1\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_edge_list_text(""), std::invalid_argument);
}

TEST_CASE("nilgraph budget") {
  CHECK_THROWS_AS(build_nilgraph(make_group("S4"), 0, 10), budget_error);
}
