#pragma once

// From groups to graphs: vertices are group elements, edges join pairs that
// generate a non-nilpotent subgroup. Removing isolated vertices afterwards
// (see remove_isolated) yields the non-nilpotent graph proper. Pair tests
// fan out across workers against the immutable group.

#include <cstdint>
#include <string>
#include <vector>

#include "nilgraph/graph.hpp"
#include "nilgraph/group.hpp"
#include "nilgraph/parallel.hpp"

namespace nilgraph {

inline Graph build_nilgraph(const FiniteGroup& g, unsigned workers = 0,
                            std::size_t vertex_budget = 20000) {
  if (g.size() > vertex_budget) throw budget_error("build_nilgraph: group too large");
  PairNilpotencyCache census(g, workers);
  std::vector<std::string> labels;
  labels.reserve(g.size());
  for (Elem x = 0; x < g.size(); ++x) labels.push_back(g.element_name(x));
  Graph graph(g.size(), std::move(labels));
  parallel_for(g.size(), workers, [&](std::size_t x) {
    for (std::size_t y = x + 1; y < g.size(); ++y)
      if (!census.pair_nilpotent(Elem(x), Elem(y))) graph.set_bit(x, y);
  });
  graph.mirror_upper();
  return graph;
}

// Certificate that the non-nilpotent graph of G is the |Z*(G)|-fold blow-up
// of the non-nilpotent graph of G/Z*(G), realized by the coset projection.
struct BlowupCheck {
  bool ok = false;
  std::size_t copies = 0;              // |Z*(G)|
  FiniteGroup quotient_group;
  Graph graph;                         // non-nilpotent graph of G
  Graph quotient_graph;                // non-nilpotent graph of G/Z*(G)
  std::vector<std::size_t> projection; // per vertex of `graph`, its vertex in `quotient_graph`
  std::string failure;
};

inline BlowupCheck verify_quotient_blowup(const FiniteGroup& g, unsigned workers = 0) {
  BlowupCheck out;
  Subgroup z = hypercenter(g);
  if (z.order() == g.size())
    throw std::invalid_argument("verify_quotient_blowup: nilpotent group has no non-nilpotent graph");
  out.copies = z.order();
  out.quotient_group = quotient(g, z, g.label() + "/Z*");
  const auto& qr = static_cast<const QuotientRep&>(out.quotient_group.rep());

  IsolatedRemoval rg = remove_isolated(build_nilgraph(g, workers));
  IsolatedRemoval rq = remove_isolated(build_nilgraph(out.quotient_group, workers));
  out.graph = rg.graph;
  out.quotient_graph = rq.graph;

  std::vector<std::size_t> coset_vertex(out.quotient_group.size(), SIZE_MAX);
  for (std::size_t i = 0; i < rq.kept.size(); ++i) coset_vertex[rq.kept[i]] = i;

  out.projection.assign(rg.kept.size(), SIZE_MAX);
  std::vector<std::size_t> fiber(rq.kept.size(), 0);
  for (std::size_t i = 0; i < rg.kept.size(); ++i) {
    std::size_t c = coset_vertex[qr.coset_of(Elem(rg.kept[i]))];
    if (c == SIZE_MAX) {
      out.failure = "vertex projects onto an isolated coset";
      return out;
    }
    out.projection[i] = c;
    ++fiber[c];
  }
  for (std::size_t c = 0; c < fiber.size(); ++c)
    if (fiber[c] != out.copies) {
      out.failure = "projection is not |Z*|-to-1";
      return out;
    }
  for (std::size_t i = 0; i < rg.kept.size(); ++i)
    for (std::size_t j = i + 1; j < rg.kept.size(); ++j) {
      bool want = out.projection[i] != out.projection[j] &&
                  out.quotient_graph.adjacent(out.projection[i], out.projection[j]);
      if (out.graph.adjacent(i, j) != want) {
        out.failure = "adjacency not preserved by the coset projection";
        return out;
      }
    }
  out.ok = true;
  return out;
}

}  // namespace nilgraph
