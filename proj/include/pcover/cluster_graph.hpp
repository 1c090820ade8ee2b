#pragma once

#include <vector>

#include "pcover/graph.hpp"
#include "pcover/rational.hpp"

namespace pcover {

struct ClusterEdge {
  int i = 0;
  int j = 0;
  Rational density;
};

/// Graph on cluster indices 0..t-1 with the recorded pair densities of its
/// edges; an edge is present iff its density reached the threshold in force.
struct ClusterGraph {
  int t = 0;
  Rational threshold;
  std::vector<ClusterEdge> edges;

  Graph as_graph() const {
    std::vector<Edge> e;
    e.reserve(edges.size());
    for (const auto& ce : edges) e.push_back({ce.i, ce.j});
    return Graph(t, std::move(e));
  }
};

}  // namespace pcover
