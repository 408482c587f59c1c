#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace jstlabel {

using NodeId = std::uint32_t;

// Directed graph with non-negative edge costs.
class WeightedDigraph {
 public:
  explicit WeightedDigraph(std::size_t nodes = 0) : out_(nodes) {}

  std::size_t size() const noexcept { return out_.size(); }
  NodeId add_node() {
    out_.emplace_back();
    return static_cast<NodeId>(out_.size() - 1);
  }
  // Replaces the cost if the edge already exists.
  void set_edge(NodeId from, NodeId to, double cost);
  std::optional<double> edge(NodeId from, NodeId to) const;
  const std::vector<std::pair<NodeId, double>>& out_edges(NodeId n) const { return out_.at(n); }

 private:
  std::vector<std::vector<std::pair<NodeId, double>>> out_;  // kept sorted by target
};

struct WeightedPath {
  std::vector<NodeId> nodes;
  double cost = 0.0;
};

// Cost summed front to back along the path; nullopt if an edge is missing.
std::optional<double> path_cost(const WeightedDigraph& g, const std::vector<NodeId>& nodes);

// Lazily yields loopless source->target paths in non-decreasing cost order
// (Yen's algorithm). Equal costs are ordered by node sequence.
class KShortestPaths {
 public:
  KShortestPaths(const WeightedDigraph& graph, NodeId source, NodeId target);

  std::optional<WeightedPath> next();

 private:
  struct Candidate {
    double cost;
    std::vector<NodeId> nodes;
    bool operator<(const Candidate& o) const { return cost != o.cost ? cost < o.cost : nodes < o.nodes; }
  };

  std::optional<std::vector<NodeId>> shortest(NodeId from, const std::vector<char>& blocked_nodes,
                                              const std::set<std::pair<NodeId, NodeId>>& blocked_edges) const;

  const WeightedDigraph& graph_;
  NodeId source_;
  NodeId target_;
  bool started_ = false;
  std::vector<std::vector<NodeId>> found_;
  std::set<Candidate> pending_;
  std::set<std::vector<NodeId>> seen_;
};

std::vector<WeightedPath> k_shortest_paths(const WeightedDigraph& graph, NodeId source, NodeId target,
                                           std::size_t k);

}  // namespace jstlabel
