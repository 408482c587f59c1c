#include "paths.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace jstlabel {

void WeightedDigraph::set_edge(NodeId from, NodeId to, double cost) {
  auto& edges = out_.at(from);
  (void)out_.at(to);
  auto it = std::lower_bound(edges.begin(), edges.end(), to,
                             [](const std::pair<NodeId, double>& e, NodeId t) { return e.first < t; });
  if (it != edges.end() && it->first == to) {
    it->second = cost;
  } else {
    edges.insert(it, {to, cost});
  }
}

std::optional<double> WeightedDigraph::edge(NodeId from, NodeId to) const {
  const auto& edges = out_.at(from);
  auto it = std::lower_bound(edges.begin(), edges.end(), to,
                             [](const std::pair<NodeId, double>& e, NodeId t) { return e.first < t; });
  if (it == edges.end() || it->first != to) return std::nullopt;
  return it->second;
}

std::optional<double> path_cost(const WeightedDigraph& g, const std::vector<NodeId>& nodes) {
  double cost = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    auto w = g.edge(nodes[i], nodes[i + 1]);
    if (!w) return std::nullopt;
    cost += *w;
  }
  return cost;
}

KShortestPaths::KShortestPaths(const WeightedDigraph& graph, NodeId source, NodeId target)
    : graph_(graph), source_(source), target_(target) {}

std::optional<std::vector<NodeId>> KShortestPaths::shortest(
    NodeId from, const std::vector<char>& blocked_nodes,
    const std::set<std::pair<NodeId, NodeId>>& blocked_edges) const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = graph_.size();
  std::vector<double> dist(n, kInf);
  std::vector<NodeId> prev(n, std::numeric_limits<NodeId>::max());
  std::vector<char> done(n, 0);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[from] = 0.0;
  queue.push({0.0, from});
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u == target_) break;
    for (const auto& [v, w] : graph_.out_edges(u)) {
      if (blocked_nodes[v] || blocked_edges.count({u, v})) continue;
      const double nd = d + w;
      if (nd < dist[v] || (nd == dist[v] && !done[v] && u < prev[v])) {
        dist[v] = nd;
        prev[v] = u;
        queue.push({nd, v});
      }
    }
  }
  if (dist[target_] == kInf) return std::nullopt;
  std::vector<NodeId> path;
  for (NodeId v = target_; v != from; v = prev[v]) path.push_back(v);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<WeightedPath> KShortestPaths::next() {
  const std::size_t n = graph_.size();
  if (source_ >= n || target_ >= n) return std::nullopt;

  if (!started_) {
    started_ = true;
    std::vector<char> blocked(n, 0);
    auto p = shortest(source_, blocked, {});
    if (!p) return std::nullopt;
    found_.push_back(*p);
    seen_.insert(*p);
    return WeightedPath{*p, *path_cost(graph_, *p)};
  }
  if (found_.empty()) return std::nullopt;

  const std::vector<NodeId> last = found_.back();
  for (std::size_t i = 0; i + 1 < last.size(); ++i) {
    const NodeId spur = last[i];
    std::vector<char> blocked_nodes(n, 0);
    for (std::size_t r = 0; r < i; ++r) blocked_nodes[last[r]] = 1;
    std::set<std::pair<NodeId, NodeId>> blocked_edges;
    for (const auto& q : found_) {
      if (q.size() > i + 1 && std::equal(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(i) + 1, q.begin())) {
        blocked_edges.insert({q[i], q[i + 1]});
      }
    }
    auto spur_path = shortest(spur, blocked_nodes, blocked_edges);
    if (!spur_path) continue;
    std::vector<NodeId> total(last.begin(), last.begin() + static_cast<std::ptrdiff_t>(i));
    total.insert(total.end(), spur_path->begin(), spur_path->end());
    if (seen_.count(total)) continue;
    seen_.insert(total);
    pending_.insert(Candidate{*path_cost(graph_, total), std::move(total)});
  }
  if (pending_.empty()) return std::nullopt;
  Candidate best = *pending_.begin();
  pending_.erase(pending_.begin());
  found_.push_back(best.nodes);
  return WeightedPath{std::move(best.nodes), best.cost};
}

std::vector<WeightedPath> k_shortest_paths(const WeightedDigraph& graph, NodeId source, NodeId target,
                                           std::size_t k) {
  std::vector<WeightedPath> out;
  KShortestPaths search(graph, source, target);
  while (out.size() < k) {
    auto p = search.next();
    if (!p) break;
    out.push_back(std::move(*p));
  }
  return out;
}

}  // namespace jstlabel
