#pragma once

// Small directed graph with tagged edges, used to order requests in the
// polynomial planners. An edge a -> b means "a must be added before b".

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

namespace gurag {

enum class EdgeTag { kPositivePrecondition, kNegationBlocks };

template <typename Vertex>
class OrderingGraph {
 public:
  struct Edge {
    Vertex from;
    Vertex to;
    EdgeTag tag;
    friend auto operator<=>(const Edge&, const Edge&) = default;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  void addVertex(const Vertex& v) { vertices_.insert(v); }

  /// Both endpoints must already be vertices; otherwise the edge is ignored.
  void addEdge(const Vertex& from, const Vertex& to, EdgeTag tag) {
    if (vertices_.contains(from) && vertices_.contains(to)) {
      edges_.insert({from, to, tag});
    }
  }

  const std::set<Vertex>& vertices() const noexcept { return vertices_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  bool contains(const Vertex& v) const { return vertices_.contains(v); }

  std::vector<Vertex> predecessors(const Vertex& v) const {
    std::vector<Vertex> out;
    for (const auto& e : edges_) {
      if (e.to == v) out.push_back(e.from);
    }
    return out;
  }

  /// Removes v and every incident edge.
  void removeVertex(const Vertex& v) {
    vertices_.erase(v);
    std::erase_if(edges_, [&](const Edge& e) { return e.from == v || e.to == v; });
  }

  void removeEdgesFrom(const std::function<bool(const Vertex&)>& pred) {
    std::erase_if(edges_, [&](const Edge& e) { return pred(e.from); });
  }

  /// Vertices that lie on a directed cycle (members of non-trivial strongly
  /// connected components, or with a self loop).
  std::set<Vertex> cyclicVertices() const {
    // Tarjan, iterative over a dense index.
    std::vector<Vertex> byIndex(vertices_.begin(), vertices_.end());
    std::map<Vertex, int> index;
    for (int i = 0; i < static_cast<int>(byIndex.size()); ++i) index[byIndex[i]] = i;
    std::vector<std::vector<int>> adj(byIndex.size());
    std::set<int> selfLoops;
    for (const auto& e : edges_) {
      int a = index.at(e.from), b = index.at(e.to);
      adj[a].push_back(b);
      if (a == b) selfLoops.insert(a);
    }

    const int n = static_cast<int>(byIndex.size());
    std::vector<int> order(n, -1), low(n, 0);
    std::vector<bool> onStack(n, false);
    std::vector<int> stack;
    std::set<Vertex> out;
    int counter = 0;

    for (int root = 0; root < n; ++root) {
      if (order[root] != -1) continue;
      std::vector<std::pair<int, std::size_t>> work{{root, 0}};
      order[root] = low[root] = counter++;
      stack.push_back(root);
      onStack[root] = true;
      while (!work.empty()) {
        auto& [v, next] = work.back();
        if (next < adj[v].size()) {
          int w = adj[v][next++];
          if (order[w] == -1) {
            order[w] = low[w] = counter++;
            stack.push_back(w);
            onStack[w] = true;
            work.push_back({w, 0});
          } else if (onStack[w]) {
            low[v] = std::min(low[v], order[w]);
          }
          continue;
        }
        if (low[v] == order[v]) {
          std::vector<int> component;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            onStack[w] = false;
            component.push_back(w);
          } while (w != v);
          if (component.size() > 1 || selfLoops.contains(v)) {
            for (int c : component) out.insert(byIndex[c]);
          }
        }
        int finished = v;
        work.pop_back();
        if (!work.empty()) {
          int parent = work.back().first;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }
    return out;
  }

  bool hasCycle() const { return !cyclicVertices().empty(); }

  /// Kahn's algorithm; among ready vertices the smallest by `less` goes first.
  /// Returns nullopt if the graph has a cycle.
  template <typename Less = std::less<Vertex>>
  std::optional<std::vector<Vertex>> topologicalOrder(Less less = Less{}) const {
    std::map<Vertex, int> indegree;
    for (const auto& v : vertices_) indegree[v] = 0;
    for (const auto& e : edges_) ++indegree[e.to];
    auto greater = [&](const Vertex& a, const Vertex& b) { return less(b, a); };
    std::priority_queue<Vertex, std::vector<Vertex>, decltype(greater)> ready(greater);
    for (const auto& [v, d] : indegree) {
      if (d == 0) ready.push(v);
    }
    std::vector<Vertex> out;
    while (!ready.empty()) {
      Vertex v = ready.top();
      ready.pop();
      out.push_back(v);
      for (const auto& e : edges_) {
        if (e.from == v && --indegree[e.to] == 0) ready.push(e.to);
      }
    }
    if (out.size() != vertices_.size()) return std::nullopt;
    return out;
  }

 private:
  std::set<Vertex> vertices_;
  std::set<Edge> edges_;
};

}  // namespace gurag
