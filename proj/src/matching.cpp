#include "coherence/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

namespace coherence {

BipartiteGraph::BipartiteGraph(int left, int right)
    : left_(left), right_(right), adj_(static_cast<std::size_t>(left)) {
  if (left < 0 || right < 0) throw std::invalid_argument("BipartiteGraph: negative size");
}

void BipartiteGraph::add_edge(int u, int v) {
  if (u < 0 || u >= left_ || v < 0 || v >= right_)
    throw std::invalid_argument("BipartiteGraph: edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
  auto& nb = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it != nb.end() && *it == v)
    throw std::invalid_argument("BipartiteGraph: duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  nb.insert(it, v);
  edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), std::pair{u, v}), {u, v});
}

bool BipartiteGraph::has_edge(int u, int v) const {
  if (u < 0 || u >= left_) return false;
  const auto& nb = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

namespace {

constexpr int kNil = -1;
constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  const BipartiteGraph& g;
  std::vector<int> pair_left, pair_right, dist;

  explicit HopcroftKarp(const BipartiteGraph& graph)
      : g(graph),
        pair_left(static_cast<std::size_t>(graph.left()), kNil),
        pair_right(static_cast<std::size_t>(graph.right()), kNil),
        dist(static_cast<std::size_t>(graph.left()), kInf) {}

  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < g.left(); ++u) {
      if (pair_left[static_cast<std::size_t>(u)] == kNil) {
        dist[static_cast<std::size_t>(u)] = 0;
        q.push(u);
      } else {
        dist[static_cast<std::size_t>(u)] = kInf;
      }
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.neighbours(u)) {
        int w = pair_right[static_cast<std::size_t>(v)];
        if (w == kNil) {
          found = true;
        } else if (dist[static_cast<std::size_t>(w)] == kInf) {
          dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : g.neighbours(u)) {
      int w = pair_right[static_cast<std::size_t>(v)];
      if (w == kNil || (dist[static_cast<std::size_t>(w)] == dist[static_cast<std::size_t>(u)] + 1 && dfs(w))) {
        pair_left[static_cast<std::size_t>(u)] = v;
        pair_right[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    dist[static_cast<std::size_t>(u)] = kInf;
    return false;
  }

  void run() {
    while (bfs())
      for (int u = 0; u < g.left(); ++u)
        if (pair_left[static_cast<std::size_t>(u)] == kNil) dfs(u);
  }
};

}  // namespace

EdgeSet max_matching(const BipartiteGraph& g) {
  HopcroftKarp hk(g);
  hk.run();
  EdgeSet out;
  for (int u = 0; u < g.left(); ++u)
    if (int v = hk.pair_left[static_cast<std::size_t>(u)]; v != kNil) out.emplace_back(u, v);
  return out;
}

MatchingResult hall_check(const BipartiteGraph& g) {
  HopcroftKarp hk(g);
  hk.run();
  int unmatched = kNil;
  for (int u = 0; u < g.left() && unmatched == kNil; ++u)
    if (hk.pair_left[static_cast<std::size_t>(u)] == kNil) unmatched = u;

  if (unmatched == kNil) {
    EdgeSet out;
    for (int u = 0; u < g.left(); ++u) out.emplace_back(u, hk.pair_left[static_cast<std::size_t>(u)]);
    return out;
  }

  // Alternating reachability from an unmatched left vertex. Every right
  // vertex reached is matched (the matching is maximum), so |N(W)| = |W| - 1.
  std::vector<bool> left_seen(static_cast<std::size_t>(g.left()), false);
  std::vector<bool> right_seen(static_cast<std::size_t>(g.right()), false);
  std::queue<int> q;
  q.push(unmatched);
  left_seen[static_cast<std::size_t>(unmatched)] = true;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : g.neighbours(u)) {
      if (right_seen[static_cast<std::size_t>(v)]) continue;
      right_seen[static_cast<std::size_t>(v)] = true;
      int w = hk.pair_right[static_cast<std::size_t>(v)];
      if (w != kNil && !left_seen[static_cast<std::size_t>(w)]) {
        left_seen[static_cast<std::size_t>(w)] = true;
        q.push(w);
      }
    }
  }
  HallViolation out;
  for (int u = 0; u < g.left(); ++u)
    if (left_seen[static_cast<std::size_t>(u)]) out.subset.push_back(u);
  for (int v = 0; v < g.right(); ++v)
    if (right_seen[static_cast<std::size_t>(v)]) out.neighbourhood.push_back(v);
  return out;
}

SplitGraph split_graph(const BipartiteGraph& g, const Multiplicity& m) {
  if (static_cast<int>(m.size()) != g.left()) throw std::invalid_argument("split_graph: multiplicity size mismatch");
  int total = 0;
  for (int k : m) {
    if (k < 1) throw std::invalid_argument("split_graph: multiplicities must be positive");
    total += k;
  }
  SplitGraph out{BipartiteGraph(total, g.right()), {}};
  for (int x = 0; x < g.left(); ++x) {
    for (int c = 0; c < m[static_cast<std::size_t>(x)]; ++c) {
      const int clone = static_cast<int>(out.original.size());
      out.original.push_back(x);
      for (int v : g.neighbours(x)) out.graph.add_edge(clone, v);
    }
  }
  return out;
}

MatchingResult m_matching(const BipartiteGraph& g, const Multiplicity& m) {
  SplitGraph split = split_graph(g, m);
  MatchingResult r = hall_check(split.graph);
  if (auto* matching = std::get_if<EdgeSet>(&r)) {
    EdgeSet out;
    for (auto [clone, v] : *matching) out.emplace_back(split.original[static_cast<std::size_t>(clone)], v);
    std::sort(out.begin(), out.end());
    if (!is_m_matching(g, m, out)) throw std::logic_error("m_matching: merged matching failed verification");
    return out;
  }
  const auto& split_violation = std::get<HallViolation>(r);
  std::set<int> originals;
  for (int clone : split_violation.subset) originals.insert(split.original[static_cast<std::size_t>(clone)]);
  HallViolation out;
  out.subset.assign(originals.begin(), originals.end());
  out.neighbourhood = neighbourhood(g, out.subset);
  if (!is_hall_violation(g, m, out)) throw std::logic_error("m_matching: merged violation failed verification");
  return out;
}

std::vector<int> neighbourhood(const BipartiteGraph& g, const std::vector<int>& subset) {
  std::set<int> out;
  for (int u : subset)
    for (int v : g.neighbours(u)) out.insert(v);
  return {out.begin(), out.end()};
}

bool is_m_matching(const BipartiteGraph& g, const Multiplicity& m, const EdgeSet& matching) {
  if (static_cast<int>(m.size()) != g.left()) return false;
  std::vector<int> degree(static_cast<std::size_t>(g.left()), 0);
  std::vector<bool> used(static_cast<std::size_t>(g.right()), false);
  std::set<std::pair<int, int>> distinct;
  for (auto [u, v] : matching) {
    if (!g.has_edge(u, v) || !distinct.insert({u, v}).second) return false;
    if (used[static_cast<std::size_t>(v)]) return false;
    used[static_cast<std::size_t>(v)] = true;
    ++degree[static_cast<std::size_t>(u)];
  }
  for (int u = 0; u < g.left(); ++u)
    if (degree[static_cast<std::size_t>(u)] != m[static_cast<std::size_t>(u)]) return false;
  return true;
}

bool is_hall_violation(const BipartiteGraph& g, const Multiplicity& m, const HallViolation& v) {
  if (static_cast<int>(m.size()) != g.left() || v.subset.empty()) return false;
  std::set<int> w(v.subset.begin(), v.subset.end());
  if (w.size() != v.subset.size()) return false;
  long long demand = 0;
  for (int u : w) {
    if (u < 0 || u >= g.left()) return false;
    demand += m[static_cast<std::size_t>(u)];
  }
  if (neighbourhood(g, v.subset) != v.neighbourhood) return false;
  return static_cast<long long>(v.neighbourhood.size()) < demand;
}

}  // namespace coherence
