#pragma once

#include <utility>
#include <variant>
#include <vector>

namespace coherence {

/// Bipartite graph with left vertices 0..left-1 and right vertices
/// 0..right-1.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  BipartiteGraph(int left, int right);

  /// Throws std::invalid_argument on out-of-range or duplicate edges.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;

  int left() const { return left_; }
  int right() const { return right_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  /// Sorted right neighbours of a left vertex.
  const std::vector<int>& neighbours(int u) const { return adj_.at(static_cast<std::size_t>(u)); }

 private:
  int left_ = 0;
  int right_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
};

/// Positive multiplicity per left vertex.
using Multiplicity = std::vector<int>;
/// Edge set, as (left, right) pairs sorted ascending.
using EdgeSet = std::vector<std::pair<int, int>>;

struct HallViolation {
  std::vector<int> subset;        // W, left vertices
  std::vector<int> neighbourhood;  // N(W), right vertices
};

using MatchingResult = std::variant<EdgeSet, HallViolation>;

inline bool has_matching(const MatchingResult& r) { return std::holds_alternative<EdgeSet>(r); }

/// Maximum-cardinality matching by phased augmenting paths (Hopcroft-Karp).
EdgeSet max_matching(const BipartiteGraph& g);

/// A matching saturating the left side, or a set W with |N(W)| < |W|.
MatchingResult hall_check(const BipartiteGraph& g);

struct SplitGraph {
  BipartiteGraph graph;
  std::vector<int> original;  // split left vertex -> original left vertex
};

/// Replaces each left vertex x by m(x) clones carrying x's edges.
SplitGraph split_graph(const BipartiteGraph& g, const Multiplicity& m);

/// An m-matching, or a set W with |N(W)| < sum of m over W.
MatchingResult m_matching(const BipartiteGraph& g, const Multiplicity& m);

std::vector<int> neighbourhood(const BipartiteGraph& g, const std::vector<int>& subset);
bool is_m_matching(const BipartiteGraph& g, const Multiplicity& m, const EdgeSet& matching);
bool is_hall_violation(const BipartiteGraph& g, const Multiplicity& m, const HallViolation& v);

}  // namespace coherence
