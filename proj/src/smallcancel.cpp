#include "coherence/smallcancel.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>

namespace coherence {

namespace {

std::size_t common_prefix(const Word& a, const Word& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return k;
}

int min_relator_length(const Presentation& p) {
  int m = std::numeric_limits<int>::max();
  for (const auto& r : p.relators) m = std::min(m, static_cast<int>(r.size()));
  return m;
}

// Fewest pieces covering the cyclic word when a piece starting at position
// i may have any length up to reach[i].
int cyclic_cover(const std::vector<int>& reach) {
  const int n = static_cast<int>(reach.size());
  if (std::any_of(reach.begin(), reach.end(), [](int r) { return r == 0; })) return kUnbounded;
  int best = std::numeric_limits<int>::max();
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(static_cast<std::size_t>(n) + 1, std::numeric_limits<int>::max());
    dist[0] = 0;
    for (int j = 0; j < n; ++j) {
      if (dist[static_cast<std::size_t>(j)] == std::numeric_limits<int>::max()) continue;
      const int r = reach[static_cast<std::size_t>((s + j) % n)];
      for (int k = 1; k <= r && j + k <= n; ++k)
        dist[static_cast<std::size_t>(j + k)] =
            std::min(dist[static_cast<std::size_t>(j + k)], dist[static_cast<std::size_t>(j)] + 1);
    }
    best = std::min(best, dist[static_cast<std::size_t>(n)]);
  }
  return best;
}

}  // namespace

std::vector<Word> symmetrized_set(const Presentation& p) {
  std::set<Word> out;
  for (const auto& r : p.relators) {
    const Word inv = inverse(r);
    for (std::size_t s = 0; s < r.size(); ++s) {
      out.insert(rotate(r, s));
      out.insert(rotate(inv, s));
    }
  }
  return {out.begin(), out.end()};
}

PieceReport pieces(const Presentation& p) {
  PieceReport report;
  const std::vector<Word> members = symmetrized_set(p);
  // Sorted members: the longest common prefix with any other member is
  // attained at a lexicographic neighbour.
  std::vector<std::size_t> reach(members.size(), 0);
  for (std::size_t i = 0; i + 1 < members.size(); ++i) {
    const std::size_t k = common_prefix(members[i], members[i + 1]);
    reach[i] = std::max(reach[i], k);
    reach[i + 1] = std::max(reach[i + 1], k);
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (std::size_t k = common_prefix(members[i], members[j]); k > 0)
        report.pieces.insert(Word(members[i].begin(), members[i].begin() + static_cast<std::ptrdiff_t>(k)));
  for (const auto& piece : report.pieces)
    report.max_piece_length = std::max(report.max_piece_length, static_cast<int>(piece.size()));

  for (const auto& r : p.relators) {
    std::vector<int> r_reach(r.size());
    int longest = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const Word rot = rotate(r, i);
      auto it = std::lower_bound(members.begin(), members.end(), rot);
      r_reach[i] = static_cast<int>(reach[static_cast<std::size_t>(it - members.begin())]);
      longest = std::max(longest, r_reach[i]);
    }
    report.factorization_length.push_back(cyclic_cover(r_reach));
    report.max_piece_in_relator.push_back(longest);
  }
  report.metric_ratio =
      p.relators.empty() ? Rational::make(0, 1) : Rational::make(report.max_piece_length, min_relator_length(p));
  return report;
}

int c_value(const PieceReport& report) {
  int best = kUnbounded;
  for (int k : report.factorization_length)
    if (k != kUnbounded && (best == kUnbounded || k < best)) best = k;
  return best;
}

int c_value(const Presentation& p) { return c_value(pieces(p)); }

std::vector<std::pair<int, int>> StarGraph::simple_edges() const {
  std::set<std::pair<int, int>> out;
  for (auto [u, v] : edges)
    if (u != v) out.insert({std::min(u, v), std::max(u, v)});
  return {out.begin(), out.end()};
}

StarGraph star_graph(const Presentation& p) {
  StarGraph g;
  g.vertex_count = 2 * p.generator_count();
  for (const auto& r : p.relators) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      const Letter y = r[j];
      const Letter z = r[(j + 1) % r.size()];
      g.edges.emplace_back(static_cast<int>(y.inverse().code()), static_cast<int>(z.code()));
    }
  }
  return g;
}

namespace {

std::vector<std::vector<int>> simple_adjacency(const StarGraph& g) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertex_count));
  for (auto [u, v] : g.simple_edges()) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

}  // namespace

int girth(const StarGraph& g) {
  const auto adj = simple_adjacency(g);
  const int n = g.vertex_count;
  int best = std::numeric_limits<int>::max();
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1), parent(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : adj[static_cast<std::size_t>(u)]) {
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(v)] = u;
          q.push(v);
        } else if (parent[static_cast<std::size_t>(u)] != v) {
          best = std::min(best, dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(v)] + 1);
        }
      }
    }
  }
  return best == std::numeric_limits<int>::max() ? kUnbounded : best;
}

CycleCount count_cycles(const StarGraph& g, long long limit) {
  const auto adj = simple_adjacency(g);
  const int n = g.vertex_count;
  CycleCount out;
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);
  // Each cycle is counted once: rooted at its smallest vertex, and with the
  // second vertex smaller than the last.
  std::function<void(int, int, int, int)> extend = [&](int root, int second, int u, int depth) {
    if (out.capped) return;
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (v < root) continue;
      if (v == root) {
        if (depth >= 3 && second < u && ++out.count >= limit) out.capped = true;
        continue;
      }
      if (on_path[static_cast<std::size_t>(v)]) continue;
      on_path[static_cast<std::size_t>(v)] = true;
      extend(root, depth == 1 ? v : second, v, depth + 1);
      on_path[static_cast<std::size_t>(v)] = false;
      if (out.capped) return;
    }
  };
  for (int root = 0; root < n && !out.capped; ++root) {
    on_path[static_cast<std::size_t>(root)] = true;
    extend(root, -1, root, 1);
    on_path[static_cast<std::size_t>(root)] = false;
  }
  return out;
}

int t_value(const Presentation& p) { return girth(star_graph(p)); }

bool property_p(const Presentation& p, const PieceReport& report) {
  if (report.max_piece_length > 1) return false;
  return std::all_of(p.relators.begin(), p.relators.end(),
                     [](const Word& r) { return exponent_decompose(r).exponent == 1; });
}

bool property_p(const Presentation& p) { return property_p(p, pieces(p)); }

MetricGate metric_gate(const Presentation& p, const PieceReport& report) {
  MetricGate gate;
  gate.ratio = report.metric_ratio;
  gate.certified_dehn = true;
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    if (6 * report.max_piece_in_relator[i] >= static_cast<int>(p.relators[i].size())) gate.certified_dehn = false;
  return gate;
}

MetricGate metric_gate(const Presentation& p) { return metric_gate(p, pieces(p)); }

Word relator_member(const Presentation& p, int relator, bool inverted, int rotation) {
  if (relator < 0 || relator >= static_cast<int>(p.relators.size()))
    throw std::invalid_argument("relator_member: no relator " + std::to_string(relator));
  const Word& r = p.relators[static_cast<std::size_t>(relator)];
  if (rotation < 0 || rotation >= static_cast<int>(r.size()))
    throw std::invalid_argument("relator_member: rotation out of range");
  return rotate(inverted ? inverse(r) : r, static_cast<std::size_t>(rotation));
}

Word apply_move(const Presentation& p, const Word& word, const DehnMove& move) {
  const std::size_t n = word.size();
  if (move.kind == DehnMove::Kind::tighten) {
    if (n < 2 || move.position < 0 || static_cast<std::size_t>(move.position) >= n)
      throw std::invalid_argument("apply_move: tighten position out of range");
    const std::size_t i = static_cast<std::size_t>(move.position);
    if (word[i].inverse() != word[(i + 1) % n]) throw std::invalid_argument("apply_move: letters do not cancel");
    if (i + 1 < n) {
      Word out = word;
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(i), out.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      return out;
    }
    return Word(word.begin() + 1, word.end() - 1);
  }
  const Word member = relator_member(p, move.relator, move.inverted, move.rotation);
  const std::size_t len = static_cast<std::size_t>(move.length);
  if (move.length < 1 || len > n || len > member.size() || 2 * len <= member.size())
    throw std::invalid_argument("apply_move: replace length out of range");
  if (move.at < 0 || static_cast<std::size_t>(move.at) >= n) throw std::invalid_argument("apply_move: start out of range");
  const std::size_t at = static_cast<std::size_t>(move.at);
  for (std::size_t k = 0; k < len; ++k)
    if (word[(at + k) % n] != member[k]) throw std::invalid_argument("apply_move: subword is not a relator prefix");
  const Word expected = inverse(Word(member.begin() + static_cast<std::ptrdiff_t>(len), member.end()));
  if (move.replacement != expected) throw std::invalid_argument("apply_move: wrong replacement");
  Word out = move.replacement;
  if (len < n) {
    const Word rest = cyclic_subword(word, (at + len) % n, n - len);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  return out;
}

DehnResult dehn_solve(const Presentation& p, const Word& u) {
  DehnResult result;
  Word word = u;
  for (;;) {
    // Cyclic tightening first.
    bool tightened = true;
    while (tightened && word.size() >= 2) {
      tightened = false;
      for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i].inverse() == word[(i + 1) % word.size()]) {
          DehnMove move;
          move.kind = DehnMove::Kind::tighten;
          move.position = static_cast<int>(i);
          word = apply_move(p, word, move);
          result.trace.push_back(std::move(move));
          tightened = true;
          break;
        }
      }
    }
    if (word.empty()) {
      result.verdict = DehnVerdict::trivial;
      break;
    }

    std::optional<DehnMove> best;
    const std::size_t n = word.size();
    for (std::size_t ri = 0; ri < p.relators.size() && !best; ++ri) {
      const Word& r = p.relators[ri];
      const std::size_t cap = std::min(n, r.size());
      for (std::size_t at = 0; at < n && !best; ++at) {
        for (int inv = 0; inv < 2; ++inv) {
          for (std::size_t s = 0; s < r.size(); ++s) {
            const Word member = relator_member(p, static_cast<int>(ri), inv == 1, static_cast<int>(s));
            std::size_t len = 0;
            while (len < cap && word[(at + len) % n] == member[len]) ++len;
            if (2 * len <= r.size()) continue;
            if (best && static_cast<std::size_t>(best->length) >= len) continue;
            DehnMove move;
            move.kind = DehnMove::Kind::replace;
            move.relator = static_cast<int>(ri);
            move.inverted = inv == 1;
            move.rotation = static_cast<int>(s);
            move.at = static_cast<int>(at);
            move.length = static_cast<int>(len);
            move.replacement = inverse(Word(member.begin() + static_cast<std::ptrdiff_t>(len), member.end()));
            best = std::move(move);
          }
        }
      }
    }
    if (!best) break;
    word = apply_move(p, word, *best);
    result.trace.push_back(std::move(*best));
  }
  result.terminal = word;
  return result;
}

}  // namespace coherence
