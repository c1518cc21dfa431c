#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "coherence/words.hpp"

namespace testing {

using coherence::Letter;
using coherence::Word;

inline Word random_word(std::mt19937_64& rng, int gens, int length) {
  std::uniform_int_distribution<int> g(0, gens - 1);
  std::bernoulli_distribution inv(0.5);
  Word w;
  for (int i = 0; i < length; ++i) w.emplace_back(g(rng), inv(rng));
  return w;
}

inline Word random_reduced_word(std::mt19937_64& rng, int gens, int length) {
  Word w;
  std::uniform_int_distribution<int> g(0, gens - 1);
  std::bernoulli_distribution inv(0.5);
  while (static_cast<int>(w.size()) < length) {
    Letter l(g(rng), inv(rng));
    if (!w.empty() && w.back() == l.inverse()) continue;
    w.push_back(l);
  }
  return w;
}

// Repeatedly deletes the leftmost cancelling pair; quadratic but obviously correct.
inline Word naive_free_reduce(Word w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == w[i + 1].inverse()) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline Word naive_rotate(const Word& w, std::size_t k) {
  Word out;
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w[(i + k) % w.size()]);
  return out;
}

inline bool naive_is_rotation(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (naive_rotate(a, k) == b) return true;
  return false;
}

inline Word naive_inverse(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Word cat(const Word& a, const Word& b) {
  Word out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace testing

#include "coherence/matching.hpp"

namespace testing {

// m-matching exists iff every subset S of the left side has sum m(S) <= |N(S)|.
inline bool hall_holds_brute_force(const coherence::BipartiteGraph& g, const coherence::Multiplicity& m) {
  const int l = g.left();
  for (unsigned mask = 1; mask < (1u << l); ++mask) {
    long long demand = 0;
    unsigned nbrs = 0;
    for (int u = 0; u < l; ++u) {
      if (!(mask >> u & 1u)) continue;
      demand += m[static_cast<std::size_t>(u)];
      for (int v = 0; v < g.right(); ++v)
        if (g.has_edge(u, v)) nbrs |= 1u << v;
    }
    if (demand > __builtin_popcount(nbrs)) return false;
  }
  return true;
}

// Checks a matching witness without the library: edges exist, each left u has
// exactly m(u) partners, each right vertex is used at most once.
inline bool matching_valid_brute_force(const coherence::BipartiteGraph& g, const coherence::Multiplicity& m,
                                       const coherence::EdgeSet& edges) {
  std::vector<int> left(static_cast<std::size_t>(g.left()), 0), right(static_cast<std::size_t>(g.right()), 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= g.left() || v < 0 || v >= g.right() || !g.has_edge(u, v)) return false;
    ++left[static_cast<std::size_t>(u)];
    ++right[static_cast<std::size_t>(v)];
  }
  for (std::size_t u = 0; u < left.size(); ++u)
    if (left[u] != m[u]) return false;
  for (int c : right)
    if (c > 1) return false;
  return true;
}

// Checks a violation witness without the library: N(S) computed directly.
inline bool violation_valid_brute_force(const coherence::BipartiteGraph& g, const coherence::Multiplicity& m,
                                        const coherence::HallViolation& v) {
  if (v.subset.empty()) return false;
  long long demand = 0;
  std::vector<int> nbrs;
  for (int u : v.subset) {
    if (u < 0 || u >= g.left()) return false;
    demand += m[static_cast<std::size_t>(u)];
    for (int w = 0; w < g.right(); ++w)
      if (g.has_edge(u, w) && std::find(nbrs.begin(), nbrs.end(), w) == nbrs.end()) nbrs.push_back(w);
  }
  std::sort(nbrs.begin(), nbrs.end());
  std::vector<int> claimed = v.neighbourhood;
  std::sort(claimed.begin(), claimed.end());
  return claimed == nbrs && demand > static_cast<long long>(nbrs.size());
}

inline coherence::BipartiteGraph graph_from_mask(int l, int r, unsigned mask) {
  coherence::BipartiteGraph g(l, r);
  for (int u = 0; u < l; ++u)
    for (int v = 0; v < r; ++v)
      if (mask >> (u * r + v) & 1u) g.add_edge(u, v);
  return g;
}

}  // namespace testing
