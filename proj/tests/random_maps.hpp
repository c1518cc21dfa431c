#pragma once

#include <memory>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "coherence/complex.hpp"
#include "coherence/reduction.hpp"

namespace testing {

using coherence::CombinatorialMap;
using coherence::EdgePath;
using coherence::EdgeStep;
using coherence::Triangle;
using coherence::TwoComplex;
using coherence::WeightFunction;

inline int naive_step_source(const TwoComplex& x, EdgeStep s) {
  return s.reversed ? x.edge(s.edge).target : x.edge(s.edge).source;
}

inline int naive_step_target(const TwoComplex& x, EdgeStep s) {
  return s.reversed ? x.edge(s.edge).source : x.edge(s.edge).target;
}

// Random closed, cyclically reduced edge path of the given length from v.
inline std::optional<EdgePath> random_closed_path(std::mt19937_64& rng, const TwoComplex& x, int v, int length) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    EdgePath path;
    int at = v;
    bool ok = true;
    for (int i = 0; i < length && ok; ++i) {
      std::vector<EdgeStep> options;
      for (int e = 0; e < x.edge_count(); ++e)
        for (bool rev : {false, true}) {
          EdgeStep s{e, rev};
          if (naive_step_source(x, s) != at) continue;
          if (!path.empty() && path.back().edge == e && path.back().reversed != rev) continue;
          options.push_back(s);
        }
      if (options.empty()) {
        ok = false;
        break;
      }
      EdgeStep s = options[rng() % options.size()];
      path.push_back(s);
      at = naive_step_target(x, s);
    }
    if (!ok || at != v) continue;
    const EdgeStep first = path.front(), last = path.back();
    if (path.size() > 1 && first.edge == last.edge && first.reversed != last.reversed) continue;
    return path;
  }
  return std::nullopt;
}

// 1 or 2 vertices, up to 4 edges, up to max_faces faces of boundary length <= max_len.
inline std::shared_ptr<TwoComplex> random_complex(std::mt19937_64& rng, int max_faces = 6, int max_len = 8) {
  auto x = std::make_shared<TwoComplex>();
  const int vertices = 1 + static_cast<int>(rng() % 2);
  for (int v = 0; v < vertices; ++v) x->add_vertex("v" + std::to_string(v));
  const int edges = vertices + static_cast<int>(rng() % 3);
  for (int e = 0; e < edges; ++e) {
    int a = static_cast<int>(rng() % vertices), b = static_cast<int>(rng() % vertices);
    if (e < vertices - 1) a = e, b = e + 1;  // keep the 1-skeleton connected
    x->add_edge(a, b, std::nullopt, "e" + std::to_string(e));
  }
  const int faces = 1 + static_cast<int>(rng() % max_faces);
  for (int f = 0; f < faces; ++f) {
    const int len = 1 + static_cast<int>(rng() % max_len);
    if (auto path = random_closed_path(rng, *x, static_cast<int>(rng() % vertices), len))
      x->add_face(*path, "f" + std::to_string(f));
  }
  return x;
}

inline WeightFunction random_weights(std::mt19937_64& rng, const TwoComplex& x) {
  WeightFunction w(rng() % 2 ? WeightFunction::Mode::standard : WeightFunction::Mode::sparse);
  for (int f = 0; f < x.face_count(); ++f)
    for (int j = 0; j < x.boundary_length(f); ++j)
      if (rng() % 2) w.set({f, j}, static_cast<std::int64_t>(rng() % 4));
  return w;
}

// Wedge of circles spelling the given closed paths, all based at target vertex v.
inline CombinatorialMap wedge_of_paths(std::shared_ptr<const TwoComplex> x, int v, const std::vector<EdgePath>& loops) {
  CombinatorialMap m(x);
  const int base = m.add_vertex(v);
  for (const EdgePath& loop : loops) {
    int at = base;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int next = i + 1 == loop.size() ? base : m.add_vertex(naive_step_target(*x, loop[i]));
      m.add_edge(at, next, {loop[i].edge, loop[i].reversed});
      at = next;
    }
  }
  return m;
}

// Missing weight from Def. 2.1 computed directly from the cell data.
inline std::int64_t naive_missing_weight(const CombinatorialMap& phi, const WeightFunction& w) {
  const TwoComplex& y = phi.source();
  const TwoComplex& x = phi.target();
  std::int64_t total = 0;
  for (int e = 0; e < y.edge_count(); ++e) {
    const int te = phi.edge_image(e).edge;
    std::set<Triangle> covered;
    for (int f = 0; f < y.face_count(); ++f) {
      const auto img = phi.face_image(f);
      const int len = x.boundary_length(img.face);
      for (int i = 0; i < y.boundary_length(f); ++i) {
        if (y.face(f).boundary[static_cast<std::size_t>(i)].edge != e) continue;
        const int pos = img.reflected ? ((img.offset - i) % len + len) % len : (img.offset + i) % len;
        covered.insert({img.face, pos});
      }
    }
    for (int f = 0; f < x.face_count(); ++f)
      for (int j = 0; j < x.boundary_length(f); ++j)
        if (x.face(f).boundary[static_cast<std::size_t>(j)].edge == te && !covered.count({f, j})) total += w({f, j});
  }
  return total;
}

inline std::int64_t naive_star_weight(const TwoComplex& x, const WeightFunction& w, int e) {
  std::int64_t total = 0;
  for (int f = 0; f < x.face_count(); ++f)
    for (int j = 0; j < x.boundary_length(f); ++j)
      if (x.face(f).boundary[static_cast<std::size_t>(j)].edge == e) total += w({f, j});
  return total;
}

inline int naive_exponent(const EdgePath& b) {
  const std::size_t n = b.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = b[i] == b[(i + d) % n];
    if (same) return static_cast<int>(n / d);
  }
  return 1;
}

// No two distinct steps leaving a source vertex share an image step.
inline bool naive_is_immersion(const CombinatorialMap& phi) {
  const TwoComplex& y = phi.source();
  std::set<std::pair<int, EdgeStep>> seen;
  for (int e = 0; e < y.edge_count(); ++e) {
    const auto img = phi.edge_image(e);
    for (bool rev : {false, true}) {
      const int from = rev ? y.edge(e).target : y.edge(e).source;
      if (!seen.insert({from, EdgeStep{img.edge, img.reversed != rev}}).second) return false;
    }
  }
  return true;
}

// Reads the target path from source vertex v by unique lifting; nullopt if it leaves Y.
inline std::optional<int> read_path(const CombinatorialMap& phi, int v, const EdgePath& path) {
  const TwoComplex& y = phi.source();
  for (EdgeStep s : path) {
    std::optional<int> next;
    for (int e = 0; e < y.edge_count() && !next; ++e) {
      const auto img = phi.edge_image(e);
      for (bool rev : {false, true}) {
        const int from = rev ? y.edge(e).target : y.edge(e).source;
        if (from == v && img.edge == s.edge && (img.reversed != rev) == s.reversed) {
          next = rev ? y.edge(e).source : y.edge(e).target;
          break;
        }
      }
    }
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

struct RandomInstance {
  std::shared_ptr<TwoComplex> target;
  WeightFunction weights;
  CombinatorialMap map;
};

// A packed immersion: folded wedge of random closed paths, then packed.
inline std::optional<RandomInstance> random_packed_immersion(std::mt19937_64& rng, int max_faces = 6, int max_len = 8) {
  auto x = random_complex(rng, max_faces, max_len);
  if (x->face_count() == 0) return std::nullopt;
  std::vector<EdgePath> loops;
  const int v = static_cast<int>(rng() % x->vertex_count());
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < count; ++i)
    if (auto p = random_closed_path(rng, *x, v, 1 + static_cast<int>(rng() % 7))) loops.push_back(*p);
  if (loops.empty()) return std::nullopt;
  CombinatorialMap folded = coherence::fold(wedge_of_paths(x, v, loops)).map;
  return RandomInstance{x, random_weights(rng, *x), coherence::pack(folded)};
}

}  // namespace testing
