#include "coherence/reduction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace coherence {

namespace {

int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<std::vector<EdgeStep>> leaving_steps(const TwoComplex& y) {
  std::vector<std::vector<EdgeStep>> out(static_cast<std::size_t>(y.vertex_count()));
  for (int e = 0; e < y.edge_count(); ++e) {
    out[static_cast<std::size_t>(y.edge(e).source)].push_back({e, false});
    out[static_cast<std::size_t>(y.edge(e).target)].push_back({e, true});
  }
  return out;
}

const EdgePath& target_boundary(const CombinatorialMap& phi, int f) { return phi.target().face(f).boundary; }

EdgeStep target_step(const CombinatorialMap& phi, int f, int position) {
  const auto& t = target_boundary(phi, f);
  return t[static_cast<std::size_t>(mod(position, static_cast<int>(t.size())))];
}

bool commutes(const CombinatorialMap& phi, const Reduction& red) {
  if (red.face < 0 || red.face >= phi.target().face_count()) return false;
  const int n = phi.target().boundary_length(red.face);
  if (red.length < 1 || red.length > n || static_cast<int>(red.path.size()) != red.length) return false;
  const TwoComplex& y = phi.source();
  for (std::size_t i = 0; i < red.path.size(); ++i) {
    EdgeStep s = red.path[i];
    if (s.edge < 0 || s.edge >= y.edge_count()) return false;
    if (phi.image(s) != target_step(phi, red.face, red.start + static_cast<int>(i))) return false;
    if (i + 1 < red.path.size()) {
      if (y.step_target(s) != y.step_source(red.path[i + 1])) return false;
      if (red.path[i + 1] == s.inverse()) return false;
    }
  }
  return true;
}

// Vertices are remapped; edges keep their ids.
CombinatorialMap rebuild(const CombinatorialMap& phi, const std::vector<int>& vertex_remap, int vertex_count) {
  const TwoComplex& y = phi.source();
  CombinatorialMap out(phi.target_ptr());
  std::vector<int> image(static_cast<std::size_t>(vertex_count), -1);
  std::vector<std::string> names(static_cast<std::size_t>(vertex_count));
  for (int v = 0; v < y.vertex_count(); ++v) {
    auto nv = static_cast<std::size_t>(vertex_remap[static_cast<std::size_t>(v)]);
    if (image[nv] < 0) {
      image[nv] = phi.vertex_image(v);
      names[nv] = y.vertex_name(v);
    } else if (image[nv] != phi.vertex_image(v)) {
      throw std::logic_error("identified vertices have different images");
    }
  }
  for (int v = 0; v < vertex_count; ++v) out.add_vertex(image[static_cast<std::size_t>(v)], names[static_cast<std::size_t>(v)]);
  for (int e = 0; e < y.edge_count(); ++e)
    out.add_edge(vertex_remap[static_cast<std::size_t>(y.edge(e).source)],
                 vertex_remap[static_cast<std::size_t>(y.edge(e).target)], phi.edge_image(e), y.edge(e).name);
  for (int g = 0; g < y.face_count(); ++g) out.add_face(y.face(g).boundary, phi.face_image(g), y.face(g).name);
  return out;
}

}  // namespace

bool disc_fits(const CombinatorialMap& phi, const Reduction& red) {
  const TwoComplex& y = phi.source();
  const int n = phi.target().boundary_length(red.face);
  for (int g = 0; g < y.face_count(); ++g) {
    if (phi.face_image(g).face != red.face) continue;
    EdgePath a = phi.aligned_boundary(g);
    bool fits = true;
    for (int i = 0; i < red.length && fits; ++i)
      fits = a[static_cast<std::size_t>(mod(red.start + i, n))] == red.path[static_cast<std::size_t>(i)];
    if (fits) return true;
  }
  return false;
}

bool is_reduction(const CombinatorialMap& phi, const Reduction& red) {
  return commutes(phi, red) && !disc_fits(phi, red);
}

std::optional<Reduction> find_reduction(const CombinatorialMap& phi, int face, const std::optional<Reduction>& seed) {
  const TwoComplex& y = phi.source();
  const int n = phi.target().boundary_length(face);
  auto leaving = leaving_steps(y);

  if (seed) {
    if (seed->face != face || !commutes(phi, *seed)) throw std::invalid_argument("find_reduction: seed does not commute");
    // breadth-first over two-sided extensions, by number of added letters
    std::deque<Reduction> queue{*seed};
    while (!queue.empty()) {
      Reduction r = std::move(queue.front());
      queue.pop_front();
      if (!disc_fits(phi, r)) return r;
      if (r.length == n) continue;
      for (EdgeStep s : leaving[static_cast<std::size_t>(y.step_target(r.path.back()))]) {
        if (s == r.path.back().inverse() || phi.image(s) != target_step(phi, face, r.start + r.length)) continue;
        Reduction next = r;
        next.path.push_back(s);
        ++next.length;
        queue.push_back(std::move(next));
      }
      for (EdgeStep q : leaving[static_cast<std::size_t>(y.step_source(r.path.front()))]) {
        EdgeStep s = q.inverse();
        if (q == r.path.front() || phi.image(s) != target_step(phi, face, r.start - 1)) continue;
        Reduction next = r;
        next.path.insert(next.path.begin(), s);
        next.start = mod(r.start - 1, n);
        ++next.length;
        queue.push_back(std::move(next));
      }
    }
    return std::nullopt;
  }

  for (int start = 0; start < n; ++start) {
    const int first_vertex = phi.target().step_source(target_step(phi, face, start));
    for (int v = 0; v < y.vertex_count(); ++v) {
      if (phi.vertex_image(v) != first_vertex) continue;
      Reduction cur{face, start, 0, {}};
      std::optional<Reduction> found;
      auto dfs = [&](auto&& self, int at) -> void {
        if (found || cur.length == n) return;
        for (EdgeStep s : leaving[static_cast<std::size_t>(at)]) {
          if (found) return;
          if (!cur.path.empty() && s == cur.path.back().inverse()) continue;
          if (phi.image(s) != target_step(phi, face, start + cur.length)) continue;
          cur.path.push_back(s);
          ++cur.length;
          if (!disc_fits(phi, cur))
            found = cur;
          else
            self(self, y.step_target(s));
          cur.path.pop_back();
          --cur.length;
        }
      };
      dfs(dfs, v);
      if (found) return found;
    }
  }
  return std::nullopt;
}

std::optional<Reduction> find_any_reduction(const CombinatorialMap& phi) {
  for (int f = 0; f < phi.target().face_count(); ++f)
    if (auto r = find_reduction(phi, f)) return r;
  return std::nullopt;
}

namespace {

std::optional<EdgeStep> forward_extension(const CombinatorialMap& phi, const Reduction& red,
                                          const std::vector<std::vector<EdgeStep>>& leaving) {
  for (EdgeStep s : leaving[static_cast<std::size_t>(phi.source().step_target(red.path.back()))])
    if (s != red.path.back().inverse() && phi.image(s) == target_step(phi, red.face, red.start + red.length)) return s;
  return std::nullopt;
}

std::optional<EdgeStep> backward_extension(const CombinatorialMap& phi, const Reduction& red,
                                           const std::vector<std::vector<EdgeStep>>& leaving) {
  for (EdgeStep q : leaving[static_cast<std::size_t>(phi.source().step_source(red.path.front()))]) {
    EdgeStep s = q.inverse();
    if (q != red.path.front() && phi.image(s) == target_step(phi, red.face, red.start - 1)) return s;
  }
  return std::nullopt;
}

}  // namespace

bool is_maximal(const CombinatorialMap& phi, const Reduction& red) {
  if (red.complete(phi.target())) return true;
  auto leaving = leaving_steps(phi.source());
  return !forward_extension(phi, red, leaving) && !backward_extension(phi, red, leaving);
}

Reduction extend_to_maximal(const CombinatorialMap& phi, Reduction red) {
  if (!is_reduction(phi, red)) throw std::invalid_argument("extend_to_maximal: not a reduction");
  const int n = phi.target().boundary_length(red.face);
  auto leaving = leaving_steps(phi.source());
  // Sub-paths of a reduction without a fitting disc have none either, so
  // every one-letter extension is again a reduction.
  while (red.length < n) {
    if (auto s = forward_extension(phi, red, leaving)) {
      red.path.push_back(*s);
    } else if (auto b = backward_extension(phi, red, leaving)) {
      red.path.insert(red.path.begin(), *b);
      red.start = mod(red.start - 1, n);
    } else {
      break;
    }
    ++red.length;
  }
  return red;
}

ReductionOutcome apply_reduction(const CombinatorialMap& phi, const Reduction& red, const WeightFunction& w) {
  if (!is_reduction(phi, red)) throw std::invalid_argument("apply_reduction: not a reduction");
  const bool complete = red.complete(phi.target());
  if (!complete && !is_maximal(phi, red))
    throw std::invalid_argument("apply_reduction: incomplete reduction is not maximal");

  const TwoComplex& y = phi.source();
  const TwoComplex& x = phi.target();
  const int n = x.boundary_length(red.face);

  ReductionOutcome out{.map = phi};
  out.kind = complete ? ReductionKind::complete : ReductionKind::incomplete;
  out.before = missing_weight(phi, w);
  out.face_weight = face_weight(x, w, red.face);
  out.exponent = x.face(red.face).exponent;

  const int first = y.step_source(red.path.front());
  const int last = y.step_target(red.path.back());
  out.vertex_remap.resize(static_cast<std::size_t>(y.vertex_count()));
  std::iota(out.vertex_remap.begin(), out.vertex_remap.end(), 0);

  CombinatorialMap grown = phi;
  EdgePath aligned(static_cast<std::size_t>(n));
  for (int i = 0; i < red.length; ++i)
    aligned[static_cast<std::size_t>(mod(red.start + i, n))] = red.path[static_cast<std::size_t>(i)];

  if (complete) {
    if (first != last) {
      // identify the end of the path with its start
      for (int v = 0; v < y.vertex_count(); ++v) {
        const int keep = v == last ? first : v;
        out.vertex_remap[static_cast<std::size_t>(v)] = keep > last ? keep - 1 : keep;
      }
      grown = rebuild(phi, out.vertex_remap, y.vertex_count() - 1);
      out.endpoints_identified = true;
    }
  } else {
    EdgePath sigma_target;
    int at = last;
    const int sigma_length = n - red.length;
    for (int k = 0; k < sigma_length; ++k) {
      const int position = red.start + red.length + k;
      EdgeStep t = target_step(phi, red.face, position);
      sigma_target.push_back(t);
      int next = k + 1 == sigma_length ? first : grown.add_vertex(x.step_target(t));
      int e = grown.add_edge(at, next, {t.edge, t.reversed});
      out.complement_path.push_back({e, false});
      aligned[static_cast<std::size_t>(mod(position, n))] = {e, false};
      at = next;
    }
    out.complement_weight = path_missing_weight(x, w, sigma_target);
  }

  grown.add_lift(red.face, aligned);
  out.new_face = grown.source().face_count() - 1;
  out.map = complete_packets(grown);
  out.after = missing_weight(out.map, w);

  const std::int64_t n_wf = out.exponent * out.face_weight;
  if (complete) {
    out.predicted_delta = -out.face_weight;
    out.lemma_holds = out.delta() <= out.predicted_delta;
  } else {
    out.predicted_delta = out.complement_weight - n_wf;
    out.lemma_holds = out.delta() == out.predicted_delta;
  }
  return out;
}

FoldResult fold(const CombinatorialMap& phi, const std::function<void(const FoldEvent&)>& observer) {
  const TwoComplex& y = phi.source();
  const int nv = y.vertex_count();
  const int ne = y.edge_count();

  std::vector<int> parent(static_cast<std::size_t>(nv));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  std::vector<bool> alive(static_cast<std::size_t>(ne), true);
  std::vector<EdgeStep> redirect(static_cast<std::size_t>(ne));
  for (int e = 0; e < ne; ++e) redirect[static_cast<std::size_t>(e)] = {e, false};

  auto step_source = [&](EdgeStep s) { return find(y.step_source(s)); };
  auto step_target = [&](EdgeStep s) { return find(y.step_target(s)); };

  int folds = 0;
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::map<EdgeStep, EdgeStep>> seen(static_cast<std::size_t>(nv));
    for (int e = 0; e < ne && !changed; ++e) {
      if (!alive[static_cast<std::size_t>(e)]) continue;
      for (EdgeStep s : {EdgeStep{e, false}, EdgeStep{e, true}}) {
        const int v = step_source(s);
        auto [it, inserted] = seen[static_cast<std::size_t>(v)].emplace(phi.image(s), s);
        if (inserted) continue;
        const EdgeStep kept = it->second;
        const EdgeStep merged = s;
        FoldEvent ev{v, kept, merged, step_target(kept), step_target(merged), {}};
        if (ev.kept_end != ev.merged_end) {
          for (int f = 0; f < ne; ++f) {
            if (!alive[static_cast<std::size_t>(f)] || f == merged.edge) continue;
            if (step_source({f, false}) == ev.merged_end) ev.moved.push_back({f, false});
            if (step_source({f, true}) == ev.merged_end) ev.moved.push_back({f, true});
          }
        }
        if (observer) observer(ev);
        parent[static_cast<std::size_t>(ev.merged_end)] = ev.kept_end;
        alive[static_cast<std::size_t>(merged.edge)] = false;
        redirect[static_cast<std::size_t>(merged.edge)] = {kept.edge, kept.reversed != merged.reversed};
        ++folds;
        changed = true;
        break;
      }
    }
  }

  FoldResult out{CombinatorialMap(phi.target_ptr()), {}, {}, folds};
  std::vector<int> new_vertex(static_cast<std::size_t>(nv), -1);
  for (int v = 0; v < nv; ++v) {
    if (find(v) != v) continue;
    new_vertex[static_cast<std::size_t>(v)] = out.map.add_vertex(phi.vertex_image(v), y.vertex_name(v));
  }
  out.vertex_remap.resize(static_cast<std::size_t>(nv));
  for (int v = 0; v < nv; ++v) out.vertex_remap[static_cast<std::size_t>(v)] = new_vertex[static_cast<std::size_t>(find(v))];

  std::vector<int> new_edge(static_cast<std::size_t>(ne), -1);
  for (int e = 0; e < ne; ++e) {
    if (!alive[static_cast<std::size_t>(e)]) continue;
    new_edge[static_cast<std::size_t>(e)] = out.map.add_edge(out.vertex_remap[static_cast<std::size_t>(y.edge(e).source)],
                                                             out.vertex_remap[static_cast<std::size_t>(y.edge(e).target)],
                                                             phi.edge_image(e), y.edge(e).name);
  }
  out.edge_remap.resize(static_cast<std::size_t>(ne));
  for (int e = 0; e < ne; ++e) {
    EdgeStep s{e, false};
    while (!alive[static_cast<std::size_t>(s.edge)]) {
      EdgeStep r = redirect[static_cast<std::size_t>(s.edge)];
      s = {r.edge, r.reversed != s.reversed};
    }
    out.edge_remap[static_cast<std::size_t>(e)] = {new_edge[static_cast<std::size_t>(s.edge)], s.reversed};
  }

  CombinatorialMap with_faces = out.map;
  for (int g = 0; g < y.face_count(); ++g) {
    EdgePath b;
    for (EdgeStep s : y.face(g).boundary) {
      EdgeStep r = out.edge_remap[static_cast<std::size_t>(s.edge)];
      b.push_back({r.edge, r.reversed != s.reversed});
    }
    with_faces.add_face(std::move(b), phi.face_image(g), y.face(g).name);
  }
  out.map = dedupe_faces(with_faces);
  return out;
}

}  // namespace coherence
