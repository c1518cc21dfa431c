#include "coherence/complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace coherence {

namespace {

int mod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

std::vector<std::vector<EdgeStep>> leaving_steps(const TwoComplex& x) {
  std::vector<std::vector<EdgeStep>> out(static_cast<std::size_t>(x.vertex_count()));
  for (int e = 0; e < x.edge_count(); ++e) {
    out[static_cast<std::size_t>(x.edge(e).source)].push_back({e, false});
    out[static_cast<std::size_t>(x.edge(e).target)].push_back({e, true});
  }
  return out;
}

// Copies vertices and edges (not faces) of phi's source into a fresh map.
CombinatorialMap copy_skeleton(const CombinatorialMap& phi) {
  CombinatorialMap out(phi.target_ptr());
  const TwoComplex& y = phi.source();
  for (int v = 0; v < y.vertex_count(); ++v) out.add_vertex(phi.vertex_image(v), y.vertex_name(v));
  for (int e = 0; e < y.edge_count(); ++e)
    out.add_edge(y.edge(e).source, y.edge(e).target, phi.edge_image(e), y.edge(e).name);
  return out;
}

void copy_face(const CombinatorialMap& from, int f, CombinatorialMap& to) {
  to.add_face(from.source().face(f).boundary, from.face_image(f), from.source().face(f).name);
}

EdgePath rotated(const EdgePath& aligned, int shift) {
  const int n = static_cast<int>(aligned.size());
  EdgePath out(aligned.size());
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = aligned[static_cast<std::size_t>(mod(j - shift, n))];
  return out;
}

}  // namespace

EdgePath inverse(std::span<const EdgeStep> path) {
  EdgePath out;
  out.reserve(path.size());
  for (auto it = path.rbegin(); it != path.rend(); ++it) out.push_back(it->inverse());
  return out;
}

int TwoComplex::add_vertex(std::string name) {
  vertex_names_.push_back(std::move(name));
  return vertex_count() - 1;
}

int TwoComplex::add_edge(int source, int target, std::optional<int> label, std::string name) {
  if (source < 0 || source >= vertex_count() || target < 0 || target >= vertex_count())
    throw std::invalid_argument("add_edge: endpoint out of range");
  edges_.push_back({source, target, label, std::move(name)});
  return edge_count() - 1;
}

int TwoComplex::add_face(EdgePath boundary, std::string name) {
  if (boundary.empty()) throw std::invalid_argument("add_face: empty boundary");
  for (EdgeStep s : boundary)
    if (s.edge < 0 || s.edge >= edge_count()) throw std::invalid_argument("add_face: unknown edge");
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    EdgeStep next = boundary[(i + 1) % boundary.size()];
    if (step_target(boundary[i]) != step_source(next))
      throw std::invalid_argument("add_face: boundary is not a closed edge path");
  }
  Face f;
  f.boundary = std::move(boundary);
  f.name = std::move(name);
  Word letters;
  for (EdgeStep s : f.boundary) letters.emplace_back(s.edge, s.reversed);
  f.exponent = static_cast<int>(letters.size() / primitive_period(letters));
  faces_.push_back(std::move(f));
  return face_count() - 1;
}

std::vector<Triangle> TwoComplex::star(int e) const {
  if (e < 0 || e >= edge_count()) throw std::invalid_argument("star: unknown edge");
  std::vector<Triangle> out;
  for (int f = 0; f < face_count(); ++f) {
    const auto& b = face(f).boundary;
    for (int j = 0; j < static_cast<int>(b.size()); ++j)
      if (b[static_cast<std::size_t>(j)].edge == e) out.push_back({f, j});
  }
  return out;
}

std::vector<std::vector<Triangle>> TwoComplex::all_stars() const {
  std::vector<std::vector<Triangle>> out(static_cast<std::size_t>(edge_count()));
  for (int f = 0; f < face_count(); ++f) {
    const auto& b = face(f).boundary;
    for (int j = 0; j < static_cast<int>(b.size()); ++j)
      out[static_cast<std::size_t>(b[static_cast<std::size_t>(j)].edge)].push_back({f, j});
  }
  return out;
}

Word TwoComplex::boundary_word(int f) const {
  Word w;
  for (EdgeStep s : face(f).boundary) w.emplace_back(s.edge, s.reversed);
  return w;
}

std::optional<int> TwoComplex::find_vertex(std::string_view name) const {
  for (int v = 0; v < vertex_count(); ++v)
    if (vertex_name(v) == name) return v;
  return std::nullopt;
}

std::optional<int> TwoComplex::find_edge(std::string_view name) const {
  for (int e = 0; e < edge_count(); ++e)
    if (edge(e).name == name) return e;
  return std::nullopt;
}

std::optional<int> TwoComplex::find_face(std::string_view name) const {
  for (int f = 0; f < face_count(); ++f)
    if (face(f).name == name) return f;
  return std::nullopt;
}

TwoComplex presentation_complex(const Presentation& p) {
  TwoComplex x;
  x.add_vertex("o");
  for (int g = 0; g < p.generator_count(); ++g) x.add_edge(0, 0, g, p.generators[static_cast<std::size_t>(g)]);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    EdgePath b;
    for (Letter l : p.relators[r]) b.push_back({l.gen(), l.inverted()});
    x.add_face(std::move(b), "r" + std::to_string(r));
  }
  return x;
}

void WeightFunction::set(Triangle t, std::int64_t weight) {
  if (weight < 0) throw std::invalid_argument("weights must be nonnegative");
  assigned_[t] = weight;
}

std::int64_t WeightFunction::operator()(Triangle t) const {
  if (auto it = assigned_.find(t); it != assigned_.end()) return it->second;
  return mode_ == Mode::standard ? 1 : 0;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("weight sum overflows int64");
  return out;
}

std::int64_t face_weight(const TwoComplex& x, const WeightFunction& w, int f) {
  std::int64_t total = 0;
  for (int j = 0; j < x.boundary_length(f); ++j) total = checked_add(total, w({f, j}));
  return total;
}

std::int64_t star_weight(const TwoComplex& x, const WeightFunction& w, int e) {
  std::int64_t total = 0;
  for (Triangle t : x.star(e)) total = checked_add(total, w(t));
  return total;
}

CombinatorialMap::CombinatorialMap(std::shared_ptr<const TwoComplex> target) : target_(std::move(target)) {
  if (!target_) throw std::invalid_argument("CombinatorialMap: null target");
}

CombinatorialMap CombinatorialMap::identity(std::shared_ptr<const TwoComplex> x) {
  CombinatorialMap m(x);
  for (int v = 0; v < x->vertex_count(); ++v) m.add_vertex(v, x->vertex_name(v));
  for (int e = 0; e < x->edge_count(); ++e) m.add_edge(x->edge(e).source, x->edge(e).target, {e, false}, x->edge(e).name);
  for (int f = 0; f < x->face_count(); ++f) m.add_face(x->face(f).boundary, {f, 0, false}, x->face(f).name);
  return m;
}

int CombinatorialMap::add_vertex(int image, std::string name) {
  if (image < 0 || image >= target_->vertex_count()) throw std::invalid_argument("add_vertex: image out of range");
  vertex_map_.push_back(image);
  return source_.add_vertex(std::move(name));
}

int CombinatorialMap::add_edge(int source, int target, EdgeImage image, std::string name) {
  if (image.edge < 0 || image.edge >= target_->edge_count()) throw std::invalid_argument("add_edge: image out of range");
  EdgeStep s{image.edge, image.reversed};
  if (vertex_image(source) != target_->step_source(s) || vertex_image(target) != target_->step_target(s))
    throw std::invalid_argument("add_edge: edge map does not commute with the vertex map");
  edge_map_.push_back(image);
  return source_.add_edge(source, target, std::nullopt, std::move(name));
}

int CombinatorialMap::add_face(EdgePath boundary, FaceImage image, std::string name) {
  if (image.face < 0 || image.face >= target_->face_count()) throw std::invalid_argument("add_face: image out of range");
  const auto& t = target_->face(image.face).boundary;
  const int n = static_cast<int>(t.size());
  if (static_cast<int>(boundary.size()) != n) throw std::invalid_argument("add_face: boundary length differs from image face");
  for (int i = 0; i < n; ++i) {
    EdgeStep got = this->image(boundary[static_cast<std::size_t>(i)]);
    EdgeStep want = image.reflected ? t[static_cast<std::size_t>(mod(image.offset - i, n))].inverse()
                                    : t[static_cast<std::size_t>(mod(image.offset + i, n))];
    if (got != want) throw std::invalid_argument("add_face: boundary does not map onto the image face");
  }
  image.offset = mod(image.offset, n);
  int id = source_.add_face(std::move(boundary), std::move(name));
  face_map_.push_back(image);
  return id;
}

int CombinatorialMap::add_lift(int target_face, EdgePath aligned) {
  return add_face(std::move(aligned), {target_face, 0, false});
}

EdgeStep CombinatorialMap::image(EdgeStep s) const {
  EdgeImage im = edge_image(s.edge);
  return {im.edge, im.reversed != s.reversed};
}

EdgePath CombinatorialMap::image(std::span<const EdgeStep> path) const {
  EdgePath out;
  out.reserve(path.size());
  for (EdgeStep s : path) out.push_back(image(s));
  return out;
}

Triangle CombinatorialMap::image(Triangle t) const {
  FaceImage im = face_image(t.face);
  const int n = target_->boundary_length(im.face);
  return {im.face, im.reflected ? mod(im.offset - t.position, n) : mod(im.offset + t.position, n)};
}

EdgePath CombinatorialMap::aligned_boundary(int face) const {
  const auto& b = source_.face(face).boundary;
  FaceImage im = face_image(face);
  const int n = static_cast<int>(b.size());
  EdgePath out(b.size());
  for (int i = 0; i < n; ++i) {
    if (im.reflected)
      out[static_cast<std::size_t>(mod(im.offset - i, n))] = b[static_cast<std::size_t>(i)].inverse();
    else
      out[static_cast<std::size_t>(mod(im.offset + i, n))] = b[static_cast<std::size_t>(i)];
  }
  return out;
}

bool CombinatorialMap::is_immersion() const {
  auto leaving = leaving_steps(source_);
  for (const auto& steps : leaving) {
    std::set<EdgeStep> seen;
    for (EdgeStep s : steps)
      if (!seen.insert(image(s)).second) return false;
  }
  return true;
}

std::vector<std::int64_t> edge_missing_weights(const CombinatorialMap& phi, const WeightFunction& w) {
  const TwoComplex& y = phi.source();
  const auto stars = phi.target().all_stars();
  std::vector<std::set<Triangle>> hit(static_cast<std::size_t>(y.edge_count()));
  for (int g = 0; g < y.face_count(); ++g) {
    const auto& b = y.face(g).boundary;
    for (int i = 0; i < static_cast<int>(b.size()); ++i)
      hit[static_cast<std::size_t>(b[static_cast<std::size_t>(i)].edge)].insert(phi.image(Triangle{g, i}));
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(y.edge_count()), 0);
  for (int e = 0; e < y.edge_count(); ++e) {
    const auto& h = hit[static_cast<std::size_t>(e)];
    std::int64_t m = 0;
    for (Triangle t : stars[static_cast<std::size_t>(phi.edge_image(e).edge)])
      if (!h.contains(t)) m = checked_add(m, w(t));
    out[static_cast<std::size_t>(e)] = m;
  }
  return out;
}

std::int64_t missing_weight_edge(const CombinatorialMap& phi, const WeightFunction& w, int e) {
  if (e < 0 || e >= phi.source().edge_count()) throw std::invalid_argument("missing_weight_edge: unknown edge");
  return edge_missing_weights(phi, w)[static_cast<std::size_t>(e)];
}

std::int64_t missing_weight(const CombinatorialMap& phi, const WeightFunction& w) {
  std::int64_t total = 0;
  for (std::int64_t m : edge_missing_weights(phi, w)) total = checked_add(total, m);
  return total;
}

std::int64_t path_missing_weight(const TwoComplex& x, const WeightFunction& w, std::span<const EdgeStep> path) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (path[i].edge < 0 || path[i].edge >= x.edge_count())
      throw std::invalid_argument("path_missing_weight: step is not an edge of the complex");
    if (i + 1 < path.size() && x.step_target(path[i]) != x.step_source(path[i + 1]))
      throw std::invalid_argument("path_missing_weight: steps do not form a path");
    total = checked_add(total, star_weight(x, w, path[i].edge));
  }
  return total;
}

std::int64_t path_missing_weight(const TwoComplex& x, const WeightFunction& w, WordView word) {
  EdgePath path;
  for (Letter l : word) path.push_back({l.gen(), l.inverted()});
  return path_missing_weight(x, w, path);
}

namespace {

// Polygon along the boundary of f: vertex i sits before position i.
CombinatorialMap boundary_circle(std::shared_ptr<const TwoComplex> x, int f) {
  CombinatorialMap m(x);
  const auto& t = x->face(f).boundary;
  const int n = static_cast<int>(t.size());
  for (int i = 0; i < n; ++i) m.add_vertex(x->step_source(t[static_cast<std::size_t>(i)]));
  for (int i = 0; i < n; ++i) {
    EdgeStep s = t[static_cast<std::size_t>(i)];
    m.add_edge(i, (i + 1) % n, {s.edge, s.reversed});
  }
  return m;
}

EdgePath forward_cycle(int n) {
  EdgePath b;
  for (int i = 0; i < n; ++i) b.push_back({i, false});
  return b;
}

}  // namespace

CombinatorialMap edge_cell_map(std::shared_ptr<const TwoComplex> x, int e) {
  CombinatorialMap m(x);
  const Edge& edge = x->edge(e);
  int a = m.add_vertex(edge.source);
  int b = m.add_vertex(edge.target);
  m.add_edge(a, b, {e, false}, edge.name);
  return m;
}

CombinatorialMap face_cell_map(std::shared_ptr<const TwoComplex> x, int f) {
  CombinatorialMap m = boundary_circle(x, f);
  m.add_face(forward_cycle(x->boundary_length(f)), {f, 0, false}, x->face(f).name);
  return m;
}

CombinatorialMap face_boundary_map(std::shared_ptr<const TwoComplex> x, int f) { return boundary_circle(x, f); }

CombinatorialMap subcomplex_inclusion(std::shared_ptr<const TwoComplex> x, const std::vector<int>& edges,
                                      const std::vector<int>& faces) {
  std::set<int> edge_set(edges.begin(), edges.end());
  for (int f : faces)
    for (EdgeStep s : x->face(f).boundary) edge_set.insert(s.edge);
  std::set<int> vertex_set;
  for (int e : edge_set) {
    vertex_set.insert(x->edge(e).source);
    vertex_set.insert(x->edge(e).target);
  }
  CombinatorialMap m(x);
  std::map<int, int> vid, eid;
  for (int v : vertex_set) vid[v] = m.add_vertex(v, x->vertex_name(v));
  for (int e : edge_set) eid[e] = m.add_edge(vid[x->edge(e).source], vid[x->edge(e).target], {e, false}, x->edge(e).name);
  for (int f : std::set<int>(faces.begin(), faces.end())) {
    EdgePath b;
    for (EdgeStep s : x->face(f).boundary) b.push_back({eid[s.edge], s.reversed});
    m.add_face(std::move(b), {f, 0, false}, x->face(f).name);
  }
  return m;
}

CombinatorialMap skeleton_inclusion(std::shared_ptr<const TwoComplex> x) {
  CombinatorialMap m(x);
  for (int v = 0; v < x->vertex_count(); ++v) m.add_vertex(v, x->vertex_name(v));
  for (int e = 0; e < x->edge_count(); ++e) m.add_edge(x->edge(e).source, x->edge(e).target, {e, false}, x->edge(e).name);
  return m;
}

Packet packet(std::shared_ptr<const TwoComplex> x, int f) {
  Packet p{f, x->face(f).exponent, {}, boundary_circle(x, f)};
  const int n = x->boundary_length(f);
  const int period = n / p.exponent;
  for (int c = 0; c < p.exponent; ++c) {
    p.offsets.push_back(c * period);
    p.map.add_face(forward_cycle(n), {f, c * period, false});
  }
  return p;
}

PackingReport is_packed(const CombinatorialMap& phi) {
  const TwoComplex& y = phi.source();
  std::set<std::pair<int, EdgePath>> lifts;
  for (int g = 0; g < y.face_count(); ++g) lifts.insert({phi.face_image(g).face, phi.aligned_boundary(g)});
  for (int g = 0; g < y.face_count(); ++g) {
    const int f = phi.face_image(g).face;
    const int n = phi.target().face(f).exponent;
    const int period = phi.target().boundary_length(f) / n;
    EdgePath a = phi.aligned_boundary(g);
    PackingWitness witness{g, f, {}};
    for (int c = 1; c < n; ++c)
      if (!lifts.contains({f, rotated(a, c * period)})) witness.missing_rotations.push_back(c * period);
    if (!witness.missing_rotations.empty()) return {false, witness};
  }
  return {};
}

CombinatorialMap complete_packets(const CombinatorialMap& phi) {
  CombinatorialMap out = phi;
  std::set<std::pair<int, EdgePath>> lifts;
  const int original = phi.source().face_count();
  for (int g = 0; g < original; ++g) lifts.insert({phi.face_image(g).face, phi.aligned_boundary(g)});
  for (int g = 0; g < original; ++g) {
    const int f = phi.face_image(g).face;
    const int n = phi.target().face(f).exponent;
    const int period = phi.target().boundary_length(f) / n;
    EdgePath a = phi.aligned_boundary(g);
    for (int c = 1; c < n; ++c) {
      EdgePath r = rotated(a, c * period);
      if (lifts.insert({f, r}).second) out.add_lift(f, std::move(r));
    }
  }
  return out;
}

CombinatorialMap pack(const CombinatorialMap& phi) {
  const TwoComplex& y = phi.source();
  const TwoComplex& x = phi.target();
  auto leaving = leaving_steps(y);
  std::set<std::pair<int, EdgePath>> lifts;
  for (int g = 0; g < y.face_count(); ++g) lifts.insert({phi.face_image(g).face, phi.aligned_boundary(g)});

  CombinatorialMap out = phi;
  constexpr std::size_t kMaxLifts = 1'000'000;
  std::size_t found = 0;
  for (int f = 0; f < x.face_count(); ++f) {
    const auto& t = x.face(f).boundary;
    const int start_vertex = x.step_source(t[0]);
    for (int v = 0; v < y.vertex_count(); ++v) {
      if (phi.vertex_image(v) != start_vertex) continue;
      EdgePath path;
      // depth-first over lifts of t starting at v
      auto dfs = [&](auto&& self, int at) -> void {
        const std::size_t j = path.size();
        if (j == t.size()) {
          if (at != v) return;
          if (++found > kMaxLifts) throw std::length_error("pack: too many boundary lifts");
          if (lifts.insert({f, path}).second) out.add_lift(f, path);
          return;
        }
        for (EdgeStep s : leaving[static_cast<std::size_t>(at)]) {
          if (phi.image(s) != t[j]) continue;
          path.push_back(s);
          self(self, y.step_target(s));
          path.pop_back();
        }
      };
      dfs(dfs, v);
    }
  }
  return complete_packets(out);
}

CombinatorialMap dedupe_faces(const CombinatorialMap& phi) {
  CombinatorialMap out = copy_skeleton(phi);
  std::set<std::pair<int, EdgePath>> lifts;
  for (int g = 0; g < phi.source().face_count(); ++g)
    if (lifts.insert({phi.face_image(g).face, phi.aligned_boundary(g)}).second) copy_face(phi, g, out);
  return out;
}

}  // namespace coherence
