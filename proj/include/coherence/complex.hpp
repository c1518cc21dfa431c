#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/presentation.hpp"
#include "coherence/words.hpp"

namespace coherence {

/// One traversal of an edge; reversed walks it from target to source.
struct EdgeStep {
  int edge = 0;
  bool reversed = false;

  EdgeStep inverse() const { return {edge, !reversed}; }
  auto operator<=>(const EdgeStep&) const = default;
};

using EdgePath = std::vector<EdgeStep>;

EdgePath inverse(std::span<const EdgeStep> path);

/// Triangle of the stellar subdivision: the cone over boundary position
/// `position` of face `face`. Edges are not subdivided.
struct Triangle {
  int face = 0;
  int position = 0;

  auto operator<=>(const Triangle&) const = default;
};

struct Edge {
  int source = 0;
  int target = 0;
  std::optional<int> label;
  std::string name;
};

struct Face {
  EdgePath boundary;
  int exponent = 1;
  std::string name;
};

class TwoComplex {
 public:
  int add_vertex(std::string name = {});
  int add_edge(int source, int target, std::optional<int> label = std::nullopt, std::string name = {});
  /// The boundary must be a nonempty closed edge path.
  int add_face(EdgePath boundary, std::string name = {});

  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int face_count() const { return static_cast<int>(faces_.size()); }

  const std::string& vertex_name(int v) const { return vertex_names_.at(static_cast<std::size_t>(v)); }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  const Face& face(int f) const { return faces_.at(static_cast<std::size_t>(f)); }
  int boundary_length(int f) const { return static_cast<int>(face(f).boundary.size()); }

  int step_source(EdgeStep s) const { return s.reversed ? edge(s.edge).target : edge(s.edge).source; }
  int step_target(EdgeStep s) const { return s.reversed ? edge(s.edge).source : edge(s.edge).target; }

  /// Triangles (f, j) whose boundary position j traverses e, in (f, j) order.
  std::vector<Triangle> star(int e) const;
  std::vector<std::vector<Triangle>> all_stars() const;

  /// Boundary of f as a word whose letters are edges.
  Word boundary_word(int f) const;

  std::optional<int> find_vertex(std::string_view name) const;
  std::optional<int> find_edge(std::string_view name) const;
  std::optional<int> find_face(std::string_view name) const;

 private:
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::vector<Face> faces_;
};

/// One vertex, an edge per generator (labelled by it), a face per relator.
TwoComplex presentation_complex(const Presentation& p);

/// Nonnegative integer weights on triangles. Unassigned triangles weigh 1 in
/// standard mode and 0 in sparse mode.
class WeightFunction {
 public:
  enum class Mode { standard, sparse };

  explicit WeightFunction(Mode mode = Mode::standard) : mode_(mode) {}
  static WeightFunction standard() { return WeightFunction(Mode::standard); }
  static WeightFunction sparse() { return WeightFunction(Mode::sparse); }

  Mode mode() const { return mode_; }
  void set(Triangle t, std::int64_t weight);
  std::int64_t operator()(Triangle t) const;
  const std::map<Triangle, std::int64_t>& assigned() const { return assigned_; }

 private:
  Mode mode_;
  std::map<Triangle, std::int64_t> assigned_;
};

std::int64_t checked_add(std::int64_t a, std::int64_t b);

std::int64_t face_weight(const TwoComplex& x, const WeightFunction& w, int f);
std::int64_t star_weight(const TwoComplex& x, const WeightFunction& w, int e);

struct EdgeImage {
  int edge = 0;
  bool reversed = false;
  auto operator<=>(const EdgeImage&) const = default;
};

/// Source face position i lands on target position (offset + i), or on
/// (offset - i) read backwards when reflected.
struct FaceImage {
  int face = 0;
  int offset = 0;
  bool reflected = false;
  auto operator<=>(const FaceImage&) const = default;
};

class CombinatorialMap {
 public:
  explicit CombinatorialMap(std::shared_ptr<const TwoComplex> target);
  static CombinatorialMap identity(std::shared_ptr<const TwoComplex> x);

  const TwoComplex& source() const { return source_; }
  const TwoComplex& target() const { return *target_; }
  const std::shared_ptr<const TwoComplex>& target_ptr() const { return target_; }

  int add_vertex(int image, std::string name = {});
  int add_edge(int source, int target, EdgeImage image, std::string name = {});
  int add_face(EdgePath boundary, FaceImage image, std::string name = {});
  /// Adds a face lifting target face f; aligned[j] is the source step lying
  /// over boundary position j of f.
  int add_lift(int target_face, EdgePath aligned);

  int vertex_image(int v) const { return vertex_map_.at(static_cast<std::size_t>(v)); }
  EdgeImage edge_image(int e) const { return edge_map_.at(static_cast<std::size_t>(e)); }
  FaceImage face_image(int f) const { return face_map_.at(static_cast<std::size_t>(f)); }

  EdgeStep image(EdgeStep s) const;
  EdgePath image(std::span<const EdgeStep> path) const;
  Triangle image(Triangle t) const;

  /// The face's boundary re-indexed by target position, oriented like the
  /// target boundary.
  EdgePath aligned_boundary(int face) const;

  /// No two distinct steps leaving a vertex have the same image.
  bool is_immersion() const;

 private:
  std::shared_ptr<const TwoComplex> target_;
  TwoComplex source_;
  std::vector<int> vertex_map_;
  std::vector<EdgeImage> edge_map_;
  std::vector<FaceImage> face_map_;
};

/// Missing weight of every source edge, indexed by source edge id.
std::vector<std::int64_t> edge_missing_weights(const CombinatorialMap& phi, const WeightFunction& w);
std::int64_t missing_weight_edge(const CombinatorialMap& phi, const WeightFunction& w, int e);
std::int64_t missing_weight(const CombinatorialMap& phi, const WeightFunction& w);

/// Missing weight of a bare path: the full star weight of every traversed edge.
std::int64_t path_missing_weight(const TwoComplex& x, const WeightFunction& w, std::span<const EdgeStep> path);
/// Same, for a word whose letters name edges of x (generators, for a
/// presentation complex).
std::int64_t path_missing_weight(const TwoComplex& x, const WeightFunction& w, WordView word);

/// Characteristic map of the closed edge e: an interval onto e.
CombinatorialMap edge_cell_map(std::shared_ptr<const TwoComplex> x, int e);
/// Characteristic map of the closed face f: a polygon onto f.
CombinatorialMap face_cell_map(std::shared_ptr<const TwoComplex> x, int f);
/// Restriction of the characteristic map of f to the boundary circle.
CombinatorialMap face_boundary_map(std::shared_ptr<const TwoComplex> x, int f);
/// Inclusion of the subcomplex spanned by the given edges and faces (faces
/// bring their boundary edges along).
CombinatorialMap subcomplex_inclusion(std::shared_ptr<const TwoComplex> x, const std::vector<int>& edges,
                                      const std::vector<int>& faces);
CombinatorialMap skeleton_inclusion(std::shared_ptr<const TwoComplex> x);

struct Packet {
  int face = 0;
  int exponent = 1;
  std::vector<int> offsets;  // copy i is attached with offset i * |dD| / n
  CombinatorialMap map;      // boundary circle plus the copies, into x
};

Packet packet(std::shared_ptr<const TwoComplex> x, int f);

struct PackingWitness {
  int source_face = 0;
  int target_face = 0;
  std::vector<int> missing_rotations;  // multiples of |dD| / n
};

struct PackingReport {
  bool packed = true;
  std::optional<PackingWitness> witness;
};

/// Every face lift of a target face extends to a lift of its packet.
PackingReport is_packed(const CombinatorialMap& phi);

/// Adds the missing rotational siblings of every source face.
CombinatorialMap complete_packets(const CombinatorialMap& phi);

/// Attaches a face along every closed lift of a target boundary that has no
/// face yet, then completes packets. The source 1-skeleton is unchanged.
CombinatorialMap pack(const CombinatorialMap& phi);

/// Removes faces with the same target face and aligned boundary as an
/// earlier face.
CombinatorialMap dedupe_faces(const CombinatorialMap& phi);

}  // namespace coherence
