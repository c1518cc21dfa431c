#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "coherence/complex.hpp"

namespace coherence {

/// A boundary path of target face `face` (positions start .. start+length-1,
/// taken mod |dD|) together with a source path lying over it, such that no
/// face of the source lifts the whole disc compatibly.
struct Reduction {
  int face = 0;
  int start = 0;
  int length = 0;
  EdgePath path;  // path[i] lies over boundary position start + i

  bool complete(const TwoComplex& target) const { return length == target.boundary_length(face); }
};

/// Checks commutation, immersion of the source path, and that no source
/// face fits the disc over it.
bool is_reduction(const CombinatorialMap& phi, const Reduction& red);
/// True when some source face lifts the disc compatibly with red.
bool disc_fits(const CombinatorialMap& phi, const Reduction& red);

/// First reduction over `face` in (start position, source vertex, path)
/// order; with a seed, the first reduction containing the seed. Throws
/// std::invalid_argument when the seed does not commute.
std::optional<Reduction> find_reduction(const CombinatorialMap& phi, int face,
                                        const std::optional<Reduction>& seed = std::nullopt);
std::optional<Reduction> find_any_reduction(const CombinatorialMap& phi);

bool is_maximal(const CombinatorialMap& phi, const Reduction& red);
/// Grows the reduction one letter at a time, forward first, until neither
/// end extends.
Reduction extend_to_maximal(const CombinatorialMap& phi, Reduction red);

enum class ReductionKind { complete, incomplete };

struct ReductionOutcome {
  CombinatorialMap map;
  ReductionKind kind = ReductionKind::incomplete;
  std::int64_t before = 0;
  std::int64_t after = 0;
  std::int64_t complement_weight = 0;  // M(chi_f o sigma); 0 when complete
  std::int64_t face_weight = 0;
  int exponent = 1;
  /// After - before as predicted: exact for incomplete reductions, an upper
  /// bound (-w(f)) for complete ones.
  std::int64_t predicted_delta = 0;
  bool lemma_holds = false;
  bool endpoints_identified = false;
  std::vector<int> vertex_remap{};  // old source vertex -> new; edge ids are kept
  EdgePath complement_path{};     // new edges, from the end of the path back to its start
  int new_face = -1;

  std::int64_t delta() const { return after - before; }
};

/// Identifies the path endpoints when complete, glues the disc along the
/// path and completes its packet. Incomplete reductions must be maximal
/// (std::invalid_argument otherwise).
ReductionOutcome apply_reduction(const CombinatorialMap& phi, const Reduction& red, const WeightFunction& w);

/// Folding step: `merged` (leaving `vertex`) is identified with `kept`.
/// Ids refer to the map passed to fold(); vertices are current class
/// representatives. `moved` lists the steps leaving merged_end that get
/// re-attached to kept_end (empty when the two ends already coincide).
struct FoldEvent {
  int vertex = 0;
  EdgeStep kept;
  EdgeStep merged;
  int kept_end = 0;
  int merged_end = 0;
  std::vector<EdgeStep> moved;
};

struct FoldResult {
  CombinatorialMap map;
  std::vector<int> vertex_remap;     // old vertex -> new vertex
  std::vector<EdgeStep> edge_remap;  // old edge -> new edge, forward step
  int folds = 0;
};

/// Stallings folding until the source 1-skeleton immerses; duplicate faces
/// are dropped afterwards.
FoldResult fold(const CombinatorialMap& phi, const std::function<void(const FoldEvent&)>& observer = {});

}  // namespace coherence
