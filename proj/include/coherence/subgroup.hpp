#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coherence/certify.hpp"
#include "coherence/complex.hpp"
#include "coherence/reduction.hpp"
#include "coherence/smallcancel.hpp"

namespace coherence {

/// Working data of the subgroup loop: the map Y -> X, the basepoint, and
/// for every edge of Y a word over the input generators g_i such that each
/// based loop equals, in the group, the product of its edge words.
struct SubgroupState {
  CombinatorialMap map;
  int base = 0;
  std::vector<Word> witnesses;
};

/// Folded wedge of circles spelling the words, based at the wedge point.
SubgroupState build_immersion_state(std::shared_ptr<const TwoComplex> x, const std::vector<Word>& words);
CombinatorialMap build_immersion(std::shared_ptr<const TwoComplex> x, const std::vector<Word>& words);

/// Free basis of pi_1 of the 1-skeleton: one generator per edge outside a
/// breadth-first spanning tree (smallest edge id first).
struct LoopBasis {
  std::vector<int> generator_edges;
  std::vector<EdgePath> loops;   // based loop of each generator
  std::vector<bool> tree_edge;   // per edge
  std::vector<EdgePath> to_vertex;  // tree path from the base to each vertex

  /// Letters for the non-tree steps of the path, freely reduced.
  Word rewrite(std::span<const EdgeStep> path) const;
  /// Based loop for a basis word, freely reduced.
  EdgePath loop(WordView basis_word) const;
};

LoopBasis loop_basis(const TwoComplex& y, int base);

struct KernelLoop {
  Word basis_word;
  EdgePath loop;
  Word image;
  DehnResult solution;
};

/// First basis word of length <= bound (by length, then letters) whose image
/// Dehn's algorithm reduces to 1 and whose reduction does not already lift
/// to the cells of Y.
std::optional<KernelLoop> find_kernel_loop(const Presentation& p, const SubgroupState& state, int bound);

/// True when every move of the trace lifts to existing cells along the loop.
bool trace_lifts(const Presentation& p, const CombinatorialMap& phi, const EdgePath& loop, const DehnResult& solution);

struct TameReport {
  std::int64_t before = 0;
  std::int64_t after = 0;
  int complete_reductions = 0;
  int incomplete_reductions = 0;
  int folds = 0;
  int lemma_violations = 0;
  std::vector<std::int64_t> reduction_deltas;
};

/// Replays the trace along the loop, applying a maximal reduction wherever a
/// replacement does not lift, folding afterwards.
TameReport tame(const Presentation& p, const WeightFunction& w, SubgroupState& state, const KernelLoop& kernel);

struct SubgroupOptions {
  int bound = 6;
  int max_iterations = 100;
};

struct IterationRecord {
  Word kernel_word;  // in the basis at that time
  int trace_length = 0;
  TameReport report;
};

struct SubgroupPresentation {
  enum class Status { stable_at_bound, iteration_capped };

  std::vector<std::string> generators;
  std::vector<Word> relators;          // over the generators
  std::vector<Word> generator_images;  // words over P
  std::vector<Word> witnesses;         // generators as words over the inputs g_i
  std::vector<Word> inputs_in_basis;   // input words rewritten in the generators
  Status status = Status::stable_at_bound;
  std::int64_t initial_missing_weight = 0;
  std::int64_t final_missing_weight = 0;
  std::vector<std::int64_t> trajectory;  // M before the loop, then after each iteration
  std::vector<IterationRecord> iterations;
  int bound = 0;

  Presentation as_presentation() const;
};

std::string status_name(SubgroupPresentation::Status s);

/// Requires a coherent Dehn-class certificate that verifies against p;
/// throws InputError otherwise.
SubgroupPresentation present_subgroup(const Presentation& p, const Certificate& cert, const std::vector<Word>& words,
                                      const SubgroupOptions& options = {});

/// JSON run log (sorted keys).
std::string subgroup_log_json(const SubgroupPresentation& result, const Presentation& p);

}  // namespace coherence
