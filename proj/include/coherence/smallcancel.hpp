#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "coherence/presentation.hpp"
#include "coherence/words.hpp"

namespace coherence {

/// Stands for "no finite bound" in c_value / t_value results.
inline constexpr int kUnbounded = -1;

/// All rotations of all relators and their inverses, without repeats.
std::vector<Word> symmetrized_set(const Presentation& p);

struct PieceReport {
  std::set<Word> pieces;  // maximal common prefixes of distinct members
  int max_piece_length = 0;
  /// Per relator: fewest pieces whose cyclic product is the relator, or
  /// kUnbounded when some letter of it lies in no piece.
  std::vector<int> factorization_length;
  /// Per relator: longest piece starting at some position of it.
  std::vector<int> max_piece_in_relator;
  Rational metric_ratio;  // max piece length / min relator length
};

PieceReport pieces(const Presentation& p);

/// Largest p such that C(p) holds, or kUnbounded.
int c_value(const Presentation& p);
int c_value(const PieceReport& report);

/// Letters as vertices (code 2*gen + inverted); one edge {y^-1, z} per
/// relator corner y z, read cyclically.
struct StarGraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  /// The same edges with parallel copies merged, each as (min, max).
  std::vector<std::pair<int, int>> simple_edges() const;
};

StarGraph star_graph(const Presentation& p);

/// Length of the shortest cycle of length >= 3 in the underlying simple
/// graph, or kUnbounded if there is none.
int girth(const StarGraph& g);

struct CycleCount {
  long long count = 0;
  bool capped = false;  // enumeration stopped at the limit
};

/// Simple cycles of length >= 3 in the underlying simple graph.
CycleCount count_cycles(const StarGraph& g, long long limit = 100000);

/// Largest q such that T(q) holds, or kUnbounded when the star graph is a
/// forest (T(q) for every q).
int t_value(const Presentation& p);

bool property_p(const Presentation& p);
bool property_p(const Presentation& p, const PieceReport& report);

struct MetricGate {
  bool certified_dehn = false;
  Rational ratio;
};

/// Certifies Dehn when 6 * (longest piece inside r) < |r| for every relator.
MetricGate metric_gate(const Presentation& p);
MetricGate metric_gate(const Presentation& p, const PieceReport& report);

struct DehnMove {
  enum class Kind { tighten, replace };
  Kind kind = Kind::tighten;
  /// tighten: letters position and position+1 (cyclically) cancel.
  int position = 0;
  /// replace: the cyclic subword of length `length` starting at `at` is a
  /// prefix of the symmetrized member rotate(r or r^-1, rotation); it is
  /// replaced by `replacement` (the inverse of the member's remainder).
  int relator = -1;
  bool inverted = false;
  int rotation = 0;
  int at = 0;
  int length = 0;
  Word replacement;
};

/// The symmetrized member a replace move refers to.
Word relator_member(const Presentation& p, int relator, bool inverted, int rotation);

/// Applies one move to a cyclic word. Throws std::invalid_argument when the
/// move does not apply.
Word apply_move(const Presentation& p, const Word& word, const DehnMove& move);

enum class DehnVerdict { trivial, stuck };

struct DehnResult {
  DehnVerdict verdict = DehnVerdict::stuck;
  std::vector<DehnMove> trace;
  Word terminal;
};

/// Dehn's algorithm on the cyclic word u. `trivial` is always sound;
/// `stuck` means nontrivial only for Dehn presentations.
DehnResult dehn_solve(const Presentation& p, const Word& u);

}  // namespace coherence
