#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/complex.hpp"
#include "coherence/matching.hpp"
#include "coherence/presentation.hpp"

namespace coherence {

enum class PresentationClass { dehn, c6p, c4t4p, lambda, power_relator };

std::string class_name(PresentationClass c);
/// Accepts dehn, c6p, c4t4p, lambda, power. Throws InputError otherwise.
PresentationClass parse_class(std::string_view name);

/// Class prerequisites do not hold (and were not asserted).
class PrerequisiteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// V1 = relators, V2 = generators; (r, x) iff x occurs in r.
BipartiteGraph incidence_graph(const Presentation& p);

struct Prerequisites {
  std::string dehn_status;  // certified | asserted | unknown
  int max_piece_length = 0;
  int c_value = 0;  // kUnbounded for no bound
  int t_value = 0;
  bool property_p = false;
  bool metric_gate = false;
  Rational metric_ratio;
  std::optional<Rational> lambda;
  std::string lambda_source;  // asserted | dehn=>1/2 | newman=>1/n | always=>1
  bool operator==(const Prerequisites&) const = default;
};

/// Evidence for every class; throws PrerequisiteError when the given class
/// is not established.
Prerequisites check_prerequisites(const Presentation& p, PresentationClass c);

/// Multiplicity per relator and the bound on complement length it must
/// dominate (n * m(r) >= bound).
struct ClassMultiplicities {
  Multiplicity m;
  std::vector<int> bound;
};

ClassMultiplicities multiplicities(const Presentation& p, PresentationClass c, const Prerequisites& pre);
ClassMultiplicities multiplicities(const Presentation& p, PresentationClass c);

/// Sparse weights: for each matching edge (r, x), weight one on the
/// smallest unused boundary position of face r reading x.
WeightFunction synthesize_weights(const Presentation& p, const EdgeSet& matching);

struct InequalityCheck {
  int relator = 0;
  int exponent = 1;
  int multiplicity = 0;
  int bound = 0;
  bool holds = false;
  bool operator==(const InequalityCheck&) const = default;
};

struct WeightEntry {
  int relator = 0;
  int position = 0;
  std::int64_t weight = 0;
  bool operator==(const WeightEntry&) const = default;
};

struct Certificate {
  std::string presentation;  // format_presentation text
  std::string digest;
  PresentationClass cls = PresentationClass::dehn;
  Prerequisites prerequisites;
  Multiplicity multiplicities;
  EdgeSet matching;  // (relator, generator)
  std::vector<WeightEntry> weights;
  std::vector<InequalityCheck> inequality_checks;
  bool coherent = false;
  std::optional<HallViolation> violation;  // relators / generators

  WeightFunction weight_function() const;
};

/// Throws PrerequisiteError when the class is not established.
Certificate certify(const Presentation& p, PresentationClass c);

/// Recomputes every field from p; on failure `reason` says what differs.
bool verify_certificate(const Presentation& p, const Certificate& cert, std::string* reason = nullptr);

/// Pretty-printed JSON with sorted keys.
std::string certificate_to_json(const Certificate& cert, const Presentation& p);
/// Throws InputError on malformed documents.
Certificate certificate_from_json(std::string_view text, const Presentation& p);

}  // namespace coherence
