#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace coherence {

/// A generator or its inverse, packed as 2*gen + inverted so that the natural
/// order is a < a^-1 < b < b^-1 < ...
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int gen, bool inverted)
      : code_(static_cast<std::uint32_t>(gen) * 2u + (inverted ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr int gen() const { return static_cast<int>(code_ >> 1); }
  constexpr bool inverted() const { return (code_ & 1u) != 0; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }
  constexpr std::uint32_t code() const { return code_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint32_t code_ = 0;
};

using Word = std::vector<Letter>;
using WordView = std::span<const Letter>;

Word inverse(WordView w);
Word concat(WordView a, WordView b);
Word power(WordView w, int n);

/// Removes every adjacent x x^-1 pair.
Word free_reduce(WordView w);
bool is_freely_reduced(WordView w);
bool is_cyclically_reduced(WordView w);

struct CyclicReduction {
  Word word;        // cyclically reduced core
  Word conjugator;  // conjugator * word * conjugator^-1 == input (freely)
};

CyclicReduction cyclic_reduce(WordView w);

Word rotate(WordView w, std::size_t start);
/// Letters w[start], w[start+1], ... (indices mod |w|), `length` of them.
Word cyclic_subword(WordView w, std::size_t start, std::size_t length);
bool is_rotation(WordView a, WordView b);
/// Lexicographically smallest rotation; ties broken by smallest start.
Word least_rotation(WordView w);
std::size_t least_rotation_start(WordView w);

/// Smallest p dividing |w| with w[i] == w[i+p] for all i (cyclically).
std::size_t primitive_period(WordView w);

struct ExponentDecomposition {
  Word root;
  int exponent = 1;
};

/// r = root^exponent with exponent maximal. Throws std::invalid_argument on
/// the empty word.
ExponentDecomposition exponent_decompose(WordView r);

/// For the cyclic occurrence u = r[start, start+length) returns v with u*v a
/// rotation of r. Replacing u by v^-1 is the homotopy across the relator.
/// Throws std::out_of_range unless 1 <= length <= |r|.
Word complement(WordView r, std::size_t start, std::size_t length);

}  // namespace coherence
