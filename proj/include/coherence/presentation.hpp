#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coherence/words.hpp"

namespace coherence {

/// Malformed user input (files, words, command arguments).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational make(long long num, long long den);
  bool operator==(const Rational&) const = default;
  std::string str() const;
};

/// `assert ...` directives from a presentation file.
struct ClassAssertions {
  bool dehn = false;
  bool c6p = false;
  bool c4t4p = false;
  std::optional<Rational> lambda;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
  ClassAssertions asserted;

  int generator_count() const { return static_cast<int>(generators.size()); }
  std::optional<int> find_generator(std::string_view name) const;
  std::string format_word(WordView w) const;
};

/// Parses the line-oriented presentation format. Relators are cyclically
/// reduced on load; a warning is appended for each one that changed.
Presentation parse_presentation(std::string_view text, std::vector<std::string>* warnings = nullptr);
Presentation read_presentation_file(const std::string& path,
                                    std::vector<std::string>* warnings = nullptr);

/// Inverse of parse_presentation (up to comments and whitespace).
std::string format_presentation(const Presentation& p);

/// Word syntax: space separated tokens `x`, `x-`, `x^k`, `x^-k`. A single
/// token over one-character generator names may be written compactly, e.g.
/// `aba-b-`. The empty string and `1` denote the empty word.
Word parse_word(std::string_view text, const Presentation& p);

/// Generators sorted by name and relators rotated to their least rotation,
/// serialized as text.
std::string canonical_form(const Presentation& p);
/// SHA-256 of canonical_form, hex encoded.
std::string presentation_digest(const Presentation& p);

}  // namespace coherence
