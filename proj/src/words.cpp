#include "coherence/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace coherence {

Word inverse(WordView w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(WordView a, WordView b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Word power(WordView w, int n) {
  if (n < 0) return power(inverse(w), -n);
  Word out;
  out.reserve(w.size() * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word free_reduce(WordView w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

bool is_freely_reduced(WordView w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i + 1] == w[i].inverse()) return false;
  return true;
}

bool is_cyclically_reduced(WordView w) {
  if (!is_freely_reduced(w)) return false;
  return w.size() < 2 || w.front() != w.back().inverse();
}

CyclicReduction cyclic_reduce(WordView w) {
  Word reduced = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = reduced.size();
  while (hi - lo >= 2 && reduced[lo] == reduced[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  CyclicReduction out;
  out.conjugator.assign(reduced.begin(), reduced.begin() + static_cast<std::ptrdiff_t>(lo));
  out.word.assign(reduced.begin() + static_cast<std::ptrdiff_t>(lo),
                  reduced.begin() + static_cast<std::ptrdiff_t>(hi));
  return out;
}

Word rotate(WordView w, std::size_t start) {
  if (w.empty()) return {};
  return cyclic_subword(w, start, w.size());
}

Word cyclic_subword(WordView w, std::size_t start, std::size_t length) {
  Word out;
  if (w.empty()) return out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(w[(start + i) % w.size()]);
  return out;
}

bool is_rotation(WordView a, WordView b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < a.size(); ++s) {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = a[(s + i) % a.size()] == b[i];
    if (same) return true;
  }
  return false;
}

std::size_t least_rotation_start(WordView w) {
  std::size_t best = 0;
  const std::size_t n = w.size();
  for (std::size_t s = 1; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      Letter x = w[(s + i) % n];
      Letter y = w[(best + i) % n];
      if (x != y) {
        if (x < y) best = s;
        break;
      }
    }
  }
  return best;
}

Word least_rotation(WordView w) { return rotate(w, least_rotation_start(w)); }

std::size_t primitive_period(WordView w) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + p < n && periodic; ++i) periodic = w[i] == w[i + p];
    if (periodic) return p;
  }
  return n;
}

ExponentDecomposition exponent_decompose(WordView r) {
  if (r.empty()) throw std::invalid_argument("exponent_decompose: empty word");
  const std::size_t p = primitive_period(r);
  ExponentDecomposition out;
  out.root.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(p));
  out.exponent = static_cast<int>(r.size() / p);
  return out;
}

Word complement(WordView r, std::size_t start, std::size_t length) {
  if (length < 1 || length > r.size())
    throw std::out_of_range("complement: occurrence length " + std::to_string(length) +
                            " outside [1, " + std::to_string(r.size()) + "]");
  return cyclic_subword(r, start + length, r.size() - length);
}

}  // namespace coherence
