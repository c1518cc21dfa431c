#include <doctest.h>

#include <deque>
#include <set>

#include "coherence/presentation.hpp"
#include "coherence/smallcancel.hpp"
#include "support.hpp"

using namespace coherence;
using namespace testing;

namespace {

std::vector<Word> naive_symmetrized(const Presentation& p) {
  std::set<Word> all;
  for (const Word& r : p.relators)
    for (std::size_t k = 0; k < r.size(); ++k) {
      all.insert(naive_rotate(r, k));
      all.insert(naive_rotate(naive_inverse(r), k));
    }
  return {all.begin(), all.end()};
}

bool naive_is_piece(const std::vector<Word>& sym, const Word& u) {
  int hits = 0;
  for (const Word& s : sym)
    if (s.size() >= u.size() && std::equal(u.begin(), u.end(), s.begin())) ++hits;
  return hits >= 2;
}

int naive_max_piece(const std::vector<Word>& sym) {
  int best = 0;
  for (std::size_t i = 0; i < sym.size(); ++i)
    for (std::size_t j = i + 1; j < sym.size(); ++j) {
      std::size_t k = 0;
      while (k < sym[i].size() && k < sym[j].size() && sym[i][k] == sym[j][k]) ++k;
      best = std::max(best, static_cast<int>(k));
    }
  return best;
}

// Fewest pieces tiling the cyclic word r, trying every starting rotation.
int naive_factorization(const std::vector<Word>& sym, const Word& r) {
  const int n = static_cast<int>(r.size());
  int best = kUnbounded;
  for (int s = 0; s < n; ++s) {
    std::vector<int> dp(static_cast<std::size_t>(n) + 1, -1);
    dp[0] = 0;
    for (int i = 0; i < n; ++i) {
      if (dp[static_cast<std::size_t>(i)] < 0) continue;
      for (int len = 1; i + len <= n; ++len) {
        Word u = cyclic_subword(r, static_cast<std::size_t>(s + i), static_cast<std::size_t>(len));
        if (!naive_is_piece(sym, u)) break;
        int& cell = dp[static_cast<std::size_t>(i + len)];
        if (cell < 0 || cell > dp[static_cast<std::size_t>(i)] + 1) cell = dp[static_cast<std::size_t>(i)] + 1;
      }
    }
    const int here = dp[static_cast<std::size_t>(n)];
    if (here > 0 && (best == kUnbounded || here < best)) best = here;
  }
  return best;
}

// Girth of the simple graph on letter codes with an edge {y^-1, z} per corner y z.
int naive_girth(const Presentation& p) {
  const int v = 2 * static_cast<int>(p.generators.size());
  std::set<std::pair<int, int>> edges;
  for (const Word& r : p.relators)
    for (std::size_t i = 0; i < r.size(); ++i) {
      int a = static_cast<int>(r[i].inverse().code());
      int b = static_cast<int>(r[(i + 1) % r.size()].code());
      if (a == b) continue;
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  int best = kUnbounded;
  for (auto [a, b] : edges) {
    std::vector<int> dist(static_cast<std::size_t>(v), -1);
    std::deque<int> q{a};
    dist[static_cast<std::size_t>(a)] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (auto [c, d] : edges) {
        if ((c == a && d == b)) continue;
        int y = c == x ? d : d == x ? c : -1;
        if (y < 0 || dist[static_cast<std::size_t>(y)] >= 0) continue;
        dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
        q.push_back(y);
      }
    }
    if (dist[static_cast<std::size_t>(b)] >= 0) {
      const int cyc = dist[static_cast<std::size_t>(b)] + 1;
      if (best == kUnbounded || cyc < best) best = cyc;
    }
  }
  return best;
}

Presentation random_presentation(std::mt19937_64& rng) {
  Presentation p;
  const int gens = 2 + static_cast<int>(rng() % 2);
  for (int g = 0; g < gens; ++g) p.generators.push_back(std::string(1, static_cast<char>('a' + g)));
  const int rels = 1 + static_cast<int>(rng() % 2);
  while (static_cast<int>(p.relators.size()) < rels) {
    Word w = cyclic_reduce(random_reduced_word(rng, gens, 3 + static_cast<int>(rng() % 6))).word;
    if (!w.empty()) p.relators.push_back(w);
  }
  return p;
}

// Independent replay of a Dehn trace; returns false on any unjustified step.
bool naive_replay(const Presentation& p, const Word& start, const DehnResult& res) {
  const auto sym = naive_symmetrized(p);
  Word w = start;
  for (const DehnMove& m : res.trace) {
    const std::size_t n = w.size();
    if (m.kind == DehnMove::Kind::tighten) {
      const std::size_t i = static_cast<std::size_t>(m.position);
      if (n < 2 || i >= n || w[i] != w[(i + 1) % n].inverse()) return false;
      Word next;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != (i + 1) % n) next.push_back(w[k]);
      w = next;
      continue;
    }
    Word rot = naive_rotate(w, static_cast<std::size_t>(m.at));
    Word u(rot.begin(), rot.begin() + m.length);
    Word rest(rot.begin() + m.length, rot.end());
    bool justified = false;
    for (const Word& s : sym) {
      if (s.size() >= 2 * u.size()) continue;
      if (!std::equal(u.begin(), u.end(), s.begin())) continue;
      Word v(s.begin() + static_cast<long>(u.size()), s.end());
      if (naive_inverse(v) == m.replacement) justified = true;
    }
    if (!justified) return false;
    w = cat(m.replacement, rest);
  }
  return naive_is_rotation(w, res.terminal) && (res.verdict == DehnVerdict::trivial) == w.empty();
}

bool naive_stuck(const Presentation& p, const Word& w) {
  if (w.empty() || !is_cyclically_reduced(w)) return false;
  for (const Word& s : naive_symmetrized(p))
    for (std::size_t k = 0; k < w.size(); ++k) {
      Word rot = naive_rotate(w, k);
      std::size_t len = 0;
      while (len < rot.size() && len < s.size() && rot[len] == s[len]) ++len;
      if (2 * len > s.size()) return false;
    }
  return true;
}

Word random_relator_product(std::mt19937_64& rng, const Presentation& p, int factors, int conj_len) {
  Word w;
  for (int i = 0; i < factors; ++i) {
    Word c = random_word(rng, static_cast<int>(p.generators.size()), static_cast<int>(rng() % (conj_len + 1)));
    Word r = p.relators[rng() % p.relators.size()];
    if (rng() % 2) r = naive_inverse(r);
    w = cat(w, cat(cat(c, r), naive_inverse(c)));
  }
  return naive_free_reduce(w);
}

}  // namespace

TEST_SUITE("smallcancel") {
  TEST_CASE("pieces and C values agree with brute force") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 300; ++it) {
      Presentation p = random_presentation(rng);
      auto sym = naive_symmetrized(p);
      CHECK(symmetrized_set(p).size() == sym.size());
      PieceReport rep = pieces(p);
      CHECK(rep.max_piece_length == naive_max_piece(sym));
      for (std::size_t i = 0; i < p.relators.size(); ++i)
        CHECK(rep.factorization_length[i] == naive_factorization(sym, p.relators[i]));
      for (const Word& u : rep.pieces) CHECK(naive_is_piece(sym, u));
    }
  }

  TEST_CASE("T values agree with a brute-force girth") {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 300; ++it) {
      Presentation p = random_presentation(rng);
      CHECK(t_value(p) == naive_girth(p));
    }
  }

  TEST_CASE("surface relator") {
    Presentation p = parse_presentation("gens a b c d\nrel a b a- b- c d c- d-\n");
    CHECK(c_value(p) == 8);
    CHECK(t_value(p) == 8);
    CHECK(pieces(p).max_piece_length == 1);
    CHECK(metric_gate(p).certified_dehn);
    CHECK(property_p(p));
  }

  TEST_CASE("proper powers of one letter have no bounded factorization") {
    Presentation p = parse_presentation("gens x\nrel x^4\n");
    CHECK(c_value(p) == kUnbounded);
  }

  TEST_CASE("Dehn traces replay independently") {
    std::mt19937_64 rng(23);
    const char* texts[] = {"gens a b c d\nrel a b a- b- c d c- d-\n", "gens x\nrel x^4\n",
                           "gens a b\nrel a b a b\n", "gens a b c\nrel a b c a- b c- b\n"};
    for (const char* t : texts) {
      Presentation p = parse_presentation(t);
      for (int it = 0; it < 150; ++it) {
        Word w = it % 2 ? random_relator_product(rng, p, 1 + it % 3, 3)
                        : random_word(rng, static_cast<int>(p.generators.size()), it % 14);
        DehnResult res = dehn_solve(p, w);
        CHECK(naive_replay(p, w, res));
        if (res.verdict == DehnVerdict::stuck) CHECK(naive_stuck(p, res.terminal));
      }
    }
  }

  TEST_CASE("bounded normal closure: relator products are trivial in Dehn presentations") {
    std::mt19937_64 rng(24);
    for (const char* t : {"gens a b c d\nrel a b a- b- c d c- d-\n", "gens x\nrel x^4\n"}) {
      Presentation p = parse_presentation(t);
      REQUIRE(metric_gate(p).certified_dehn);
      for (int it = 0; it < 300; ++it) {
        Word w = random_relator_product(rng, p, 1 + it % 4, 4);
        CHECK(dehn_solve(p, w).verdict == DehnVerdict::trivial);
      }
    }
  }

  TEST_CASE("words with nonzero abelian image are stuck") {
    std::mt19937_64 rng(25);
    Presentation g2 = parse_presentation("gens a b c d\nrel a b a- b- c d c- d-\n");
    Presentation x4 = parse_presentation("gens x\nrel x^4\n");
    for (int it = 0; it < 300; ++it) {
      Word w = random_word(rng, 4, 1 + it % 12);
      std::vector<int> sums(4, 0);
      for (Letter l : w) sums[static_cast<std::size_t>(l.gen())] += l.inverted() ? -1 : 1;
      if (sums != std::vector<int>(4, 0)) CHECK(dehn_solve(g2, w).verdict == DehnVerdict::stuck);

      Word y = random_word(rng, 1, 1 + it % 12);
      int s = 0;
      for (Letter l : y) s += l.inverted() ? -1 : 1;
      CHECK((dehn_solve(x4, y).verdict == DehnVerdict::trivial) == (s % 4 == 0));
    }
  }

  TEST_CASE("apply_move rejects unjustified moves") {
    Presentation p = parse_presentation("gens x\nrel x^4\n");
    Word w = parse_word("x x x", p);
    DehnMove bad;
    bad.kind = DehnMove::Kind::replace;
    bad.relator = 0;
    bad.length = 2;
    bad.replacement = parse_word("x- x-", p);
    CHECK_THROWS_AS(apply_move(p, w, bad), std::invalid_argument);
    DehnMove tight;
    tight.position = 0;
    CHECK_THROWS_AS(apply_move(p, w, tight), std::invalid_argument);
  }
}
