#include "coherence/presentation.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace coherence {

namespace {

bool valid_name(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long parse_int(std::string_view s, const std::string& what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw InputError("bad integer in " + what + ": '" + std::string(s) + "'");
  return v;
}

// `x`, `x-`, `x^k`, `x^-k`
bool parse_token(std::string_view tok, const Presentation& p, Word& out) {
  std::string_view name = tok;
  long long exp = 1;
  if (auto caret = tok.find('^'); caret != std::string_view::npos) {
    name = tok.substr(0, caret);
    std::string_view e = tok.substr(caret + 1);
    bool neg = !e.empty() && e[0] == '-';
    if (neg) e.remove_prefix(1);
    if (e.empty()) return false;
    long long k = parse_int(e, "exponent");
    if (k < 1) throw InputError("exponent must be at least 1 in '" + std::string(tok) + "'");
    exp = neg ? -k : k;
  } else if (!tok.empty() && tok.back() == '-') {
    name = tok.substr(0, tok.size() - 1);
    exp = -1;
  }
  auto g = p.find_generator(name);
  if (!g) return false;
  Letter l(*g, exp < 0);
  for (long long i = 0; i < std::llabs(exp); ++i) out.push_back(l);
  return true;
}

std::string hex(const unsigned char* data, unsigned len) {
  std::string out;
  char buf[3];
  for (unsigned i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", data[i]);
    out += buf;
  }
  return out;
}

}  // namespace

Rational Rational::make(long long num, long long den) {
  if (den == 0) throw InputError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

std::optional<int> Presentation::find_generator(std::string_view name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::string Presentation::format_word(WordView w) const {
  if (w.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const std::size_t run = j - i;
    if (!out.empty()) out += ' ';
    const std::string& name = generators.at(static_cast<std::size_t>(w[i].gen()));
    if (run == 1)
      out += w[i].inverted() ? name + "-" : name;
    else
      out += name + (w[i].inverted() ? "^-" : "^") + std::to_string(run);
    i = j;
  }
  return out;
}

Presentation parse_presentation(std::string_view text, std::vector<std::string>* warnings) {
  struct Line {
    int number;
    std::vector<std::string_view> tokens;
  };
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (!toks.empty()) lines.push_back({number, std::move(toks)});
    pos = end + 1;
  }

  auto fail = [](int line, const std::string& msg) -> InputError {
    return InputError("line " + std::to_string(line) + ": " + msg);
  };

  Presentation p;
  // Generators first so that declaration order does not matter.
  for (const auto& l : lines) {
    if (l.tokens[0] != "gens") continue;
    if (l.tokens.size() < 2) throw fail(l.number, "`gens` needs at least one name");
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      std::string_view name = l.tokens[i];
      if (!valid_name(name)) throw fail(l.number, "invalid generator name '" + std::string(name) + "'");
      if (p.find_generator(name)) throw fail(l.number, "duplicate generator '" + std::string(name) + "'");
      p.generators.emplace_back(name);
    }
  }

  for (const auto& l : lines) {
    std::string_view head = l.tokens[0];
    if (head == "gens") continue;
    if (head == "rel") {
      Word w;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        if (!parse_token(l.tokens[i], p, w))
          throw fail(l.number, "unknown generator in token '" + std::string(l.tokens[i]) + "'");
      }
      CyclicReduction cr = cyclic_reduce(w);
      if (cr.word.empty()) throw fail(l.number, "empty relator after reduction");
      if (cr.word.size() != w.size() && warnings)
        warnings->push_back("line " + std::to_string(l.number) + ": relator cyclically reduced to '" +
                            p.format_word(cr.word) + "'");
      p.relators.push_back(std::move(cr.word));
    } else if (head == "assert") {
      if (l.tokens.size() < 2) throw fail(l.number, "`assert` needs a class");
      std::string_view cls = l.tokens[1];
      if (cls == "dehn" && l.tokens.size() == 2) {
        p.asserted.dehn = true;
      } else if (cls == "c6p" && l.tokens.size() == 2) {
        p.asserted.c6p = true;
      } else if (cls == "c4t4p" && l.tokens.size() == 2) {
        p.asserted.c4t4p = true;
      } else if (cls == "lambda" && l.tokens.size() == 3) {
        std::string_view frac = l.tokens[2];
        auto slash = frac.find('/');
        if (slash == std::string_view::npos) throw fail(l.number, "lambda must be written p/q");
        Rational r = Rational::make(parse_int(frac.substr(0, slash), "lambda"),
                                    parse_int(frac.substr(slash + 1), "lambda"));
        if (r.num <= 0 || r.num > r.den) throw fail(l.number, "lambda must lie in (0, 1]");
        p.asserted.lambda = r;
      } else {
        throw fail(l.number, "unknown assertion '" + std::string(cls) + "'");
      }
    } else {
      throw fail(l.number, "unknown directive '" + std::string(head) + "'");
    }
  }
  return p;
}

Presentation read_presentation_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str(), warnings);
}

std::string format_presentation(const Presentation& p) {
  std::string out;
  if (!p.generators.empty()) {
    out += "gens";
    for (const auto& g : p.generators) out += " " + g;
    out += "\n";
  }
  for (const auto& r : p.relators) out += "rel " + p.format_word(r) + "\n";
  if (p.asserted.dehn) out += "assert dehn\n";
  if (p.asserted.c6p) out += "assert c6p\n";
  if (p.asserted.c4t4p) out += "assert c4t4p\n";
  if (p.asserted.lambda) out += "assert lambda " + p.asserted.lambda->str() + "\n";
  return out;
}

Word parse_word(std::string_view text, const Presentation& p) {
  Word w;
  auto toks = split_ws(text);
  if (toks.size() == 1 && toks[0] == "1") return w;
  const bool single_char_names = std::all_of(p.generators.begin(), p.generators.end(),
                                             [](const std::string& g) { return g.size() == 1; });
  for (std::string_view tok : toks) {
    if (parse_token(tok, p, w)) continue;
    if (!single_char_names) throw InputError("unknown generator in token '" + std::string(tok) + "'");
    // compact spelling, e.g. `aba-b-`
    for (std::size_t i = 0; i < tok.size(); ++i) {
      auto g = p.find_generator(tok.substr(i, 1));
      if (!g) throw InputError("unknown generator '" + std::string(tok.substr(i, 1)) + "' in '" + std::string(tok) + "'");
      bool inv = i + 1 < tok.size() && tok[i + 1] == '-';
      w.emplace_back(*g, inv);
      if (inv) ++i;
    }
  }
  return w;
}

std::string canonical_form(const Presentation& p) {
  std::vector<int> order(p.generators.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return p.generators[static_cast<std::size_t>(a)] < p.generators[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(p.generators.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  Presentation q;
  for (int g : order) q.generators.push_back(p.generators[static_cast<std::size_t>(g)]);
  for (const Word& r : p.relators) {
    Word renamed;
    for (Letter l : r) renamed.emplace_back(rank[static_cast<std::size_t>(l.gen())], l.inverted());
    q.relators.push_back(least_rotation(renamed));
  }
  return format_presentation(q);
}

std::string presentation_digest(const Presentation& p) {
  const std::string text = canonical_form(p);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  return hex(md, len);
}

}  // namespace coherence
