#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "coherence/certify.hpp"
#include "coherence/complex.hpp"
#include "coherence/io.hpp"
#include "coherence/matching.hpp"
#include "coherence/presentation.hpp"
#include "coherence/reduction.hpp"
#include "coherence/smallcancel.hpp"
#include "coherence/subgroup.hpp"
#include "coherence/words.hpp"

using namespace coherence;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;

std::string bound_text(int v) { return v == kUnbounded ? "unbounded" : std::to_string(v); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Presentation load(const std::string& path) {
  std::vector<std::string> warnings;
  Presentation p = read_presentation_file(path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  return p;
}

int cmd_analyze(const std::string& file) {
  const Presentation p = load(file);
  const PieceReport report = pieces(p);
  const StarGraph star = star_graph(p);
  const CycleCount cycles = count_cycles(star);
  const MetricGate gate = metric_gate(p, report);
  const int c = c_value(report);
  const int t = girth(star);

  std::cout << "generators: " << p.generators.size() << "\n";
  std::cout << "relators: " << p.relators.size() << "\n";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const auto d = exponent_decompose(p.relators[i]);
    std::cout << "  r" << i << ": " << p.format_word(p.relators[i]) << "  length " << p.relators[i].size() << "  root "
              << p.format_word(d.root) << "  exponent " << d.exponent << "  pieces "
              << bound_text(report.factorization_length[i]) << "  longest piece " << report.max_piece_in_relator[i]
              << "\n";
  }
  std::cout << "pieces: " << report.pieces.size() << "\n";
  std::cout << "max piece length: " << report.max_piece_length << "\n";
  std::cout << "C(p) holds for p <= " << bound_text(c) << "\n";
  std::cout << "T(q) holds for q <= " << bound_text(t) << "\n";
  std::cout << "star graph: " << star.vertex_count << " vertices, " << star.simple_edges().size() << " edges, "
            << cycles.count << (cycles.capped ? "+" : "") << " cycles\n";
  std::cout << "property P: " << yes_no(property_p(p, report)) << "\n";
  std::cout << "metric ratio: " << gate.ratio.str() << "\n";
  std::cout << "metric gate certifies Dehn: " << yes_no(gate.certified_dehn) << "\n";
  return kOk;
}

int cmd_certify(const std::string& file, const std::string& cls, const std::string& out) {
  const Presentation p = load(file);
  const Certificate cert = certify(p, parse_class(cls));
  const std::string json = certificate_to_json(cert, p);
  if (out.empty()) {
    std::cout << json << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw InputError("cannot write '" + out + "'");
    f << json << "\n";
  }
  std::cerr << "verdict: " << (cert.coherent ? "coherent" : "inconclusive") << "\n";
  return cert.coherent ? kOk : kNegative;
}

int cmd_verify(const std::string& file, const std::string& cert_file) {
  const Presentation p = load(file);
  const Certificate cert = certificate_from_json(read_text_file(cert_file), p);
  std::string reason;
  if (verify_certificate(p, cert, &reason)) {
    std::cout << "certificate verified\n";
    return kOk;
  }
  std::cout << "certificate rejected: " << reason << "\n";
  return kError;
}

int cmd_matching(const std::string& file) {
  const GraphFile g = read_graph_file(file);
  const MatchingResult r = m_matching(g.graph, g.multiplicity);
  if (const auto* edges = std::get_if<EdgeSet>(&r)) {
    std::cout << "m-matching:\n";
    for (const auto& [u, v] : *edges) std::cout << "  " << g.left_names[u] << " " << g.right_names[v] << "\n";
    return kOk;
  }
  const auto& v = std::get<HallViolation>(r);
  long long demand = 0;
  std::cout << "violation:\n  subset:";
  for (int u : v.subset) {
    std::cout << " " << g.left_names[u];
    demand += g.multiplicity[u];
  }
  std::cout << "\n  neighbourhood:";
  for (int w : v.neighbourhood) std::cout << " " << g.right_names[w];
  std::cout << "\n  demand " << demand << " > supply " << v.neighbourhood.size() << "\n";
  return kNegative;
}

int cmd_missing_weight(const std::string& complex_file, const std::string& map_file) {
  const ComplexFile cx = read_complex_file(complex_file);
  const CombinatorialMap phi = read_map_file(map_file, cx.complex);
  const auto per_edge = edge_missing_weights(phi, cx.weights);
  const TwoComplex& y = phi.source();
  for (int e = 0; e < y.edge_count(); ++e) {
    const std::string& name = y.edge(e).name;
    std::cout << (name.empty() ? "e" + std::to_string(e) : name) << " -> "
              << phi.target().edge(phi.edge_image(e).edge).name << ": " << per_edge[e] << "\n";
  }
  std::cout << "total: " << missing_weight(phi, cx.weights) << "\n";
  return kOk;
}

std::vector<Word> parse_gens(const std::string& text, const Presentation& p) {
  std::vector<Word> words;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) words.push_back(parse_word(item, p));
  if (words.empty()) throw InputError("--gens needs at least one word");
  return words;
}

int cmd_subgroup(const std::string& file, const std::string& gens, int bound, int max_iter, const std::string& log) {
  const Presentation p = load(file);
  const Certificate cert = certify(p, PresentationClass::dehn);
  if (!cert.coherent) throw InputError("presentation does not certify coherent under the Dehn class");
  SubgroupOptions opt;
  opt.bound = bound;
  opt.max_iterations = max_iter;
  const SubgroupPresentation result = present_subgroup(p, cert, parse_gens(gens, p), opt);
  std::cout << format_presentation(result.as_presentation());
  std::cout << "# status " << status_name(result.status) << "\n";
  std::cout << "# missing weight";
  for (auto m : result.trajectory) std::cout << " " << m;
  std::cout << "\n";
  const std::string json = subgroup_log_json(result, p);
  if (log.empty()) {
    std::cerr << json << "\n";
  } else {
    std::ofstream f(log);
    if (!f) throw InputError("cannot write '" + log + "'");
    f << json << "\n";
  }
  return kOk;
}

int cmd_word(const std::string& file, const std::string& text) {
  const Presentation p = load(file);
  const Word u = parse_word(text, p);
  const DehnResult r = dehn_solve(p, u);
  Word current = u;
  std::cout << "start: " << (current.empty() ? "1" : p.format_word(current)) << "\n";
  for (const DehnMove& m : r.trace) {
    current = apply_move(p, current, m);
    if (m.kind == DehnMove::Kind::tighten) {
      std::cout << "tighten at " << m.position;
    } else {
      std::cout << "replace r" << m.relator << (m.inverted ? "^-1" : "") << " rotation " << m.rotation << " at "
                << m.at << " length " << m.length << " by " << (m.replacement.empty() ? "1" : p.format_word(m.replacement));
    }
    std::cout << " -> " << (current.empty() ? "1" : p.format_word(current)) << "\n";
  }
  const bool trivial = r.verdict == DehnVerdict::trivial;
  std::cout << "verdict: " << (trivial ? "trivial" : "stuck") << "\n";
  return trivial ? kOk : kNegative;
}

int cmd_fuzz_matching(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int i = 0; i < count; ++i) {
    const int l = std::uniform_int_distribution<int>(1, 5)(rng);
    const int r = std::uniform_int_distribution<int>(1, 5)(rng);
    BipartiteGraph g(l, r);
    for (int u = 0; u < l; ++u)
      for (int v = 0; v < r; ++v)
        if (std::bernoulli_distribution(0.4)(rng)) g.add_edge(u, v);
    Multiplicity m(static_cast<std::size_t>(l));
    for (auto& x : m) x = std::uniform_int_distribution<int>(1, 3)(rng);
    const MatchingResult res = m_matching(g, m);
    const bool ok = has_matching(res) ? is_m_matching(g, m, std::get<EdgeSet>(res))
                                      : is_hall_violation(g, m, std::get<HallViolation>(res));
    if (!ok) ++failures;
  }
  std::cout << count << " graphs, " << failures << " unverified witnesses\n";
  return failures == 0 ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherence certification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "seed for randomized commands");

  std::string file, second, cls, out, gens, log;
  int bound = 6, max_iter = 100, count = 1000;

  auto* analyze = app.add_subcommand("analyze", "piece report, C/T values, property P, metric gate");
  analyze->add_option("file", file)->required();

  auto* cert = app.add_subcommand("certify", "emit a certificate as JSON");
  cert->add_option("file", file)->required();
  cert->add_option("--class", cls, "dehn|c6p|c4t4p|lambda|power")->required();
  cert->add_option("-o,--output", out, "write the certificate here instead of stdout");

  auto* verify = app.add_subcommand("verify", "check a certificate");
  verify->add_option("file", file)->required();
  verify->add_option("certificate", second)->required();

  auto* matching = app.add_subcommand("matching", "m-matching or Hall violation");
  matching->add_option("graph", file)->required();

  auto* missing = app.add_subcommand("missing-weight", "per-edge and total missing weight of a map");
  missing->add_option("complex", file)->required();
  missing->add_option("--map", second)->required();

  auto* subgroup = app.add_subcommand("subgroup", "presentation of a finitely generated subgroup");
  subgroup->add_option("file", file)->required();
  subgroup->add_option("--gens", gens, "comma-separated words")->required();
  subgroup->add_option("--bound", bound)->check(CLI::NonNegativeNumber);
  subgroup->add_option("--max-iter", max_iter)->check(CLI::NonNegativeNumber);
  subgroup->add_option("--log", log, "write the JSON run log here instead of stderr");

  auto* word = app.add_subcommand("word", "Dehn's algorithm with trace");
  word->add_option("file", file)->required();
  word->add_option("word", second)->required();

  auto* fuzz = app.add_subcommand("fuzz-matching", "check matching witnesses on random graphs");
  fuzz->add_option("--count", count)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*analyze) return cmd_analyze(file);
    if (*cert) return cmd_certify(file, cls, out);
    if (*verify) return cmd_verify(file, second);
    if (*matching) return cmd_matching(file);
    if (*missing) return cmd_missing_weight(file, second);
    if (*subgroup) return cmd_subgroup(file, gens, bound, max_iter, log);
    if (*word) return cmd_word(file, second);
    if (*fuzz) return cmd_fuzz_matching(seed, count);
  } catch (const PrerequisiteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
