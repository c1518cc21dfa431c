#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coherence/certify.hpp"
#include "coherence/complex.hpp"
#include "coherence/io.hpp"
#include "coherence/matching.hpp"
#include "coherence/presentation.hpp"
#include "coherence/smallcancel.hpp"
#include "coherence/subgroup.hpp"

namespace py = pybind11;
using namespace coherence;

namespace {

py::object bound_or_none(int v) { return v == kUnbounded ? py::none() : py::cast(v); }

py::dict analyze(const std::string& text) {
  const Presentation p = parse_presentation(text);
  const PieceReport report = pieces(p);
  const MetricGate gate = metric_gate(p, report);
  py::dict d;
  d["generators"] = p.generators;
  d["max_piece_length"] = report.max_piece_length;
  d["c_value"] = bound_or_none(c_value(report));
  d["t_value"] = bound_or_none(t_value(p));
  d["property_p"] = property_p(p, report);
  d["certified_dehn"] = gate.certified_dehn;
  d["metric_ratio"] = gate.ratio.str();
  py::list exps;
  for (const Word& r : p.relators) {
    const auto dec = exponent_decompose(r);
    exps.append(py::make_tuple(p.format_word(dec.root), dec.exponent));
  }
  d["exponents"] = exps;
  return d;
}

py::tuple certify_text(const std::string& text, const std::string& cls) {
  const Presentation p = parse_presentation(text);
  const Certificate cert = certify(p, parse_class(cls));
  return py::make_tuple(cert.coherent, certificate_to_json(cert, p));
}

bool verify_text(const std::string& text, const std::string& json) {
  const Presentation p = parse_presentation(text);
  return verify_certificate(p, certificate_from_json(json, p));
}

py::dict matching(int left, int right, const std::vector<std::pair<int, int>>& edges, const Multiplicity& m) {
  BipartiteGraph g(left, right);
  for (auto [u, v] : edges) g.add_edge(u, v);
  if (static_cast<int>(m.size()) != left) throw std::invalid_argument("one multiplicity per left vertex");
  const MatchingResult r = m_matching(g, m);
  py::dict d;
  if (const auto* e = std::get_if<EdgeSet>(&r)) {
    d["matching"] = *e;
  } else {
    const auto& v = std::get<HallViolation>(r);
    d["subset"] = v.subset;
    d["neighbourhood"] = v.neighbourhood;
  }
  return d;
}

py::dict word_problem(const std::string& text, const std::string& word) {
  const Presentation p = parse_presentation(text);
  const DehnResult r = dehn_solve(p, parse_word(word, p));
  py::dict d;
  d["trivial"] = r.verdict == DehnVerdict::trivial;
  d["terminal"] = p.format_word(r.terminal);
  d["moves"] = r.trace.size();
  return d;
}

std::int64_t missing_weight_text(const std::string& complex_text, const std::string& map_text) {
  const ComplexFile cx = parse_complex(complex_text);
  return missing_weight(parse_map(map_text, cx.complex), cx.weights);
}

py::dict subgroup(const std::string& text, const std::vector<std::string>& gens, int bound, int max_iterations) {
  const Presentation p = parse_presentation(text);
  std::vector<Word> words;
  for (const auto& g : gens) words.push_back(parse_word(g, p));
  SubgroupOptions opt;
  opt.bound = bound;
  opt.max_iterations = max_iterations;
  const SubgroupPresentation s = present_subgroup(p, certify(p, PresentationClass::dehn), words, opt);
  py::dict d;
  d["presentation"] = format_presentation(s.as_presentation());
  d["status"] = status_name(s.status);
  d["trajectory"] = s.trajectory;
  d["log"] = subgroup_log_json(s, p);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherence certificates for finitely presented groups";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<PrerequisiteError>(m, "PrerequisiteError", PyExc_RuntimeError);

  m.def("normalize", [](const std::string& text) { return format_presentation(parse_presentation(text)); },
        py::arg("text"), "Parse a presentation and print it back in canonical layout.");
  m.def("digest", [](const std::string& text) { return presentation_digest(parse_presentation(text)); },
        py::arg("text"));
  m.def("analyze", &analyze, py::arg("text"));
  m.def("certify", &certify_text, py::arg("text"), py::arg("cls") = "dehn",
        "Returns (coherent, certificate JSON).");
  m.def("verify", &verify_text, py::arg("text"), py::arg("certificate"));
  m.def("matching", &matching, py::arg("left"), py::arg("right"), py::arg("edges"), py::arg("multiplicity"),
        "Returns {'matching': edges} or {'subset': ..., 'neighbourhood': ...}.");
  m.def("word_problem", &word_problem, py::arg("text"), py::arg("word"));
  m.def("missing_weight", &missing_weight_text, py::arg("complex"), py::arg("map"));
  m.def("subgroup", &subgroup, py::arg("text"), py::arg("gens"), py::arg("bound") = 6, py::arg("max_iterations") = 100);
}
