#include "coherence/certify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "coherence/smallcancel.hpp"
#include "json.hpp"

namespace coherence {

using nlohmann::json;

std::string class_name(PresentationClass c) {
  switch (c) {
    case PresentationClass::dehn: return "dehn";
    case PresentationClass::c6p: return "c6p";
    case PresentationClass::c4t4p: return "c4t4p";
    case PresentationClass::lambda: return "lambda";
    case PresentationClass::power_relator: return "power";
  }
  return "?";
}

PresentationClass parse_class(std::string_view name) {
  for (auto c : {PresentationClass::dehn, PresentationClass::c6p, PresentationClass::c4t4p, PresentationClass::lambda,
                 PresentationClass::power_relator})
    if (class_name(c) == name) return c;
  throw InputError("unknown class '" + std::string(name) + "' (expected dehn, c6p, c4t4p, lambda or power)");
}

BipartiteGraph incidence_graph(const Presentation& p) {
  BipartiteGraph g(static_cast<int>(p.relators.size()), p.generator_count());
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    std::set<int> gens;
    for (Letter l : p.relators[r]) gens.insert(l.gen());
    for (int x : gens) g.add_edge(static_cast<int>(r), x);
  }
  return g;
}

namespace {

bool at_least(int value, int bound) { return value == kUnbounded || value >= bound; }

std::string relator_name(int r) { return "r" + std::to_string(r); }

}  // namespace

Prerequisites check_prerequisites(const Presentation& p, PresentationClass c) {
  Prerequisites pre;
  const PieceReport report = pieces(p);
  const MetricGate gate = metric_gate(p, report);
  pre.max_piece_length = report.max_piece_length;
  pre.c_value = c_value(report);
  pre.t_value = t_value(p);
  pre.property_p = property_p(p, report);
  pre.metric_gate = gate.certified_dehn;
  pre.metric_ratio = gate.ratio;
  pre.dehn_status = gate.certified_dehn ? "certified" : p.asserted.dehn ? "asserted" : "unknown";

  if (c == PresentationClass::power_relator) {
    if (p.relators.size() != 1) throw PrerequisiteError("power class needs exactly one relator");
    const int n = exponent_decompose(p.relators[0]).exponent;
    if (n >= 2) {
      pre.lambda = Rational::make(1, n);
      pre.lambda_source = "newman⇒1/n";
    } else {
      pre.lambda = Rational::make(1, 1);
      pre.lambda_source = "always⇒1";
    }
  } else if (p.asserted.lambda) {
    pre.lambda = p.asserted.lambda;
    pre.lambda_source = "asserted";
  } else if (pre.dehn_status != "unknown") {
    pre.lambda = Rational::make(1, 2);
    pre.lambda_source = "dehn⇒1/2";
  } else if (p.relators.size() == 1 && exponent_decompose(p.relators[0]).exponent >= 2) {
    pre.lambda = Rational::make(1, exponent_decompose(p.relators[0]).exponent);
    pre.lambda_source = "newman⇒1/n";
  }

  switch (c) {
    case PresentationClass::dehn:
      if (pre.dehn_status == "unknown")
        throw PrerequisiteError("Dehn property is neither certified by the metric gate (6 * piece < |r|) nor asserted");
      break;
    case PresentationClass::c6p:
      if (!p.asserted.c6p && !(at_least(pre.c_value, 6) && pre.property_p))
        throw PrerequisiteError("C(6) with property P does not hold (c = " + std::to_string(pre.c_value) +
                                ", property P " + (pre.property_p ? "true" : "false") + ") and is not asserted");
      break;
    case PresentationClass::c4t4p:
      if (!p.asserted.c4t4p && !(at_least(pre.c_value, 4) && at_least(pre.t_value, 4) && pre.property_p))
        throw PrerequisiteError("C(4)-T(4) with property P does not hold and is not asserted");
      break;
    case PresentationClass::lambda:
      if (!pre.lambda) throw PrerequisiteError("no lambda: assert one, or use a Dehn or single power relator presentation");
      break;
    case PresentationClass::power_relator:
      break;
  }
  return pre;
}

ClassMultiplicities multiplicities(const Presentation& p, PresentationClass c, const Prerequisites& pre) {
  ClassMultiplicities out;
  for (const auto& r : p.relators) {
    const auto d = exponent_decompose(r);
    const int len = static_cast<int>(r.size());
    const int w = static_cast<int>(d.root.size());
    const int n = d.exponent;
    int m = 1;
    int bound = 0;
    switch (c) {
      case PresentationClass::dehn:
        m = n == 1 ? (w - 1) / 2 : n == 2 ? w / 2 : (w + 1) / 2;
        bound = (len - 1) / 2;
        break;
      case PresentationClass::c6p:
        m = 3;
        bound = 3 * pre.max_piece_length;
        break;
      case PresentationClass::c4t4p:
        m = 2;
        bound = 2 * pre.max_piece_length;
        break;
      case PresentationClass::lambda:
      case PresentationClass::power_relator: {
        if (!pre.lambda) throw PrerequisiteError("lambda is not established");
        // largest integer k < lambda |r|
        const long long scaled = pre.lambda->num * len;
        const long long k = (scaled + pre.lambda->den - 1) / pre.lambda->den - 1;
        bound = static_cast<int>(k);
        m = static_cast<int>((k + n - 1) / n);
        break;
      }
    }
    out.m.push_back(std::max(m, 1));
    out.bound.push_back(bound);
  }
  return out;
}

ClassMultiplicities multiplicities(const Presentation& p, PresentationClass c) {
  return multiplicities(p, c, check_prerequisites(p, c));
}

WeightFunction synthesize_weights(const Presentation& p, const EdgeSet& matching) {
  WeightFunction w = WeightFunction::sparse();
  std::vector<std::set<int>> used(p.relators.size());
  for (auto [r, x] : matching) {
    const Word& rel = p.relators.at(static_cast<std::size_t>(r));
    bool placed = false;
    for (int j = 0; j < static_cast<int>(rel.size()) && !placed; ++j) {
      if (rel[static_cast<std::size_t>(j)].gen() != x || used[static_cast<std::size_t>(r)].contains(j)) continue;
      used[static_cast<std::size_t>(r)].insert(j);
      w.set({r, j}, 1);
      placed = true;
    }
    if (!placed) throw std::logic_error("synthesize_weights: relator does not read the matched generator");
  }
  return w;
}

WeightFunction Certificate::weight_function() const {
  WeightFunction w = WeightFunction::sparse();
  for (const auto& e : weights) w.set({e.relator, e.position}, e.weight);
  return w;
}

namespace {

std::vector<InequalityCheck> inequality_checks(const Presentation& p, const ClassMultiplicities& cm) {
  std::vector<InequalityCheck> out;
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    InequalityCheck ch;
    ch.relator = static_cast<int>(r);
    ch.exponent = exponent_decompose(p.relators[r]).exponent;
    ch.multiplicity = cm.m[r];
    ch.bound = cm.bound[r];
    ch.holds = static_cast<long long>(ch.exponent) * ch.multiplicity >= ch.bound;
    out.push_back(ch);
  }
  return out;
}

}  // namespace

Certificate certify(const Presentation& p, PresentationClass c) {
  Certificate cert;
  cert.presentation = format_presentation(p);
  cert.digest = presentation_digest(p);
  cert.cls = c;
  cert.prerequisites = check_prerequisites(p, c);
  const ClassMultiplicities cm = multiplicities(p, c, cert.prerequisites);
  cert.multiplicities = cm.m;
  cert.inequality_checks = inequality_checks(p, cm);
  const bool inequalities = std::all_of(cert.inequality_checks.begin(), cert.inequality_checks.end(),
                                        [](const InequalityCheck& ch) { return ch.holds; });

  MatchingResult result = m_matching(incidence_graph(p), cm.m);
  if (auto* matching = std::get_if<EdgeSet>(&result)) {
    cert.coherent = inequalities;
    if (cert.coherent) {
      cert.matching = *matching;
      const WeightFunction w = synthesize_weights(p, cert.matching);
      for (const auto& [t, k] : w.assigned()) cert.weights.push_back({t.face, t.position, k});
    }
  } else {
    cert.violation = std::get<HallViolation>(result);
  }
  return cert;
}

bool verify_certificate(const Presentation& p, const Certificate& cert, std::string* reason) {
  auto fail = [&](std::string why) {
    if (reason) *reason = std::move(why);
    return false;
  };
  if (cert.digest != presentation_digest(p)) return fail("digest does not match the presentation");
  if (cert.presentation != format_presentation(p)) return fail("presentation text does not match");

  Prerequisites pre;
  try {
    pre = check_prerequisites(p, cert.cls);
  } catch (const PrerequisiteError& e) {
    return fail(std::string("prerequisites fail: ") + e.what());
  }
  if (!(pre == cert.prerequisites)) return fail("prerequisite evidence differs from recomputation");

  const ClassMultiplicities cm = multiplicities(p, cert.cls, pre);
  if (cert.multiplicities != cm.m) return fail("multiplicities differ from the class formula");
  const auto checks = inequality_checks(p, cm);
  if (cert.inequality_checks != checks) return fail("inequality checks differ from recomputation");
  const bool inequalities =
      std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& ch) { return ch.holds; });

  const BipartiteGraph g = incidence_graph(p);
  if (!cert.coherent) {
    if (!cert.matching.empty() || !cert.weights.empty()) return fail("inconclusive certificate carries a matching");
    if (cert.violation) {
      if (!is_hall_violation(g, cm.m, *cert.violation)) return fail("violation does not verify");
      return true;
    }
    if (inequalities) return fail("inconclusive certificate without a violation or failing inequality");
    return true;
  }

  if (cert.violation) return fail("coherent certificate carries a violation");
  if (!inequalities) return fail("an inequality check fails");
  if (!is_m_matching(g, cm.m, cert.matching)) return fail("matching is not an m-matching of the incidence graph");

  // weights: one unit per matching edge, on a position reading its generator
  std::set<std::pair<int, int>> unused(cert.matching.begin(), cert.matching.end());
  std::set<std::pair<int, int>> positions;
  for (const auto& e : cert.weights) {
    if (e.relator < 0 || e.relator >= static_cast<int>(p.relators.size())) return fail("weight on unknown relator");
    const Word& r = p.relators[static_cast<std::size_t>(e.relator)];
    if (e.position < 0 || e.position >= static_cast<int>(r.size())) return fail("weight position out of range");
    if (e.weight != 1) return fail("synthesized weights must be one");
    if (!positions.insert({e.relator, e.position}).second) return fail("duplicate weight position");
    if (unused.erase({e.relator, r[static_cast<std::size_t>(e.position)].gen()}) != 1)
      return fail("weight at a position not reading a matched generator");
  }
  if (!unused.empty()) return fail("matching edge without a weight");

  const auto x = presentation_complex(p);
  const WeightFunction w = cert.weight_function();
  for (int e = 0; e < x.edge_count(); ++e)
    if (star_weight(x, w, e) > 1) return fail("star of generator " + p.generators[static_cast<std::size_t>(e)] + " weighs more than one");
  for (int f = 0; f < x.face_count(); ++f) {
    const auto fw = face_weight(x, w, f);
    if (fw <= 0 || fw != cm.m[static_cast<std::size_t>(f)]) return fail("face weight of " + relator_name(f) + " is not m(r)");
  }
  return true;
}

namespace {

json bound_json(int v) { return v == kUnbounded ? json("unbounded") : json(v); }

int bound_from_json(const json& j) {
  if (j.is_string() && j.get<std::string>() == "unbounded") return kUnbounded;
  return j.get<int>();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) throw InputError("bad rational '" + s + "'");
  return Rational::make(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

int relator_index(const json& j, const Presentation& p) {
  const std::string s = j.get<std::string>();
  if (s.size() < 2 || s[0] != 'r') throw InputError("bad relator name '" + s + "'");
  std::size_t used = 0;
  int r = std::stoi(s.substr(1), &used);
  if (used != s.size() - 1 || r < 0 || r >= static_cast<int>(p.relators.size()))
    throw InputError("unknown relator '" + s + "'");
  return r;
}

int generator_index(const json& j, const Presentation& p) {
  const std::string s = j.get<std::string>();
  auto g = p.find_generator(s);
  if (!g) throw InputError("unknown generator '" + s + "'");
  return *g;
}

}  // namespace

std::string certificate_to_json(const Certificate& cert, const Presentation& p) {
  json j;
  j["presentation"] = cert.presentation;
  j["digest"] = cert.digest;
  j["class"] = class_name(cert.cls);

  const Prerequisites& pre = cert.prerequisites;
  j["prerequisites"] = {
      {"dehn_status", pre.dehn_status},
      {"max_piece_length", pre.max_piece_length},
      {"c_value", bound_json(pre.c_value)},
      {"t_value", bound_json(pre.t_value)},
      {"property_p", pre.property_p},
      {"metric_gate", {{"certified_dehn", pre.metric_gate}, {"ratio", pre.metric_ratio.str()}}},
      {"lambda", pre.lambda ? json(pre.lambda->str()) : json(nullptr)},
      {"lambda_source", pre.lambda_source},
  };

  json m = json::object();
  for (std::size_t r = 0; r < cert.multiplicities.size(); ++r) m[relator_name(static_cast<int>(r))] = cert.multiplicities[r];
  j["multiplicities"] = m;

  json matching = json::array();
  for (auto [r, x] : cert.matching) matching.push_back({relator_name(r), p.generators.at(static_cast<std::size_t>(x))});
  j["matching"] = matching;

  json weights = json::array();
  for (const auto& e : cert.weights) weights.push_back({relator_name(e.relator), e.position, e.weight});
  j["weights"] = weights;

  json checks = json::array();
  for (const auto& ch : cert.inequality_checks)
    checks.push_back({{"relator", relator_name(ch.relator)},
                      {"exponent", ch.exponent},
                      {"multiplicity", ch.multiplicity},
                      {"bound", ch.bound},
                      {"holds", ch.holds}});
  j["inequality_checks"] = checks;
  j["verdict"] = cert.coherent ? "coherent" : "inconclusive";
  if (cert.violation) {
    json rel = json::array(), gens = json::array();
    for (int r : cert.violation->subset) rel.push_back(relator_name(r));
    for (int x : cert.violation->neighbourhood) gens.push_back(p.generators.at(static_cast<std::size_t>(x)));
    j["violation"] = {{"relators", rel}, {"generators", gens}};
  } else {
    j["violation"] = nullptr;
  }
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(std::string_view text, const Presentation& p) {
  try {
    const json j = json::parse(text);
    Certificate cert;
    cert.presentation = j.at("presentation").get<std::string>();
    cert.digest = j.at("digest").get<std::string>();
    cert.cls = parse_class(j.at("class").get<std::string>());

    const json& pre = j.at("prerequisites");
    cert.prerequisites.dehn_status = pre.at("dehn_status").get<std::string>();
    cert.prerequisites.max_piece_length = pre.at("max_piece_length").get<int>();
    cert.prerequisites.c_value = bound_from_json(pre.at("c_value"));
    cert.prerequisites.t_value = bound_from_json(pre.at("t_value"));
    cert.prerequisites.property_p = pre.at("property_p").get<bool>();
    cert.prerequisites.metric_gate = pre.at("metric_gate").at("certified_dehn").get<bool>();
    cert.prerequisites.metric_ratio = rational_from_string(pre.at("metric_gate").at("ratio").get<std::string>());
    if (!pre.at("lambda").is_null()) cert.prerequisites.lambda = rational_from_string(pre.at("lambda").get<std::string>());
    cert.prerequisites.lambda_source = pre.at("lambda_source").get<std::string>();

    cert.multiplicities.assign(p.relators.size(), 0);
    for (auto& [name, value] : j.at("multiplicities").items())
      cert.multiplicities.at(static_cast<std::size_t>(relator_index(json(name), p))) = value.get<int>();
    for (const auto& e : j.at("matching")) cert.matching.emplace_back(relator_index(e.at(0), p), generator_index(e.at(1), p));
    std::sort(cert.matching.begin(), cert.matching.end());
    for (const auto& e : j.at("weights"))
      cert.weights.push_back({relator_index(e.at(0), p), e.at(1).get<int>(), e.at(2).get<std::int64_t>()});
    for (const auto& e : j.at("inequality_checks"))
      cert.inequality_checks.push_back({relator_index(e.at("relator"), p), e.at("exponent").get<int>(),
                                        e.at("multiplicity").get<int>(), e.at("bound").get<int>(),
                                        e.at("holds").get<bool>()});
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict != "coherent" && verdict != "inconclusive") throw InputError("unknown verdict '" + verdict + "'");
    cert.coherent = verdict == "coherent";
    if (j.contains("violation") && !j.at("violation").is_null()) {
      HallViolation v;
      for (const auto& r : j.at("violation").at("relators")) v.subset.push_back(relator_index(r, p));
      for (const auto& x : j.at("violation").at("generators")) v.neighbourhood.push_back(generator_index(x, p));
      cert.violation = v;
    }
    return cert;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace coherence
