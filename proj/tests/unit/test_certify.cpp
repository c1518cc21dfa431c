#include <doctest.h>

#include "json.hpp"

#include "coherence/certify.hpp"
#include "coherence/presentation.hpp"
#include "coherence/smallcancel.hpp"
#include "support.hpp"

using namespace coherence;
using namespace testing;
using nlohmann::json;

namespace {

const char* kGenus2 = "gens a b c d\nrel a b a- b- c d c- d-\n";
const char* kP1 = "gens a b c d r s\nrel a b a- r\nrel r- b- c s\nrel s- d c- d-\n";
const char* kP2 = "gens a b c d r s t u v\nrel a b r\nrel r- a- s\nrel s- b- t\nrel t- c u\nrel u- d v\nrel v- c- d-\n";

// Star totals and face totals recomputed from the weight entries alone.
void check_weight_invariant(const Presentation& p, const Certificate& cert) {
  std::vector<std::int64_t> star(p.generators.size(), 0), face(p.relators.size(), 0);
  for (const WeightEntry& e : cert.weights) {
    const Word& r = p.relators[static_cast<std::size_t>(e.relator)];
    star[static_cast<std::size_t>(r[static_cast<std::size_t>(e.position)].gen())] += e.weight;
    face[static_cast<std::size_t>(e.relator)] += e.weight;
    CHECK(e.weight >= 0);
  }
  for (auto s : star) CHECK(s <= 1);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    CHECK(face[r] == cert.multiplicities[r]);
    CHECK(face[r] > 0);
  }
}

}  // namespace

TEST_SUITE("certify") {
  TEST_CASE("small cancellation types of two non-metric presentations") {
    Presentation p1 = parse_presentation(kP1);
    Presentation p2 = parse_presentation(kP2);
    CHECK(c_value(p1) >= 4);
    CHECK(t_value(p1) >= 5);
    CHECK(c_value(p2) >= 3);
    CHECK(t_value(p2) >= 7);
    CHECK(pieces(p1).max_piece_length == 1);
    CHECK(pieces(p2).max_piece_length == 1);
    CHECK_FALSE(metric_gate(p1).certified_dehn);
    CHECK_FALSE(metric_gate(p2).certified_dehn);
    CHECK_THROWS_AS(certify(p1, PresentationClass::dehn), PrerequisiteError);
    CHECK(certify(p1, PresentationClass::c4t4p).coherent);
  }

  TEST_CASE("genus two certifies under the Dehn class with multiplicity three") {
    Presentation p = parse_presentation(kGenus2);
    Certificate cert = certify(p, PresentationClass::dehn);
    CHECK(cert.coherent);
    CHECK(cert.multiplicities == Multiplicity{3});
    CHECK(cert.matching.size() == 3);
    CHECK(is_m_matching(incidence_graph(p), cert.multiplicities, cert.matching));
    CHECK(verify_certificate(p, cert));
    check_weight_invariant(p, cert);
  }

  TEST_CASE("(ab)^n under the power class") {
    for (int n = 1; n <= 6; ++n) {
      Presentation p = parse_presentation("gens a b\n");
      p.relators = {power(parse_word("a b", p), n)};
      Certificate cert = certify(p, PresentationClass::power_relator);
      CHECK(cert.coherent);
      CHECK(verify_certificate(p, cert));
      check_weight_invariant(p, cert);
      REQUIRE(cert.prerequisites.lambda);
      CHECK(*cert.prerequisites.lambda == Rational::make(1, n));
    }
  }

  TEST_CASE("fifth power of a six-letter root") {
    Presentation p = parse_presentation("gens x y\nrel x^5 y x^5 y x^5 y x^5 y x^5 y\n");
    Certificate cert = certify(p, PresentationClass::power_relator);
    CHECK(cert.coherent);
    CHECK(cert.multiplicities == Multiplicity{1});
    CHECK(verify_certificate(p, cert));
    check_weight_invariant(p, cert);
  }

  TEST_CASE("a relator demanding more generators than it has is inconclusive") {
    for (const char* t : {"gens x y\nrel x^5 y x^5 y\n", "gens x y\nrel x^4 y\n"}) {
      Presentation p = parse_presentation(t);
      Certificate cert = certify(p, PresentationClass::power_relator);
      CHECK_FALSE(cert.coherent);
      REQUIRE(cert.violation);
      CHECK(cert.violation->subset == std::vector<int>{0});
      CHECK(cert.violation->neighbourhood == std::vector<int>{0, 1});
      CHECK(verify_certificate(p, cert));
    }
  }

  TEST_CASE("power of a single letter") {
    Presentation p = parse_presentation("gens x\nrel x^4\n");
    Certificate cert = certify(p, PresentationClass::dehn);
    CHECK(cert.coherent);
    CHECK(cert.multiplicities == Multiplicity{1});
    check_weight_invariant(p, cert);
  }

  TEST_CASE("synthesized weights follow the matching") {
    Presentation p = parse_presentation(kGenus2);
    WeightFunction w = synthesize_weights(p, {{0, 0}, {0, 1}, {0, 2}});
    CHECK(w.mode() == WeightFunction::Mode::sparse);
    CHECK(w({0, 0}) == 1);
    CHECK(w({0, 1}) == 1);
    CHECK(w({0, 4}) == 1);
    CHECK(w({0, 2}) == 0);
  }

  TEST_CASE("certificates round-trip through JSON") {
    for (const char* t : {kGenus2, "gens x y\nrel x^5 y x^5 y\n", "gens a b\nrel a b a b\n"}) {
      Presentation p = parse_presentation(t);
      const PresentationClass c = p.generators.size() == 4 ? PresentationClass::dehn : PresentationClass::power_relator;
      Certificate cert = certify(p, c);
      const std::string text = certificate_to_json(cert, p);
      Certificate back = certificate_from_json(text, p);
      CHECK(certificate_to_json(back, p) == text);
      CHECK(verify_certificate(p, back));
      json j = json::parse(text);
      CHECK(j["digest"] == presentation_digest(p));
    }
  }

  TEST_CASE("tampered certificates are rejected") {
    Presentation p = parse_presentation(kGenus2);
    const Certificate good = certify(p, PresentationClass::dehn);
    auto rejects = [&](const Certificate& c) {
      std::string why;
      const bool ok = verify_certificate(p, c, &why);
      CHECK_FALSE(ok);
      CHECK_FALSE(why.empty());
    };
    {
      Certificate c = good;
      c.multiplicities[0] = 2;
      rejects(c);
    }
    {
      Certificate c = good;
      c.weights[0].position = 5;
      rejects(c);
    }
    {
      Certificate c = good;
      c.weights[1].weight = 2;
      rejects(c);
    }
    {
      Certificate c = good;
      c.matching[0].second = 3;
      rejects(c);
    }
    {
      Certificate c = good;
      c.digest[0] = c.digest[0] == '0' ? '1' : '0';
      rejects(c);
    }
    {
      Certificate c = good;
      c.coherent = false;
      rejects(c);
    }
    {
      Certificate c = good;
      c.prerequisites.c_value = 9;
      rejects(c);
    }
    {
      Certificate c = good;
      c.inequality_checks[0].bound = 1;
      rejects(c);
    }
    {
      // any position reading the matched generator is an equally valid witness
      Certificate c = good;
      c.weights[0].position = 2;
      CHECK(verify_certificate(p, c));
    }
    Presentation other = parse_presentation("gens a b c d\nrel a b a- b- c d c- d- c d c- d-\n");
    CHECK_FALSE(verify_certificate(other, good));

    json j = json::parse(certificate_to_json(good, p));
    j["verdict"] = "maybe";
    CHECK_THROWS_AS(certificate_from_json(j.dump(), p), InputError);
    CHECK_THROWS_AS(certificate_from_json("{", p), InputError);
  }

  TEST_CASE("class names") {
    for (auto c : {PresentationClass::dehn, PresentationClass::c6p, PresentationClass::c4t4p, PresentationClass::lambda,
                   PresentationClass::power_relator})
      CHECK(parse_class(class_name(c)) == c);
    CHECK_THROWS_AS(parse_class("nope"), InputError);
  }

  TEST_CASE("asserted classes are recorded") {
    Presentation p = parse_presentation("gens a b\nrel a b a- b-\nassert lambda 1/4\n");
    Certificate cert = certify(p, PresentationClass::lambda);
    CHECK(cert.prerequisites.lambda_source == "asserted");
    CHECK(verify_certificate(p, cert));
    Presentation q = parse_presentation("gens a b\nrel a b a- b-\n");
    CHECK_THROWS_AS(certify(q, PresentationClass::lambda), PrerequisiteError);
  }
}
