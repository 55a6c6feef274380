#include <catch2/catch_amalgamated.hpp>

#include <mcgkit/derive.hpp>
#include <mcgkit/planar.hpp>
#include <mcgkit/rewrite.hpp>

#include <random>
#include <sstream>

using namespace mcgkit;

namespace {

OracleSet standard_oracles() {
  OracleSet os = planar_oracles(holed_sphere(5));
  os.merge(subsurface_axioms());
  return os;
}

}  // namespace

TEST_CASE("abstract words reduce, parse and print", "[rewrite]") {
  REQUIRE(parse_word("x1 x1^2 x1^-3").empty());
  REQUIRE(parse_word("a1 a2 a2^-1 a1^-1") == AbstractWord());
  REQUIRE(parse_word("1") == AbstractWord());
  REQUIRE(parse_word("x1 a2^-1").to_string() == "x1 a2^-1");
  REQUIRE(parse_word(parse_word("delta^4 a1^-2 x3").to_string()) ==
          parse_word("delta^4 a1^-2 x3"));

  AbstractWord u = parse_word("x1 a2^-1");
  REQUIRE(u.inverse() == parse_word("a2 x1^-1"));
  REQUIRE(u.concat(u.inverse()).empty());
  REQUIRE(AbstractWord::gen("delta").pow(4) == parse_word("delta^4"));
  REQUIRE(AbstractWord::gen("delta").pow(-2) == parse_word("delta^-2"));
  REQUIRE(commutator(u, AbstractWord::gen("phi")) ==
          parse_word("x1 a2^-1 phi a2 x1^-1 phi^-1"));
  REQUIRE(u.conjugated_by(AbstractWord::gen("x3", 2)) ==
          parse_word("x3^2 x1 a2^-1 x3^-2"));
}

TEST_CASE("each derivation step kind replays and validates", "[rewrite]") {
  OracleSet os = standard_oracles();

  SECTION("insert + cancel round trip") {
    DerivationBuilder b(parse_word("delta^2"), os);
    b.insert(1, "a1", 3);
    b.cancel(1);
    Derivation d = b.finish();
    REQUIRE(d.end == parse_word("delta^2"));
    REQUIRE(check_derivation(d, os));
  }
  SECTION("split + merge round trip") {
    DerivationBuilder b(parse_word("delta^4"), os);
    b.split(0, 1);
    b.merge(0);
    REQUIRE(check_derivation(b.finish(), os));
  }
  SECTION("swap needs a commute oracle that covers the pair") {
    Derivation d;
    d.start = parse_word("x1 x4");
    d.end = parse_word("x4 x1");
    d.steps = {{DerivStep::Kind::Swap, 0, "", 0, "commute:x1:x4", true}};
    std::string err;
    REQUIRE_FALSE(check_derivation(d, os, &err));  // crossing curves: no oracle
    d.steps[0].oracle_id = "commute:a1:x1";
    REQUIRE_FALSE(check_derivation(d, os, &err));  // oracle exists, wrong pair
    d.start = parse_word("a1 x1");
    d.end = parse_word("x1 a1");
    REQUIRE(check_derivation(d, os));
  }
  SECTION("subst applies the chain relation in both directions") {
    Derivation d;
    d.start = daisy_lhs(4);
    d.end = daisy_rhs(4);
    d.steps = {{DerivStep::Kind::Subst, 0, "", 0, "rel:daisy4", true}};
    REQUIRE(check_derivation(d, os));
    std::swap(d.start, d.end);
    d.steps[0].forward = false;
    REQUIRE(check_derivation(d, os));
  }
  SECTION("conj collapses and expands frames") {
    Derivation d;
    d.start = parse_word("phi x1^5 phi^-1");
    d.end = parse_word("a1^5");
    d.steps = {{DerivStep::Kind::Conj, 0, "", 0, "conj:phi:x1:a1", true}};
    REQUIRE(check_derivation(d, os));
    std::swap(d.start, d.end);
    d.steps[0].forward = false;
    REQUIRE(check_derivation(d, os));
    // inverted frame maps the other way
    Derivation e;
    e.start = parse_word("phi^-1 a1^2 phi");
    e.end = parse_word("x1^2");
    e.steps = {{DerivStep::Kind::Conj, 0, "", 0, "conj:phi:x1:a1", true}};
    REQUIRE(check_derivation(e, os));
  }
}

TEST_CASE("power relation certificates replay for k = 1..4", "[rewrite]") {
  OracleSet os = standard_oracles();
  for (int k = 1; k <= 4; ++k) {
    Derivation d = derive_power_relation(k, os);
    REQUIRE(d.start == AbstractWord::gen("delta", 2 * k));
    REQUIRE(d.end == power_relation_rhs(k));
    std::string err;
    INFO("k = " << k << ": " << err);
    REQUIRE(check_derivation(d, os, &err));
    // the certificate leans on the chain relation
    auto used = d.oracle_ids_used();
    REQUIRE(std::find(used.begin(), used.end(), "rel:daisy4") != used.end());
  }
}

TEST_CASE("removing any cited oracle breaks the certificate", "[rewrite]") {
  OracleSet os = standard_oracles();
  Derivation d = derive_power_relation(3, os);
  for (const std::string& id : d.oracle_ids_used()) {
    INFO("removed " << id);
    REQUIRE_FALSE(check_derivation(d, os.without(id)));
  }
  REQUIRE(check_derivation(d, os));
}

TEST_CASE("corrupted certificates are rejected, 200 variants", "[rewrite]") {
  OracleSet os = standard_oracles();
  const Derivation good = derive_power_relation(3, os);
  REQUIRE(check_derivation(good, os));
  std::mt19937 rng(1117);
  std::uniform_int_distribution<std::size_t> pick_step(0, good.steps.size() - 1);
  std::uniform_int_distribution<int> mode(0, 3);
  for (int trial = 0; trial < 200; ++trial) {
    Derivation bad = good;
    const std::size_t i = pick_step(rng);
    switch (mode(rng)) {
      case 0:  // position far out of range
        bad.steps[i].pos += 1000;
        break;
      case 1:  // unknown oracle
        bad.steps[i].oracle_id = "commute:zz:ww";
        if (bad.steps[i].kind == DerivStep::Kind::Insert ||
            bad.steps[i].kind == DerivStep::Kind::Cancel ||
            bad.steps[i].kind == DerivStep::Kind::Merge ||
            bad.steps[i].kind == DerivStep::Kind::Split)
          bad.steps[i].pos += 1000;  // oracle-free kinds: break position instead
        break;
      case 2:  // wrong end word
        bad.end = bad.end.concat(AbstractWord::gen("a1"));
        break;
      default:  // direction flip on an oracle step, else trailing junk letter
        if (bad.steps[i].kind == DerivStep::Kind::Subst ||
            bad.steps[i].kind == DerivStep::Kind::Conj)
          bad.steps[i].forward = !bad.steps[i].forward;
        else
          bad.start = bad.start.concat(AbstractWord::gen("a1"));
        break;
    }
    INFO("trial " << trial << " step " << i);
    REQUIRE_FALSE(check_derivation(bad, os));
  }
}

TEST_CASE("standalone commutator insertion rewrites a 4-letter tail",
          "[rewrite]") {
  OracleSet os = standard_oracles();
  const AbstractWord w = parse_word("x3^2 a4^-2 x4^2 a3^-2");
  Derivation d = insert_commutator(w, 0, "conj:psi:a4:x4", "conj:psi:x3:a3", os);
  REQUIRE(d.start == w);
  REQUIRE(d.end == parse_word("x3^2 a4^-2 psi a4^2 x3^-2 psi^-1"));
  REQUIRE(d.end == commutator(parse_word("x3^2 a4^-2"), AbstractWord::gen("psi")));
  REQUIRE(check_derivation(d, os));
}

TEST_CASE("even powers factor into k+1 certified commutators", "[rewrite]") {
  OracleSet os = standard_oracles();
  for (int k = 1; k <= 4; ++k) {
    CommutatorFactorization f = commutatorize_even_power(k, os);
    INFO("k = " << k);
    REQUIRE(f.target == AbstractWord::gen("delta", 2 * k));
    REQUIRE(f.brackets.size() == static_cast<std::size_t>(k) + 1);
    std::string err;
    REQUIRE(f.validate(os, &err));
    // head brackets are x3-conjugates of [x1 a2^-1, phi]
    REQUIRE(f.brackets[0].first == parse_word("x1 a2^-1"));
    REQUIRE(f.brackets[0].second == AbstractWord::gen("phi"));
    REQUIRE(f.brackets.back().first ==
            AbstractWord::gen("x3", k).concat(AbstractWord::gen("a4", -k)));
    REQUIRE(f.brackets.back().second == AbstractWord::gen("psi"));
  }
}

TEST_CASE("tail twist rides inside the last bracket", "[rewrite]") {
  OracleSet os = standard_oracles();
  CommutatorFactorization f = commutatorize_even_power(2, os, "b", 3);
  REQUIRE(f.brackets.size() == 3);
  REQUIRE(f.brackets.back().second == parse_word("psi b^3"));
  std::string err;
  REQUIRE(f.validate(os, &err));
  // the commutes that walked b^-3 across the tail are cited, and load-bearing
  auto used = f.cert.oracle_ids_used();
  REQUIRE(std::find(used.begin(), used.end(), "commute:a4:b") != used.end());
  REQUIRE(std::find(used.begin(), used.end(), "commute:b:x3") != used.end());
  REQUIRE_FALSE(check_derivation(f.cert, os.without("commute:a4:b")));
  REQUIRE_FALSE(check_derivation(f.cert, os.without("commute:b:x3")));
}

TEST_CASE("capping kills the boundary data of the even-power relation",
          "[rewrite]") {
  // cap rule of the closed gluing: x-curves become hole boundaries, the
  // auxiliary classes die, holes 1 and 4 are identified
  CapRule cap;
  cap.image = {{"delta", ""}, {"phi", ""},  {"psi", ""}, {"x1", "a1"},
               {"x2", "a2"},  {"x3", "a3"}, {"x4", "a1"}, {"a1", "a1"},
               {"a2", "a2"},  {"a3", "a3"}, {"a4", "a1"}, {"b", "b"}};
  for (int k = 1; k <= 4; ++k) {
    REQUIRE(cap_boundary(power_relation_rhs(k), cap).empty());
    REQUIRE(cap_boundary(AbstractWord::gen("delta", 2 * k), cap).empty());
  }
  REQUIRE(cap_boundary(parse_word("x3^2 a4^-2 psi b^5 a4^2 x3^-2 b^-5 psi^-1"), cap) ==
          parse_word("a3^2 a1^-2 b^5 a1^2 a3^-2 b^-5"));
  REQUIRE_THROWS_AS(cap_boundary(parse_word("unknown_sym"), cap), std::invalid_argument);
}

TEST_CASE("derivation scripts round-trip through text", "[rewrite]") {
  OracleSet os = standard_oracles();
  Derivation d = commutatorize_even_power(2, os, "b", 3).cert;
  std::ostringstream out;
  write_derivation(out, d, "factorization certificate");
  std::istringstream in(out.str());
  Derivation back = read_derivation(in);
  REQUIRE(back.start == d.start);
  REQUIRE(back.end == d.end);
  REQUIRE(back.steps.size() == d.steps.size());
  REQUIRE(check_derivation(back, os));
  // step lines parse strictly
  REQUIRE_THROWS_AS(step_from_line("insert 3"), std::invalid_argument);
  REQUIRE_THROWS_AS(step_from_line("swap 3 commute:a1:x1 extra"), std::invalid_argument);
  REQUIRE_THROWS_AS(step_from_line("subst 0 rel:daisy4 sideways"), std::invalid_argument);
}
