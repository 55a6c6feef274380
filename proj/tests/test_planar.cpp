#include <catch2/catch_amalgamated.hpp>

#include <mcgkit/planar.hpp>

#include <sstream>

using namespace mcgkit;

TEST_CASE("hole-boundary twist has the documented sign", "[planar]") {
  // positive twist about a1, squared, sends e1 to e1 b1^2
  SurfaceModel m = holed_sphere(4);
  AutomorphismTable t = evaluate(m, twist(m, "a1", 2));
  const GroupoidSignature& sig = *m.sig;
  GroupoidWord expect = make_word(
      sig, {Letter{sig.arc(1), 1}, Letter{sig.loop(1), 1}, Letter{sig.loop(1), 1}});
  REQUIRE(t.img[static_cast<std::size_t>(sig.arc(1))] == expect);
  // and fixes every other arc and every hole loop
  for (int h = 2; h <= m.holes; ++h)
    REQUIRE(t.img[static_cast<std::size_t>(sig.arc(h))].length() == 1);
  for (int h = 1; h <= m.holes; ++h)
    REQUIRE(t.img[static_cast<std::size_t>(sig.loop(h))].length() == 1);
}

TEST_CASE("four-boundary relation and its chain generalizations hold", "[planar]") {
  for (int d = 3; d <= 6; ++d) {
    SurfaceModel m = holed_sphere(d + 1);
    Verdict v = verify_relation(m, daisy_relation(d));
    INFO("d = " << d << " witness: " << v.witness);
    REQUIRE(v.holds);
  }
  // lantern_relation is the d = 3 instance
  SurfaceModel m3 = holed_sphere(4);
  REQUIRE(verify_relation(m3, lantern_relation()).holds);
}

TEST_CASE("a relation that is false gets a concrete witness", "[planar]") {
  SurfaceModel m = holed_sphere(5);
  RelationWord bogus{"bogus", parse_word("x1"), parse_word("x2")};
  Verdict v = verify_relation(m, bogus);
  REQUIRE_FALSE(v.holds);
  REQUIRE_FALSE(v.witness.empty());
}

TEST_CASE("recorded inverse actions invert the positive actions exactly",
          "[planar]") {
  for (int bc = 4; bc <= 6; ++bc) {
    SurfaceModel m = holed_sphere(bc);
    const AutomorphismTable id = identity_table(*m.sig);
    for (const CurveEntry& e : m.entries()) {
      INFO("bc = " << bc << " curve " << e.name);
      REQUIRE(table_endpoints_ok(*m.sig, e.act_pos));
      REQUIRE(table_endpoints_ok(*m.sig, e.act_neg));
      REQUIRE(auto_equal(compose(e.act_pos, e.act_neg), id));
      REQUIRE(auto_equal(compose(e.act_neg, e.act_pos), id));
    }
  }
}

TEST_CASE("naively inverted prefixes would be wrong for wrapping curves",
          "[planar]") {
  // The twist about a wrapping run does not fix its own middle insertion
  // word, so prefixing by the inverse word is NOT the inverse action.  This
  // pins why both tables are recorded.
  SurfaceModel m = holed_sphere(5);
  const GroupoidSignature& sig = *m.sig;
  const CurveEntry& x2 = m.curve("x2");  // run 3..1 wraps, middle hole 2
  REQUIRE(x2.lo > x2.hi);

  // naive candidate: conjugate-free inverse built by inverting the positive
  // prefix of each arc image
  AutomorphismTable naive = identity_table(sig);
  for (int h = 1; h <= m.holes; ++h) {
    const GroupoidWord& im = x2.act_pos.img[static_cast<std::size_t>(sig.arc(h))];
    GroupoidWord arc = make_word(sig, {Letter{sig.arc(h), 1}});
    // im = prefix . arc; recover prefix = im . arc^-1
    GroupoidWord prefix = concat(im, inverse(arc));
    naive.img[static_cast<std::size_t>(sig.arc(h))] = concat(inverse(prefix), arc);
  }
  REQUIRE_FALSE(auto_equal(naive, x2.act_neg));
  REQUIRE_FALSE(auto_equal(compose(x2.act_pos, naive), identity_table(sig)));
}

TEST_CASE("declared disjointness implies commuting twists, exhaustively",
          "[planar]") {
  for (int bc = 4; bc <= 6; ++bc) {
    SurfaceModel m = holed_sphere(bc);
    // planar_oracles re-verifies every declared pair and throws on failure
    OracleSet os = planar_oracles(m);
    std::size_t commutes = 0;
    for (const OracleRelation& r : os.all())
      if (r.kind == OracleRelation::Kind::Commute) {
        ++commutes;
        REQUIRE(r.prov == Provenance::PlanarVerified);
      }
    INFO("bc = " << bc);
    REQUIRE(commutes > 0);
    // chain relation oracle is present
    REQUIRE(os.find("rel:daisy" + std::to_string(m.holes)) != nullptr);
  }
}

TEST_CASE("crossing convex curves do not commute", "[planar]") {
  SurfaceModel m = holed_sphere(5);
  // runs {2,3,4} and {1,2,3} overlap partially: not declared, and actually
  // non-commuting
  REQUIRE_FALSE(m.declared_disjoint("x1", "x4"));
  const CurveEntry& c1 = m.curve("x1");
  const CurveEntry& c4 = m.curve("x4");
  REQUIRE_FALSE(auto_equal(compose(c1.act_pos, c4.act_pos),
                           compose(c4.act_pos, c1.act_pos)));
}

TEST_CASE("push words compose around the boundary", "[planar]") {
  for (int bc = 4; bc <= 6; ++bc) {
    SurfaceModel m = holed_sphere(bc);
    const int n = m.holes;
    // pushing past each hole in turn equals pushing once around everything
    AbstractWord prod;
    for (int i = 1; i <= n; ++i)
      prod = prod.concat(push(m, ArcSpec{i, i, false, true}));
    AbstractWord whole = push(m, ArcSpec{1, n, true, true});
    INFO("bc = " << bc << " prod = " << prod.to_string());
    REQUIRE(auto_equal(evaluate(m, prod), evaluate(m, whole)));
    // and in two unequal chunks
    AbstractWord ab = push(m, ArcSpec{1, 2, false, true})
                          .concat(push(m, ArcSpec{3, n, false, true}));
    REQUIRE(auto_equal(evaluate(m, ab), evaluate(m, whole)));
    // counterclockwise inverts
    AbstractWord cw = push(m, ArcSpec{2, 3, false, true});
    AbstractWord ccw = push(m, ArcSpec{2, 3, false, false});
    REQUIRE(auto_equal(evaluate(m, cw.concat(ccw)), identity_table(*m.sig)));
  }
  // once around everything is the inverse square of the outer twist
  SurfaceModel m = holed_sphere(5);
  REQUIRE(push(m, ArcSpec{1, 4, true, true}) == parse_word("delta^-2"));
}

TEST_CASE("even boundary powers factor through the catalog relation",
          "[planar]") {
  SurfaceModel m = holed_sphere(5);
  for (int k = 1; k <= 4; ++k) {
    Verdict v = verify_relation(m, power_relation(k));
    INFO("k = " << k << " witness: " << v.witness);
    REQUIRE(v.holds);
  }
}

TEST_CASE("aliases resolve to canonical entries", "[planar]") {
  SurfaceModel m = holed_sphere(5);
  REQUIRE(m.canonical("s2_4") == "x1");
  REQUIRE(m.canonical("s1_1") == "a1");
  REQUIRE(twist(m, "s2_4", 1) == AbstractWord::gen("x1"));
  REQUIRE(interval_curve_name(2, 4, 4) == "x1");
  REQUIRE(interval_curve_name(1, 4, 4) == "delta");
  REQUIRE(interval_curve_name(2, 3, 4) == "s2_3");
}

TEST_CASE("catalog files round-trip and the load gate bites", "[planar]") {
  SurfaceModel m = holed_sphere(5);
  std::ostringstream out;
  write_catalog(out, m, "golden 4-hole catalog");
  const std::string text = out.str();

  std::istringstream in(text);
  SurfaceModel loaded = load_catalog(in);
  REQUIRE(loaded.holes == m.holes);
  REQUIRE(loaded.entries().size() == m.entries().size());
  for (const CurveEntry& e : m.entries()) {
    const CurveEntry& l = loaded.curve(e.name);
    REQUIRE(auto_equal(l.act_pos, e.act_pos));
    REQUIRE(auto_equal(l.act_neg, e.act_neg));
    REQUIRE(l.disjoint == e.disjoint);
  }

  // corrupt one action with a well-formed but geometrically wrong word
  // (flip one loop's sign): the mathematical gate must reject the file
  std::string bad = text;
  auto at = bad.find("act x1 + e2 : ");
  REQUIRE(at != std::string::npos);
  auto b2 = bad.find("b2 ", at);
  REQUIRE(b2 != std::string::npos);
  bad.replace(b2, 2, "b2^-1");
  std::istringstream bad_in(bad);
  REQUIRE_THROWS_AS(load_catalog(bad_in), CatalogError);

  // and a malformed word is reported as a catalog error, not a crash
  std::string broken = text;
  auto at2 = broken.find("act x1 + e3 : ");
  REQUIRE(at2 != std::string::npos);
  broken.insert(at2 + 14, "b1 ");  // loop at the wrong basepoint
  std::istringstream broken_in(broken);
  REQUIRE_THROWS_AS(load_catalog(broken_in), CatalogError);
}

TEST_CASE("naturality mining finds verified conjugation facts", "[planar]") {
  SurfaceModel m = holed_sphere(5);
  std::vector<OracleRelation> recs = naturality_records(m);
  REQUIRE_FALSE(recs.empty());
  for (const OracleRelation& r : recs) {
    REQUIRE(r.prov == Provenance::PlanarVerified);
    // re-verify a sample: t_f t_c t_f^-1 = t_{c'}
    AbstractWord lhs = AbstractWord::gen(r.f)
                           .concat(AbstractWord::gen(r.from))
                           .concat(AbstractWord::gen(r.f, -1));
    REQUIRE(auto_equal(evaluate(m, lhs), evaluate(m, AbstractWord::gen(r.to))));
  }
}
