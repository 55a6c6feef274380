#pragma once

// Invariants of surface bundles presented by commutator factorizations of
// their monodromy: flatness certificates from disjoint supports, section
// self-intersection bookkeeping with its admissibility bounds, commutator
// length of boundary-twist powers, and first homology of total spaces.

#include <mcgkit/derive.hpp>
#include <mcgkit/homology.hpp>
#include <mcgkit/planar.hpp>
#include <mcgkit/snf.hpp>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcgkit {

// ---------------------------------------------------------------------------
// Closed-model plumbing

/// Homology classes stored on a closed model, keyed by curve name.
inline ClassTable class_table(const SurfaceModel& m) {
  if (m.kind != SurfaceModel::Kind::Closed)
    throw CatalogError("class_table: closed model required");
  ClassTable t;
  for (const CurveEntry& e : m.entries())
    if (!e.homology.empty()) t[e.name] = e.homology;
  return t;
}

/// Commute oracles from the declared disjointness of a closed model.  Every
/// declaration is gated by the algebraic necessary condition: disjoint
/// curves have vanishing intersection pairing on homology.
inline OracleSet closed_oracles(const SurfaceModel& m) {
  if (m.kind != SurfaceModel::Kind::Closed)
    throw CatalogError("closed_oracles: closed model required");
  SymplecticSpace sp{m.genus};
  OracleSet os;
  for (const CurveEntry& e : m.entries())
    for (const std::string& d : e.disjoint) {
      const CurveEntry& o = m.curve(d);
      if (!e.homology.empty() && !o.homology.empty() &&
          pairing(sp, e.homology, o.homology) != 0)
        throw CatalogError("declared disjoint curves " + e.name + ", " + o.name +
                           " have nonzero intersection pairing");
      os.add(OracleRelation::commute(e.name, o.name, Provenance::Axiom,
                                     "declared disjoint on the closed surface"));
    }
  return os;
}

// ---------------------------------------------------------------------------
// Emptiness prover

/// Try to derive `w -> 1` using only commute-licensed swaps plus merges and
/// cancellations.  Returns the replayable certificate, or nothing when some
/// blocking pair of symbols carries no commute oracle.
inline std::optional<Derivation> derive_trivial_word(const AbstractWord& w,
                                                     const OracleSet& oracles) {
  DerivationBuilder b(w, oracles);
  for (;;) {
    const RawWord& tape = b.tape();
    if (tape.empty()) return b.finish();
    bool progressed = false;
    for (std::size_t i = 0; i + 1 < tape.size(); ++i) {
      if (tape[i].sym != tape[i + 1].sym) continue;
      if (tape[i].exp + tape[i + 1].exp == 0)
        b.cancel(i);
      else
        b.merge(i);
      progressed = true;
      break;
    }
    if (progressed) continue;
    for (std::size_t i = 0; !progressed && i + 1 < tape.size(); ++i) {
      for (std::size_t j = i + 1; j < tape.size(); ++j) {
        if (tape[i].sym != tape[j].sym) continue;
        bool movable = true;
        for (std::size_t t = i + 1; t < j && movable; ++t)
          movable = oracles.find_commute(tape[t].sym, tape[j].sym) != nullptr;
        if (!movable) continue;
        b.move_left(j, i + 1);
        if (b.tape()[i].exp + b.tape()[i + 1].exp == 0)
          b.cancel(i);
        else
          b.merge(i);
        progressed = true;
        break;
      }
    }
    if (!progressed) return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Certification levels

/// How a certified statement was obtained, strongest first.  Reports always
/// surface the weakest level cited anywhere in their evidence.
enum class CertLevel { PlanarExact, DerivationWithAxioms, HomologyOnly, Unknown };

inline std::string cert_level_name(CertLevel c) {
  switch (c) {
    case CertLevel::PlanarExact: return "planar-exact";
    case CertLevel::DerivationWithAxioms: return "derivation-with-axioms";
    case CertLevel::HomologyOnly: return "homology-only";
    case CertLevel::Unknown: return "unknown";
  }
  return "?";
}

inline CertLevel weakest(CertLevel a, CertLevel b) { return a < b ? b : a; }

/// Weakest provenance cited by a derivation's steps: planar-exact when every
/// cited oracle was re-verified on the disk model, derivation-with-axioms as
/// soon as a declared axiom is load-bearing.
inline CertLevel derivation_level(const Derivation& d, const OracleSet& oracles) {
  CertLevel lv = CertLevel::PlanarExact;
  for (const std::string& id : d.oracle_ids_used()) {
    const OracleRelation* r = oracles.find(id);
    if (!r) return CertLevel::Unknown;
    if (r->prov == Provenance::Axiom) lv = weakest(lv, CertLevel::DerivationWithAxioms);
  }
  return lv;
}

// ---------------------------------------------------------------------------
// Monodromy factorizations

/// A factorization of the identity in the mapping class group of a closed
/// fiber: ordered bracket pairs (alpha_i, beta_i), one per base handle, with
/// prod_i [alpha_i, beta_i] = 1 certified by a replayable derivation over
/// the fiber model's disjointness oracles.
struct MonodromyFactorization {
  SurfaceModel fiber;           // closed model: homology classes + disjointness
  std::vector<WordPair> pairs;  // (alpha_i, beta_i), i = 1..base_genus
  Derivation identity_cert;     // expanded bracket product -> 1
  CertLevel identity_level = CertLevel::Unknown;

  int fiber_genus() const { return fiber.genus; }
  int base_genus() const { return static_cast<int>(pairs.size()); }

  bool validate(std::string* err = nullptr) const {
    if (identity_cert.start != expand_brackets(pairs)) {
      if (err) *err = "identity certificate does not start at the bracket product";
      return false;
    }
    if (!identity_cert.end.empty()) {
      if (err) *err = "identity certificate does not end at the empty word";
      return false;
    }
    return check_derivation(identity_cert, closed_oracles(fiber), err);
  }
};

/// Assemble and certify a factorization: the expanded bracket product must
/// trivialize over the fiber's declared disjointness.
inline MonodromyFactorization make_monodromy(SurfaceModel fiber, std::vector<WordPair> pairs) {
  MonodromyFactorization f;
  f.fiber = std::move(fiber);
  f.pairs = std::move(pairs);
  OracleSet os = closed_oracles(f.fiber);
  std::optional<Derivation> cert = derive_trivial_word(expand_brackets(f.pairs), os);
  if (!cert)
    throw CatalogError(
        "bracket product does not trivialize over the declared disjointness");
  f.identity_cert = std::move(*cert);
  f.identity_level = derivation_level(f.identity_cert, os);
  return f;
}

/// One pair per line: `pair <alpha> ; <beta>` with `1` for an identity
/// entry, `#` comments and blank lines skipped.
inline void write_pairs(std::ostream& os, const std::vector<WordPair>& pairs) {
  for (const WordPair& p : pairs)
    os << "pair " << p.first.to_string() << " ; " << p.second.to_string() << "\n";
}

inline std::vector<WordPair> read_pairs(std::istream& is) {
  std::vector<WordPair> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t ns = line.find_first_not_of(" \t");
    if (ns == std::string::npos || line[ns] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw != "pair")
      throw std::invalid_argument("pair list line " + std::to_string(lineno) +
                                  ": expected `pair`, got `" + kw + "`");
    std::string rest;
    std::getline(ls, rest);
    const std::size_t sep = rest.find(" ; ");
    if (sep == std::string::npos)
      throw std::invalid_argument("pair list line " + std::to_string(lineno) +
                                  ": missing ` ; ` separator");
    pairs.push_back({parse_word(rest.substr(0, sep)), parse_word(rest.substr(sep + 3))});
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// Lifted factorizations and sections

/// A lift of a factorization to the one-holed fiber: the bracket product
/// equals a boundary-twist power instead of the identity.  The section the
/// lift determines has self-intersection equal to minus that power.
struct LiftedFactorization {
  CommutatorFactorization fact;  // target = delta^n over the holed model
  long long boundary_power = 0;  // n
  OracleSet oracles;             // what the certificate may cite
  CertLevel level = CertLevel::Unknown;
  bool certified = false;

  bool validate(std::string* err = nullptr) const {
    if (fact.target != AbstractWord::gen("delta", boundary_power)) {
      if (err) *err = "lift target is not the declared boundary-twist power";
      return false;
    }
    return fact.validate(oracles, err);
  }
};

/// Self-intersection of the section cut out by a certified lift.
inline long long section_selfintersection(const LiftedFactorization& lf) {
  std::string err;
  if (!lf.certified || !lf.validate(&err))
    throw std::invalid_argument("section_selfintersection: uncertified lift: " + err);
  return -lf.boundary_power;
}

/// Admissibility bounds for the self-intersection of a section over a genus
/// h base: any section obeys |e| <= 2h-2, and a section parallel for some
/// flat structure obeys |e| <= h-1.
struct MilnorWood {
  long long bound_any = 0;       // 2h-2
  long long bound_parallel = 0;  // h-1
  bool section_admissible = false;
  bool flat_parallel_admissible = false;
};

inline MilnorWood milnor_wood(int h, long long e) {
  if (h < 1) throw std::invalid_argument("milnor_wood: base genus >= 1 required");
  MilnorWood mw;
  mw.bound_any = 2LL * h - 2;
  mw.bound_parallel = h - 1LL;
  const long long a = e < 0 ? -e : e;
  mw.section_admissible = a <= mw.bound_any;
  mw.flat_parallel_admissible = a <= mw.bound_parallel;
  return mw;
}

/// Bookkeeping record for a section; accepting one is gated by the
/// universal bound.
struct SectionRecord {
  std::string name;
  long long self_intersection = 0;
  std::set<std::string> disjoint_from;
  std::string source;
};

inline SectionRecord make_section(std::string name, long long e, int base_genus,
                                  std::string source,
                                  std::set<std::string> disjoint_from = {}) {
  if (!milnor_wood(base_genus, e).section_admissible)
    throw std::invalid_argument("section record rejected: self-intersection " +
                                std::to_string(e) + " exceeds the bound 2h-2 at h = " +
                                std::to_string(base_genus));
  SectionRecord s;
  s.name = std::move(name);
  s.self_intersection = e;
  s.disjoint_from = std::move(disjoint_from);
  s.source = std::move(source);
  return s;
}

// ---------------------------------------------------------------------------
// Commutator length of boundary-twist powers

/// Exact commutator length of the n-th power of the boundary twist on a
/// one-holed surface of large enough genus: floor((n+3)/2).
inline long long cl_floor(long long n) {
  if (n < 1) throw std::invalid_argument("cl_floor: n >= 1 required");
  return (n + 3) / 2;
}

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const {
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/// Stable commutator length of the boundary twist: exactly 1/2, the limit
/// of cl(n)/n.
inline Rational scl_tdelta() { return {1, 2}; }

// ---------------------------------------------------------------------------
// Flatness certificates

/// Per-bracket justification that the factorization lifts to the identity
/// at the flat (support) level: a bracket trivializes when one entry is the
/// identity, or when every pair of twist symbols across its two entries is
/// declared disjoint, so the supports commute and the commutator telescopes
/// away.
struct BracketJustification {
  std::size_t index = 0;
  bool second_entry_identity = false;
  std::vector<std::pair<std::string, std::string>> commuting_pairs;
  std::vector<std::pair<std::string, std::string>> missing;

  bool certified() const { return second_entry_identity || missing.empty(); }
};

enum class FlatnessVerdict { Certified, Unknown };

inline std::string flatness_verdict_name(FlatnessVerdict v) {
  return v == FlatnessVerdict::Certified ? "Certified" : "Unknown";
}

struct FlatnessCertificate {
  FlatnessVerdict verdict = FlatnessVerdict::Unknown;
  std::vector<BracketJustification> brackets;
};

inline FlatnessCertificate flatness_certificate(const std::vector<WordPair>& pairs,
                                                const SurfaceModel& fiber) {
  FlatnessCertificate cert;
  bool all = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    BracketJustification j;
    j.index = i;
    if (pairs[i].first.empty() || pairs[i].second.empty()) {
      j.second_entry_identity = true;
    } else {
      std::set<std::pair<std::string, std::string>> ok, bad;
      for (const AbsLetter& x : pairs[i].first.letters())
        for (const AbsLetter& y : pairs[i].second.letters()) {
          if (x.sym == y.sym) continue;  // a twist commutes with its own powers
          std::pair<std::string, std::string> key = std::minmax(x.sym, y.sym);
          const bool declared = fiber.has_curve(x.sym) && fiber.has_curve(y.sym) &&
                                fiber.declared_disjoint(x.sym, y.sym);
          (declared ? ok : bad).insert(key);
        }
      j.commuting_pairs.assign(ok.begin(), ok.end());
      j.missing.assign(bad.begin(), bad.end());
    }
    all = all && j.certified();
    cert.brackets.push_back(std::move(j));
  }
  cert.verdict = all ? FlatnessVerdict::Certified : FlatnessVerdict::Unknown;
  return cert;
}

// ---------------------------------------------------------------------------
// First homology of the total space

/// H_1 of the total space of the bundle the factorization presents: 2h free
/// generators from the base plus the coinvariants of the fiber homology
/// under the monodromy, computed by Smith reduction of the stacked (M - I)
/// blocks over all 2h monodromy entries.  The closed-fiber relation itself
/// contributes nothing after abelianization.
inline AbelianGroup h1_total_space(const MonodromyFactorization& f) {
  SymplecticSpace sp{f.fiber_genus()};
  const ClassTable classes = class_table(f.fiber);
  const std::size_t d = sp.dim();
  std::vector<IntMatrix> blocks;
  for (const WordPair& p : f.pairs)
    for (const AbstractWord* w : {&p.first, &p.second})
      blocks.push_back(word_to_matrix(sp, classes, *w) - IntMatrix::identity(d));
  IntMatrix stacked(d, d * blocks.size());
  for (std::size_t bi = 0; bi < blocks.size(); ++bi)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) stacked.at(r, bi * d + c) = blocks[bi].at(r, c);
  AbelianGroup g = cokernel(stacked);
  g.free_rank += 2LL * f.base_genus();
  return g;
}

// ---------------------------------------------------------------------------
// The two bundle families

/// A fully assembled bundle: closed-fiber factorization, its lift over the
/// one-holed fiber, the two distinguished sections, the flatness
/// certificate, and the total-space homology.
struct FamilyBundle {
  std::string family;  // "X" or "Y"
  long long m = 0;     // twisting parameter
  int k = 0;           // even-power parameter of the lift
  MonodromyFactorization monodromy;
  LiftedFactorization lift;
  std::vector<SectionRecord> sections;  // S (from the lift) and S0 (flat)
  FlatnessCertificate flatness;
  AbelianGroup h1;

  CertLevel weakest_level() const { return weakest(lift.level, monodromy.identity_level); }
};

namespace families {

/// Relabeling induced by capping the boundary of the glued surface: the
/// boundary twist and the two carrier classes die, every wrapping curve
/// becomes isotopic to a hole-parallel one, and the listed extra twists
/// survive unchanged.
inline CapRule capping_rule(const std::vector<std::string>& survivors = {"b"}) {
  CapRule r;
  r.image = {{"delta", ""}, {"phi", ""}, {"psi", ""}, {"x1", "a1"}, {"x2", "a2"},
             {"x3", "a3"},  {"x4", "a1"}, {"a1", "a1"}, {"a2", "a2"}, {"a3", "a3"},
             {"a4", "a1"}};
  for (const std::string& s : survivors) r.image[s] = s;
  return r;
}

/// Closed genus-g fiber (g >= 3) for the first family: the hole-parallel
/// curves of the capped disk plus the extra-handle curve b.  Classes come
/// from the gluing diagram and are gated downstream by the total-space
/// homology computation.
inline SurfaceModel xm_fiber(int g) {
  if (g < 3) throw std::invalid_argument("xm_fiber: fiber genus >= 3 required");
  SurfaceModel m = closed_surface(g);
  const std::size_t d = 2 * static_cast<std::size_t>(g);
  auto unit = [&](std::size_t idx, long long val) {
    std::vector<long long> v(d, 0);
    v[idx] = val;
    return v;
  };
  add_closed_curve(m, "a1", unit(0, 1));
  add_closed_curve(m, "a2", unit(1, 1), {"a1"});
  add_closed_curve(m, "a3", unit(1, -1), {"a1", "a2"});
  add_closed_curve(m, "b", unit(2, 1), {"a1", "a2", "a3"});
  return m;
}

/// Closed genus-2 fiber for the second family: b1 is geometrically dual to
/// a1 (one crossing), so it is declared disjoint only from a2 and a3.
inline SurfaceModel ym_fiber() {
  SurfaceModel m = closed_surface(2);
  add_closed_curve(m, "a1", {1, 0, 0, 0});
  add_closed_curve(m, "a2", {0, 1, 0, 0}, {"a1"});
  add_closed_curve(m, "a3", {0, -1, 0, 0}, {"a1", "a2"});
  add_closed_curve(m, "b1", {0, 0, 1, 0}, {"a2", "a3"});
  return m;
}

}  // namespace families

/// First family: fiber genus g >= 3, base genus h >= 2, twisting parameter
/// m >= 0.  The lift factors delta^{2(h-1)} into h brackets with the
/// extra-handle twist b^m folded into the tail; the closed pairs are the
/// capped images, and the fixed-disk section S0 keeps self-intersection 0.
inline FamilyBundle build_xm(int g, int h, long long m) {
  if (g < 3) throw std::invalid_argument("build_xm: fiber genus >= 3 required");
  if (h < 2) throw std::invalid_argument("build_xm: base genus >= 2 required");
  if (m < 0) throw std::invalid_argument("build_xm: twisting parameter >= 0 required");
  const int k = h - 1;

  FamilyBundle out;
  out.family = "X";
  out.m = m;
  out.k = k;

  OracleSet os = planar_oracles(holed_sphere(5));
  os.merge(subsurface_axioms({"b"}));
  out.lift.fact = commutatorize_even_power(k, os, "b", m);
  out.lift.boundary_power = 2LL * k;
  out.lift.oracles = std::move(os);
  out.lift.level = derivation_level(out.lift.fact.cert, out.lift.oracles);
  out.lift.certified = out.lift.validate();

  const CapRule cap = families::capping_rule({"b"});
  std::vector<WordPair> pairs;
  for (const WordPair& p : out.lift.fact.brackets)
    pairs.push_back({cap_boundary(p.first, cap), cap_boundary(p.second, cap)});
  out.monodromy = make_monodromy(families::xm_fiber(g), std::move(pairs));

  out.sections.push_back(make_section(
      "S", -out.lift.boundary_power, h,
      "cut out by the boundary-twist power of the lifted factorization", {"S0"}));
  out.sections.push_back(
      make_section("S0", 0, h, "monodromy supported away from a disk", {"S"}));

  out.flatness = flatness_certificate(out.monodromy.pairs, out.monodromy.fiber);
  out.h1 = h1_total_space(out.monodromy);
  return out;
}

/// Second family: fiber genus 2, base genus H >= 3, twisting parameter
/// m >= 0.  The lift factors delta^{2(H-2)} and appends the degenerate pair
/// (b1^m, 1); every closed bracket has identity second entry.
inline FamilyBundle build_ym(int H, long long m) {
  if (H < 3) throw std::invalid_argument("build_ym: base genus >= 3 required");
  if (m < 0) throw std::invalid_argument("build_ym: twisting parameter >= 0 required");
  const int k = H - 2;

  FamilyBundle out;
  out.family = "Y";
  out.m = m;
  out.k = k;

  OracleSet os = planar_oracles(holed_sphere(5));
  os.merge(subsurface_axioms({}));
  out.lift.fact = commutatorize_even_power(k, os);
  out.lift.fact.brackets.push_back({AbstractWord::gen("b1", m), AbstractWord::one()});
  out.lift.boundary_power = 2LL * k;
  out.lift.oracles = std::move(os);
  out.lift.level = derivation_level(out.lift.fact.cert, out.lift.oracles);
  out.lift.certified = out.lift.validate();

  const CapRule cap = families::capping_rule({"b1"});
  std::vector<WordPair> pairs;
  for (const WordPair& p : out.lift.fact.brackets)
    pairs.push_back({cap_boundary(p.first, cap), cap_boundary(p.second, cap)});
  out.monodromy = make_monodromy(families::ym_fiber(), std::move(pairs));

  out.sections.push_back(make_section(
      "S", -out.lift.boundary_power, H,
      "cut out by the boundary-twist power of the lifted factorization", {"S0"}));
  out.sections.push_back(
      make_section("S0", 0, H, "monodromy supported away from a disk", {"S"}));

  out.flatness = flatness_certificate(out.monodromy.pairs, out.monodromy.fiber);
  out.h1 = h1_total_space(out.monodromy);
  return out;
}

// ---------------------------------------------------------------------------
// Family-level reports

/// Pairwise comparison of total-space homology across a list of
/// factorizations.
struct DistinguishReport {
  std::vector<AbelianGroup> groups;
  std::vector<std::pair<std::size_t, std::size_t>> collisions;  // equal pairs, i < j

  bool all_distinct() const { return collisions.empty(); }
};

inline DistinguishReport family_distinguisher(const std::vector<MonodromyFactorization>& fs) {
  DistinguishReport r;
  for (const MonodromyFactorization& f : fs) r.groups.push_back(h1_total_space(f));
  for (std::size_t i = 0; i < r.groups.size(); ++i)
    for (std::size_t j = i + 1; j < r.groups.size(); ++j)
      if (r.groups[i] == r.groups[j]) r.collisions.push_back({i, j});
  return r;
}

/// Whether a closed oriented 4-manifold with the given Betti numbers is
/// obstructed from carrying a complex structure with either orientation:
/// yes exactly when b1 is odd and b2 is positive.
inline bool complex_obstruction(long long b1, long long b2) {
  if (b1 < 0 || b2 < 0)
    throw std::invalid_argument("complex_obstruction: Betti numbers are nonnegative");
  return (b1 % 2 != 0) && b2 > 0;
}

struct ComplexObstructionReport {
  long long b1 = 0;
  long long b2_lower_bound = 0;
  bool obstructed = false;
};

/// b1 is the free rank of the computed H_1; the two disjoint sections force
/// b2 >= 2.
inline ComplexObstructionReport complex_obstruction(const FamilyBundle& fb) {
  ComplexObstructionReport r;
  r.b1 = fb.h1.free_rank;
  r.b2_lower_bound = 2;
  r.obstructed = complex_obstruction(r.b1, r.b2_lower_bound);
  return r;
}

/// Evidence that the monodromy, marked at r points along disjoint sections,
/// admits no flat lift: r-1 parallel push-offs of the flat section together
/// with the lift section are pairwise disjoint, and the lift section already
/// violates the parallel-section bound.
struct NonliftingReport {
  FamilyBundle bundle;
  int marked = 1;
  std::vector<SectionRecord> sections;  // S1..S_{r-1} push-offs, then S
  MilnorWood bounds;                    // at the lift section
  bool violation = false;
  std::string conclusion;
};

/// g >= 3 selects the first family (base genus h); g = 2 selects the second
/// (h is read as its base genus).
inline NonliftingReport nonlifting_report(int g, int h, long long m, int r) {
  if (r < 1) throw std::invalid_argument("nonlifting_report: marked points >= 1 required");
  if (g < 2) throw std::invalid_argument("nonlifting_report: fiber genus >= 2 required");
  NonliftingReport rep;
  rep.bundle = g >= 3 ? build_xm(g, h, m) : build_ym(h, m);
  rep.marked = r;

  const SectionRecord& flat = rep.bundle.sections.back();
  const SectionRecord& lifted = rep.bundle.sections.front();
  std::set<std::string> others;
  for (int i = 1; i < r; ++i) others.insert("S" + std::to_string(i));
  others.insert(lifted.name);
  for (int i = 1; i < r; ++i) {
    std::set<std::string> dis = others;
    dis.erase("S" + std::to_string(i));
    rep.sections.push_back(make_section("S" + std::to_string(i), flat.self_intersection, h,
                                        "parallel push-off of the flat section",
                                        std::move(dis)));
  }
  std::set<std::string> dis;
  for (int i = 1; i < r; ++i) dis.insert("S" + std::to_string(i));
  SectionRecord s = lifted;
  s.disjoint_from = std::move(dis);
  rep.sections.push_back(std::move(s));

  rep.bounds = milnor_wood(h, lifted.self_intersection);
  rep.violation = !rep.bounds.flat_parallel_admissible;
  std::ostringstream msg;
  if (rep.violation) {
    msg << "section " << lifted.name << " has |self-intersection| "
        << (lifted.self_intersection < 0 ? -lifted.self_intersection
                                         : lifted.self_intersection)
        << " > " << rep.bounds.bound_parallel
        << ", so no flat structure makes the " << r
        << " marked sections parallel: the marked-point monodromy image admits no lift";
  } else {
    msg << "inconclusive: the lift section meets the parallel-section bound "
        << rep.bounds.bound_parallel;
  }
  rep.conclusion = msg.str();
  return rep;
}

}  // namespace mcgkit
