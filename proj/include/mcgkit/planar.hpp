#pragma once

// Planar surface models: a disk with n interior holes, its curve catalog,
// and exact twist actions on the fundamental groupoid.
//
// Catalog curves:
//   delta      the outer boundary (equivalently, the convex curve around
//              all n holes)
//   a1..an     hole boundaries
//   s{j}_{k}   the convex curve enclosing the cyclic run of holes j..k
//              (counterclockwise); s{i}_{i} is an alias of a{i}
//   x1..xn     aliases for the complement runs: x{i} encloses every hole
//              except i
//
// Twist convention.  Holes are numbered counterclockwise; g_i denotes the
// based loop e_i b_i e_i^-1 around hole i.  A positive (left) twist about
// the convex curve enclosing the run j..k sends each crossing arc e_s to
// W e_s, where W = g_j g_{j+1} ... g_k is the run word.  For a wrapping run
// (j > k) the curve is a dumbbell around two boxes, west = holes 1..k
// (word A) and east = holes j..n (word C); with U = A C and V = C A the
// positive twist sends box arcs to U e_s and the arcs through the middle
// holes to U V^-1 e_s.
//
// Inverse actions are constructed geometrically (crossing insertions with
// opposite sign), not by inverting the positive table: a twist does not fix
// the middle insertion word V (it maps V to U V U^-1), so the naive
// inversion would be wrong for wrapping runs.  Both tables are stored, and
// catalogs serialize both; nothing downstream ever solves for an inverse.
//
// Hole-boundary and outer twists act on every based loop by conjugation
// with a central element, so they commute with the whole catalog.  Two
// convex curves are declared disjoint iff their hole runs are nested or
// disjoint as cyclic sets; every declaration is re-verified against the
// tables when an oracle set is assembled.

#include <mcgkit/derive.hpp>
#include <mcgkit/groupoid.hpp>
#include <mcgkit/rewrite.hpp>

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcgkit {

struct CatalogError : std::runtime_error {
  explicit CatalogError(const std::string& m) : std::runtime_error(m) {}
};

enum class CurveKind { Outer, HoleBoundary, Convex, Abstract };

inline std::string curve_kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::Outer: return "outer";
    case CurveKind::HoleBoundary: return "hole";
    case CurveKind::Convex: return "convex";
    case CurveKind::Abstract: return "abstract";
  }
  return "?";
}

struct CurveEntry {
  std::string name;
  CurveKind kind = CurveKind::Abstract;
  int hole = 0;           // HoleBoundary
  int lo = 0, hi = 0;     // Convex: cyclic run of holes lo..hi (ccw)
  std::uint32_t mask = 0; // holes enclosed (bit i-1 for hole i)
  std::vector<std::string> aliases;
  AutomorphismTable act_pos, act_neg;      // empty img on closed models
  std::vector<long long> homology;         // closed models: class in H_1
  std::set<std::string> disjoint;          // declared disjoint partners
};

class SurfaceModel {
 public:
  enum class Kind { HoledSphere, Closed };

  Kind kind = Kind::HoledSphere;
  int holes = 0;   // HoledSphere: interior holes (boundary components - 1)
  int genus = 0;   // Closed
  std::shared_ptr<const GroupoidSignature> sig;

  const std::vector<CurveEntry>& entries() const { return entries_; }

  bool has_curve(const std::string& name) const { return index_.count(name) != 0; }

  const CurveEntry& curve(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw CatalogError("unknown catalog curve: " + name);
    return entries_[it->second];
  }

  /// Canonical (non-alias) name.
  const std::string& canonical(const std::string& name) const { return curve(name).name; }

  CurveEntry& add_entry(CurveEntry e) {
    const std::size_t at = entries_.size();
    if (index_.count(e.name)) throw CatalogError("duplicate catalog curve: " + e.name);
    index_.emplace(e.name, at);
    for (const std::string& a : e.aliases) {
      if (index_.count(a)) throw CatalogError("duplicate catalog alias: " + a);
      index_.emplace(a, at);
    }
    entries_.push_back(std::move(e));
    return entries_.back();
  }

  /// Mutable access for model builders (disjointness wiring).
  std::vector<CurveEntry>& mutable_entries() { return entries_; }

  bool declared_disjoint(const std::string& c1, const std::string& c2) const {
    const CurveEntry& e1 = curve(c1);
    const CurveEntry& e2 = curve(c2);
    return e1.disjoint.count(e2.name) != 0 || e2.disjoint.count(e1.name) != 0 ||
           e1.name == e2.name;
  }

 private:
  std::vector<CurveEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

// ---------------------------------------------------------------------------
// Holed-sphere construction

namespace detail {

inline std::vector<int> cyclic_run(int lo, int hi, int n) {
  std::vector<int> holes;
  int h = lo;
  for (;;) {
    holes.push_back(h);
    if (h == hi) break;
    h = h % n + 1;
  }
  return holes;
}

inline std::uint32_t run_mask(const std::vector<int>& holes) {
  std::uint32_t m = 0;
  for (int h : holes) m |= 1u << (h - 1);
  return m;
}

/// g_j g_{j+1} ... over the given holes, as letters (sign +1) or the letters
/// of the inverse word (sign -1).
inline std::vector<Letter> run_word(const GroupoidSignature& sig, const std::vector<int>& holes,
                                    int sign) {
  std::vector<Letter> w;
  auto g = [&](int h, int s) {
    w.push_back(Letter{sig.arc(h), 1});
    w.push_back(Letter{sig.loop(h), s});
    w.push_back(Letter{sig.arc(h), -1});
  };
  if (sign > 0)
    for (int h : holes) g(h, 1);
  else
    for (auto it = holes.rbegin(); it != holes.rend(); ++it) g(*it, -1);
  return w;
}

/// Table sending each listed arc e_s to prefix[s] e_s, fixing all else.
inline AutomorphismTable prefix_table(const GroupoidSignature& sig,
                                      const std::map<int, std::vector<Letter>>& prefix) {
  AutomorphismTable t = identity_table(sig);
  for (const auto& [hole, pre] : prefix) {
    std::vector<Letter> ls = pre;
    ls.push_back(Letter{sig.arc(hole), 1});
    t.img[static_cast<std::size_t>(sig.arc(hole))] = make_word(sig, ls);
  }
  return t;
}

inline std::vector<Letter> cat_letters(std::vector<Letter> a, const std::vector<Letter>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

/// Twist tables for the convex curve around the cyclic run lo..hi.
/// Non-wrapping run (lo <= hi): every crossing arc gets the run word W.
/// Wrapping run (lo > hi): dumbbell around west box 1..hi (word A) and east
/// box lo..n (word C); U = A C, V = C A; box arcs get U, middle arcs get
/// U V^-1.  Inverse table: box arcs U^-1, middle arcs U^-1 V.
inline std::pair<AutomorphismTable, AutomorphismTable> convex_twist_tables(
    const GroupoidSignature& sig, int lo, int hi) {
  using namespace detail;
  const int n = sig.holes();
  std::map<int, std::vector<Letter>> pos, neg;
  if (lo <= hi) {
    const std::vector<int> run = cyclic_run(lo, hi, n);
    for (int s : run) {
      pos[s] = run_word(sig, run, 1);
      neg[s] = run_word(sig, run, -1);
    }
  } else {
    const std::vector<int> west = cyclic_run(1, hi, n);
    const std::vector<int> east = cyclic_run(lo, n, n);
    const std::vector<Letter> u_pos =
        cat_letters(run_word(sig, west, 1), run_word(sig, east, 1));
    const std::vector<Letter> u_neg =
        cat_letters(run_word(sig, east, -1), run_word(sig, west, -1));
    const std::vector<Letter> v_pos =
        cat_letters(run_word(sig, east, 1), run_word(sig, west, 1));
    const std::vector<Letter> v_neg =
        cat_letters(run_word(sig, west, -1), run_word(sig, east, -1));
    for (int s : west) {
      pos[s] = u_pos;
      neg[s] = u_neg;
    }
    for (int s : east) {
      pos[s] = u_pos;
      neg[s] = u_neg;
    }
    for (int s = hi + 1; s < lo; ++s) {
      pos[s] = cat_letters(u_pos, v_neg);
      neg[s] = cat_letters(u_neg, v_pos);
    }
  }
  return {prefix_table(sig, pos), prefix_table(sig, neg)};
}

/// Canonical catalog name for the convex curve around the run lo..hi.
inline std::string interval_curve_name(int lo, int hi, int n) {
  const int size = static_cast<int>(detail::cyclic_run(lo, hi, n).size());
  if (size == n) return "delta";
  if (size == 1) return "a" + std::to_string(lo);
  if (size == n - 1) {
    const int missing = hi % n + 1;
    return "x" + std::to_string(missing);
  }
  return "s" + std::to_string(lo) + "_" + std::to_string(hi);
}

/// Build the model of a sphere with `boundary_components` boundary circles:
/// one outer plus n = boundary_components - 1 holes, with the full convex
/// curve catalog and both twist tables per curve.
inline SurfaceModel holed_sphere(int boundary_components) {
  using namespace detail;
  const int n = boundary_components - 1;
  if (n < 2)
    throw std::invalid_argument("holed_sphere: need at least 3 boundary components");
  SurfaceModel m;
  m.kind = SurfaceModel::Kind::HoledSphere;
  m.holes = n;
  m.sig = std::make_shared<GroupoidSignature>(n);
  const GroupoidSignature& sig = *m.sig;

  // outer boundary twist = convex curve around all holes
  {
    CurveEntry e;
    e.name = "delta";
    e.kind = CurveKind::Outer;
    e.lo = 1;
    e.hi = n;
    e.mask = (1u << n) - 1u;
    const std::vector<int> all = cyclic_run(1, n, n);
    std::map<int, std::vector<Letter>> pos, neg;
    for (int s = 1; s <= n; ++s) {
      pos[s] = run_word(sig, all, 1);
      neg[s] = run_word(sig, all, -1);
    }
    e.act_pos = prefix_table(sig, pos);
    e.act_neg = prefix_table(sig, neg);
    m.add_entry(std::move(e));
  }

  for (int i = 1; i <= n; ++i) {
    CurveEntry e;
    e.name = "a" + std::to_string(i);
    e.kind = CurveKind::HoleBoundary;
    e.hole = i;
    e.lo = e.hi = i;
    e.mask = 1u << (i - 1);
    e.aliases.push_back("s" + std::to_string(i) + "_" + std::to_string(i));
    auto [p, q] = convex_twist_tables(sig, i, i);
    e.act_pos = std::move(p);
    e.act_neg = std::move(q);
    m.add_entry(std::move(e));
  }

  // proper convex runs of size 2..n-1
  for (int lo = 1; lo <= n; ++lo)
    for (int size = 2; size <= n - 1; ++size) {
      const int hi = (lo + size - 2) % n + 1;
      CurveEntry e;
      e.name = interval_curve_name(lo, hi, n);
      if (e.name[0] == 'x')
        e.aliases.push_back("s" + std::to_string(lo) + "_" + std::to_string(hi));
      e.kind = CurveKind::Convex;
      e.lo = lo;
      e.hi = hi;
      e.mask = run_mask(cyclic_run(lo, hi, n));
      auto [p, q] = convex_twist_tables(sig, lo, hi);
      e.act_pos = std::move(p);
      e.act_neg = std::move(q);
      m.add_entry(std::move(e));
    }

  // disjointness: outer and hole boundaries are isotopic off everything;
  // two convex curves are disjoint iff their runs are nested or disjoint.
  auto& entries = m.mutable_entries();
  for (std::size_t i = 0; i < entries.size(); ++i)
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      CurveEntry &ei = entries[i], &ej = entries[j];
      bool dis = false;
      if (ei.kind != CurveKind::Convex || ej.kind != CurveKind::Convex) {
        dis = true;  // outer or hole boundary
      } else {
        const std::uint32_t a = ei.mask, b = ej.mask;
        dis = (a & b) == 0 || (a & b) == a || (a & b) == b;
      }
      if (dis) {
        ei.disjoint.insert(ej.name);
        ej.disjoint.insert(ei.name);
      }
    }
  return m;
}

// ---------------------------------------------------------------------------
// Evaluation

/// Catalog-backed twist word t_curve^power (validates the name).
inline AbstractWord twist(const SurfaceModel& m, const std::string& curve, long long power) {
  return AbstractWord::gen(m.canonical(curve), power);
}

/// Evaluate a twist word to its groupoid automorphism.  The word is a
/// product of mapping classes acting on the right-to-left convention: in
/// "x1 a2^-1" the class t_{a2}^-1 acts first.
inline AutomorphismTable evaluate(const SurfaceModel& m, const AbstractWord& w) {
  if (!m.sig) throw CatalogError("evaluate: model carries no groupoid (closed model)");
  AutomorphismTable t = identity_table(*m.sig);
  for (const AbsLetter& l : w.letters()) {
    const CurveEntry& e = m.curve(l.sym);
    if (e.act_pos.img.empty())
      throw CatalogError("evaluate: curve " + l.sym + " has no recorded action");
    const AutomorphismTable& step = l.exp > 0 ? e.act_pos : e.act_neg;
    const long long reps = l.exp > 0 ? l.exp : -l.exp;
    for (long long r = 0; r < reps; ++r) t = compose(t, step);
  }
  return t;
}

struct RelationWord {
  std::string name;
  AbstractWord lhs, rhs;
};

struct Verdict {
  bool holds = false;
  std::string witness;  // first generator whose images differ, with both images
};

inline Verdict verify_relation(const SurfaceModel& m, const RelationWord& rel) {
  const AutomorphismTable lt = evaluate(m, rel.lhs);
  const AutomorphismTable rt = evaluate(m, rel.rhs);
  Verdict v;
  v.holds = auto_equal(lt, rt);
  if (!v.holds) {
    for (std::size_t g = 0; g < lt.img.size(); ++g)
      if (lt.img[g] != rt.img[g]) {
        v.witness = m.sig->gen(static_cast<int>(g)).name + ": lhs " +
                    word_to_string(*m.sig, lt.img[g]) + " vs rhs " +
                    word_to_string(*m.sig, rt.img[g]);
        break;
      }
  }
  return v;
}

/// The d-petal chain relation delta^{d-2} a1..ad = x1..xd, valid on the
/// model with d holes.  d = 3 is the classical four-boundary relation.
inline RelationWord daisy_relation(int d) {
  if (d < 3) throw std::invalid_argument("daisy_relation: d >= 3 required");
  RelationWord r;
  r.name = "daisy" + std::to_string(d);
  r.lhs = daisy_lhs(d);
  r.rhs = daisy_rhs(d);
  return r;
}

inline RelationWord lantern_relation() { return daisy_relation(3); }

/// delta^{2k} = prod (x1 a2^-1 x2 a1^-1)^{x3^{i-1}} . x3^k a4^-k x4^k a3^-k,
/// valid on the model with 4 holes.
inline RelationWord power_relation(int k) {
  RelationWord r;
  r.name = "power" + std::to_string(k);
  r.lhs = AbstractWord::gen("delta", 2 * k);
  r.rhs = power_relation_rhs(k);
  return r;
}

// ---------------------------------------------------------------------------
// Point pushes

/// Boundary arc along which the outer boundary is pushed: the cyclic run of
/// holes it passes (all = once around everything).
struct ArcSpec {
  int lo = 1, hi = 1;
  bool all = false;
  bool clockwise = true;
};

/// The push of the outer boundary along the arc, as a twist word:
/// clockwise push = t_comp . t_delta^-1 . t_run^-1, counterclockwise the
/// inverse.  Pushing once around everything gives t_delta^-2.
inline AbstractWord push(const SurfaceModel& m, const ArcSpec& arc) {
  const int n = m.holes;
  AbstractWord w;
  if (arc.all) {
    w = AbstractWord::gen("delta", -2);
  } else {
    const std::string run = interval_curve_name(arc.lo, arc.hi, n);
    const int comp_lo = arc.hi % n + 1;
    const int comp_hi = (arc.lo + n - 2) % n + 1;
    const std::string comp = interval_curve_name(comp_lo, comp_hi, n);
    w = AbstractWord::gen(m.canonical(comp))
            .concat(AbstractWord::gen("delta", -1))
            .concat(AbstractWord::gen(m.canonical(run), -1));
  }
  return arc.clockwise ? w : w.inverse();
}

// ---------------------------------------------------------------------------
// Oracles from a model

/// Commute oracles for every declared-disjoint catalog pair plus the chain
/// relation for this model, each re-verified against the twist tables
/// before being admitted.  Throws CatalogError if any declaration fails.
inline OracleSet planar_oracles(const SurfaceModel& m) {
  if (m.kind != SurfaceModel::Kind::HoledSphere)
    throw CatalogError("planar_oracles: holed-sphere model required");
  OracleSet os;
  const auto& es = m.entries();
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      if (!m.declared_disjoint(es[i].name, es[j].name)) continue;
      const AutomorphismTable ij = compose(es[i].act_pos, es[j].act_pos);
      const AutomorphismTable ji = compose(es[j].act_pos, es[i].act_pos);
      if (!auto_equal(ij, ji))
        throw CatalogError("declared disjoint curves do not commute: " + es[i].name + "," +
                           es[j].name);
      os.add(OracleRelation::commute(es[i].name, es[j].name, Provenance::PlanarVerified,
                                     "disjoint curves in the holed sphere"));
    }
  if (m.holes >= 3) {
    RelationWord chain_rel = daisy_relation(m.holes);
    Verdict v = verify_relation(m, chain_rel);
    if (!v.holds) throw CatalogError("chain relation fails on model: " + v.witness);
    os.add(OracleRelation::relation("daisy" + std::to_string(m.holes), chain_rel.lhs,
                                    chain_rel.rhs, Provenance::PlanarVerified,
                                    "chain relation verified on the groupoid action"));
  }
  return os;
}

/// Mine conjugation facts t_f t_c t_f^-1 = t_{c'} by evaluating every
/// catalog pair and searching the catalog for the conjugated table.
inline std::vector<OracleRelation> naturality_records(const SurfaceModel& m) {
  std::vector<OracleRelation> out;
  const auto& es = m.entries();
  for (const CurveEntry& f : es)
    for (const CurveEntry& c : es) {
      if (f.name == c.name) continue;
      const AutomorphismTable conj =
          compose(compose(f.act_pos, c.act_pos), f.act_neg);
      for (const CurveEntry& target : es)
        if (auto_equal(conj, target.act_pos)) {
          out.push_back(OracleRelation::conjugate(
              f.name, c.name, target.name, Provenance::PlanarVerified,
              "conjugation naturality found by table search"));
          break;
        }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Closed-surface models (no groupoid action; homology classes + declared
// disjointness, produced by capping/gluing constructions)

inline SurfaceModel closed_surface(int genus) {
  if (genus < 2) throw std::invalid_argument("closed_surface: genus >= 2 required");
  SurfaceModel m;
  m.kind = SurfaceModel::Kind::Closed;
  m.genus = genus;
  return m;
}

inline void add_closed_curve(SurfaceModel& m, const std::string& name,
                             std::vector<long long> h1_class,
                             const std::vector<std::string>& disjoint_with = {}) {
  if (m.kind != SurfaceModel::Kind::Closed)
    throw CatalogError("add_closed_curve: closed model required");
  if (h1_class.size() != static_cast<std::size_t>(2 * m.genus))
    throw CatalogError("add_closed_curve: class must have 2*genus coordinates");
  CurveEntry e;
  e.name = name;
  e.kind = CurveKind::Abstract;
  e.homology = std::move(h1_class);
  m.add_entry(std::move(e));
  auto& entries = m.mutable_entries();
  for (const std::string& d : disjoint_with) {
    const std::string dn = m.canonical(d);
    entries.back().disjoint.insert(dn);
    for (CurveEntry& other : entries)
      if (other.name == dn) other.disjoint.insert(name);
  }
}

// ---------------------------------------------------------------------------
// Catalog files
//
//   # comment
//   model holed-sphere 5          (boundary components)  |  model closed 3
//   curve x2 convex 3 1
//   alias x2 s3_1
//   disjoint x2 delta
//   act x2 + e1 : e3 b3 e3^-1 e1
//   act x2 - e1 : ...
//   class b : 0 0 1 0 0 0        (closed models)
//
// Every arc image of both signs is written out; the loader never derives an
// inverse table.  Loading re-verifies endpoint validity, that the two
// recorded actions invert each other, and that the chain relation holds
// (the gate), before the model is returned.

namespace detail {

inline std::string groupoid_word_text(const GroupoidSignature& sig, const GroupoidWord& w) {
  return word_to_string(sig, w);
}

inline GroupoidWord parse_groupoid_word(const GroupoidSignature& sig, const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<Letter> ls;
  while (is >> tok) {
    if (tok == "1") continue;
    int sign = 1;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    if (caret != std::string::npos) {
      const std::string e = tok.substr(caret + 1);
      if (e == "-1")
        sign = -1;
      else if (e != "1")
        throw CatalogError("catalog: generator exponent must be +-1, got " + tok);
    }
    ls.push_back(Letter{sig.id_of(name), sign});
  }
  return make_word(sig, ls);
}

}  // namespace detail

inline void write_catalog(std::ostream& os, const SurfaceModel& m,
                          const std::string& comment = "") {
  if (!comment.empty()) os << "# " << comment << "\n";
  if (m.kind == SurfaceModel::Kind::HoledSphere) {
    os << "model holed-sphere " << (m.holes + 1) << "\n";
  } else {
    os << "model closed " << m.genus << "\n";
  }
  for (const CurveEntry& e : m.entries()) {
    os << "curve " << e.name << " " << curve_kind_name(e.kind);
    if (e.kind == CurveKind::HoleBoundary)
      os << " " << e.hole;
    else if (e.kind == CurveKind::Convex)
      os << " " << e.lo << " " << e.hi;
    os << "\n";
    for (const std::string& a : e.aliases) os << "alias " << e.name << " " << a << "\n";
    for (const std::string& d : e.disjoint)
      if (e.name < d) os << "disjoint " << e.name << " " << d << "\n";
    if (!e.homology.empty()) {
      os << "class " << e.name << " :";
      for (long long c : e.homology) os << " " << c;
      os << "\n";
    }
    if (m.sig && !e.act_pos.img.empty()) {
      const GroupoidSignature& sig = *m.sig;
      for (int h = 1; h <= m.holes; ++h) {
        os << "act " << e.name << " + e" << h << " : "
           << detail::groupoid_word_text(sig, e.act_pos.img[static_cast<std::size_t>(sig.arc(h))])
           << "\n";
        os << "act " << e.name << " - e" << h << " : "
           << detail::groupoid_word_text(sig, e.act_neg.img[static_cast<std::size_t>(sig.arc(h))])
           << "\n";
      }
    }
  }
}

/// Load and gate a catalog.  Throws CatalogError when the file is malformed
/// or any verification fails.
inline SurfaceModel load_catalog(std::istream& is) {
  SurfaceModel m;
  bool have_model = false;
  std::map<std::string, CurveEntry> pending;        // closed-model entries
  std::vector<std::pair<std::string, std::string>> disjoint_lines;
  std::vector<std::string> order;

  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw CatalogError("catalog line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;

    if (head == "model") {
      std::string kind;
      int param = 0;
      if (!(ls >> kind >> param)) fail("bad model line");
      if (kind == "holed-sphere") {
        m.kind = SurfaceModel::Kind::HoledSphere;
        m.holes = param - 1;
        if (m.holes < 2) fail("holed-sphere needs at least 3 boundary components");
        m.sig = std::make_shared<GroupoidSignature>(m.holes);
      } else if (kind == "closed") {
        m.kind = SurfaceModel::Kind::Closed;
        m.genus = param;
        if (m.genus < 2) fail("closed model needs genus >= 2");
      } else {
        fail("unknown model kind " + kind);
      }
      have_model = true;
    } else if (head == "curve") {
      if (!have_model) fail("curve before model line");
      std::string name, kind;
      if (!(ls >> name >> kind)) fail("bad curve line");
      CurveEntry e;
      e.name = name;
      if (kind == "outer") {
        e.kind = CurveKind::Outer;
        e.lo = 1;
        e.hi = m.holes;
        e.mask = (1u << m.holes) - 1u;
      } else if (kind == "hole") {
        e.kind = CurveKind::HoleBoundary;
        if (!(ls >> e.hole)) fail("hole curve needs index");
        e.lo = e.hi = e.hole;
        e.mask = 1u << (e.hole - 1);
      } else if (kind == "convex") {
        e.kind = CurveKind::Convex;
        if (!(ls >> e.lo >> e.hi)) fail("convex curve needs run bounds");
        e.mask = detail::run_mask(detail::cyclic_run(e.lo, e.hi, m.holes));
      } else if (kind == "abstract") {
        e.kind = CurveKind::Abstract;
      } else {
        fail("unknown curve kind " + kind);
      }
      if (m.sig && e.kind != CurveKind::Abstract) {
        e.act_pos = identity_table(*m.sig);
        e.act_neg = identity_table(*m.sig);
      }
      pending.emplace(name, std::move(e));
      order.push_back(name);
    } else if (head == "alias") {
      std::string name, alias;
      if (!(ls >> name >> alias)) fail("bad alias line");
      auto it = pending.find(name);
      if (it == pending.end()) fail("alias for unknown curve " + name);
      it->second.aliases.push_back(alias);
    } else if (head == "disjoint") {
      std::string c1, c2;
      if (!(ls >> c1 >> c2)) fail("bad disjoint line");
      disjoint_lines.emplace_back(c1, c2);
    } else if (head == "class") {
      std::string name, colon;
      if (!(ls >> name >> colon) || colon != ":") fail("bad class line");
      auto it = pending.find(name);
      if (it == pending.end()) fail("class for unknown curve " + name);
      long long c;
      while (ls >> c) it->second.homology.push_back(c);
      if (m.kind == SurfaceModel::Kind::Closed &&
          it->second.homology.size() != static_cast<std::size_t>(2 * m.genus))
        fail("class must have 2*genus coordinates");
    } else if (head == "act") {
      std::string name, sign, arc, colon;
      if (!(ls >> name >> sign >> arc >> colon) || colon != ":" || (sign != "+" && sign != "-"))
        fail("bad act line");
      if (!m.sig) fail("act line in closed model");
      auto it = pending.find(name);
      if (it == pending.end()) fail("act for unknown curve " + name);
      std::string rest;
      std::getline(ls, rest);
      GroupoidWord w;
      try {
        w = detail::parse_groupoid_word(*m.sig, rest);
      } catch (const std::exception& ex) {
        fail(std::string("bad action word: ") + ex.what());
      }
      const int gid = m.sig->id_of(arc);
      AutomorphismTable& t = sign == "+" ? it->second.act_pos : it->second.act_neg;
      if (t.img.empty()) fail("act for abstract curve " + name);
      t.img[static_cast<std::size_t>(gid)] = w;
    } else {
      fail("unknown directive " + head);
    }
  }
  if (!have_model) throw CatalogError("catalog: missing model line");

  for (const std::string& name : order) m.add_entry(std::move(pending.at(name)));
  auto& entries = m.mutable_entries();
  for (const auto& [c1, c2] : disjoint_lines) {
    if (!m.has_curve(c1) || !m.has_curve(c2))
      throw CatalogError("disjoint line names unknown curve: " + c1 + " " + c2);
    const std::string n1 = m.canonical(c1), n2 = m.canonical(c2);
    for (CurveEntry& e : entries) {
      if (e.name == n1) e.disjoint.insert(n2);
      if (e.name == n2) e.disjoint.insert(n1);
    }
  }

  // gate: recorded actions must be valid automorphism pairs, and the chain
  // relation must hold before anyone trusts this catalog.
  if (m.kind == SurfaceModel::Kind::HoledSphere) {
    const GroupoidSignature& sig = *m.sig;
    const AutomorphismTable id = identity_table(sig);
    for (const CurveEntry& e : m.entries()) {
      if (e.act_pos.img.empty()) continue;
      if (!table_endpoints_ok(sig, e.act_pos) || !table_endpoints_ok(sig, e.act_neg))
        throw CatalogError("catalog gate: action of " + e.name + " breaks endpoints");
      if (!auto_equal(compose(e.act_pos, e.act_neg), id) ||
          !auto_equal(compose(e.act_neg, e.act_pos), id))
        throw CatalogError("catalog gate: recorded actions of " + e.name +
                           " are not mutually inverse");
    }
    if (m.holes >= 3) {
      Verdict v = verify_relation(m, daisy_relation(m.holes));
      if (!v.holds)
        throw CatalogError("catalog gate: chain relation fails: " + v.witness);
    }
  }
  return m;
}

}  // namespace mcgkit
