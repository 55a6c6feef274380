#pragma once

// Symbolic rewrite engine over twist alphabets.
//
// Words here are formal products of named symbols with integer exponents:
// curve names from a surface catalog, plus abstract mapping classes that
// only exist as symbols (auxiliary conjugating classes, twists supported in
// a glued-on subsurface).  A Derivation is a machine-checkable certificate:
// a start word, an end word, and a list of steps where each non-free step
// cites an oracle (a commutation, a conjugation rule, or a named relation).
// check_derivation replays the steps on a raw letter tape and accepts only
// if every citation resolves and the tape ends at the end word.
//
// Steps address absolute letter positions on the raw tape, so certificates
// can be chained and serialized line by line.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcgkit {

/// One symbol with a nonzero exponent.
struct AbsLetter {
  std::string sym;
  long long exp = 1;
  bool operator==(const AbsLetter& o) const { return sym == o.sym && exp == o.exp; }
  bool operator!=(const AbsLetter& o) const { return !(*this == o); }
};

using RawWord = std::vector<AbsLetter>;

/// Merge adjacent letters with equal symbol, dropping zero exponents.
inline RawWord reduce_raw(const RawWord& in) {
  RawWord out;
  for (const AbsLetter& l : in) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().sym == l.sym) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

/// Reduced formal product of symbol powers.  Value type; equality of reduced
/// letter sequences is equality in the free group on the alphabet.
class AbstractWord {
 public:
  AbstractWord() = default;
  explicit AbstractWord(RawWord ls) : ls_(reduce_raw(ls)) {}

  static AbstractWord one() { return AbstractWord(); }
  static AbstractWord gen(std::string sym, long long exp = 1) {
    RawWord w;
    if (exp != 0) w.push_back(AbsLetter{std::move(sym), exp});
    return AbstractWord(std::move(w));
  }

  const RawWord& letters() const { return ls_; }
  bool empty() const { return ls_.empty(); }
  std::size_t size() const { return ls_.size(); }

  AbstractWord concat(const AbstractWord& o) const {
    RawWord w = ls_;
    w.insert(w.end(), o.ls_.begin(), o.ls_.end());
    return AbstractWord(std::move(w));
  }

  AbstractWord inverse() const {
    RawWord w;
    for (auto it = ls_.rbegin(); it != ls_.rend(); ++it)
      w.push_back(AbsLetter{it->sym, -it->exp});
    return AbstractWord(std::move(w));
  }

  AbstractWord pow(long long n) const {
    AbstractWord base = n < 0 ? inverse() : *this;
    AbstractWord r;
    for (long long i = 0, m = n < 0 ? -n : n; i < m; ++i) r = r.concat(base);
    return r;
  }

  /// w.conjugated_by(g) = g w g^-1
  AbstractWord conjugated_by(const AbstractWord& g) const {
    return g.concat(*this).concat(g.inverse());
  }

  bool operator==(const AbstractWord& o) const { return ls_ == o.ls_; }
  bool operator!=(const AbstractWord& o) const { return !(*this == o); }

  std::string to_string() const {
    if (ls_.empty()) return "1";
    std::string s;
    for (const AbsLetter& l : ls_) {
      if (!s.empty()) s += " ";
      s += l.sym;
      if (l.exp != 1) s += "^" + std::to_string(l.exp);
    }
    return s;
  }

 private:
  RawWord ls_;
};

inline AbstractWord operator*(const AbstractWord& a, const AbstractWord& b) {
  return a.concat(b);
}

/// [a, b] = a b a^-1 b^-1
inline AbstractWord commutator(const AbstractWord& a, const AbstractWord& b) {
  return a.concat(b).concat(a.inverse()).concat(b.inverse());
}

/// Parse "x1 a2^-1 delta^3"; "1" denotes the empty word.
inline AbstractWord parse_word(const std::string& text) {
  RawWord w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    auto caret = tok.find('^');
    std::string sym = tok.substr(0, caret);
    long long exp = 1;
    if (caret != std::string::npos) {
      try {
        exp = std::stoll(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_word: bad exponent in '" + tok + "'");
      }
    }
    if (sym.empty()) throw std::invalid_argument("parse_word: empty symbol in '" + tok + "'");
    w.push_back(AbsLetter{sym, exp});
  }
  return AbstractWord(std::move(w));
}

// ---------------------------------------------------------------------------
// Oracles

/// Where an oracle's truth comes from.  PlanarVerified facts were re-checked
/// against a surface model's automorphism tables when the oracle set was
/// assembled; Axiom facts are declared inputs (subsurface support claims,
/// closed-surface disjointness read off a gluing diagram).
enum class Provenance { PlanarVerified, Axiom };

inline std::string provenance_name(Provenance p) {
  return p == Provenance::PlanarVerified ? "planar-verified" : "axiom";
}

struct OracleRelation {
  enum class Kind { Commute, Conjugate, Relation };

  std::string id;
  Kind kind = Kind::Commute;
  Provenance prov = Provenance::Axiom;
  std::string note;

  // Commute: twists about a and b commute.
  std::string a, b;
  // Conjugate: f t_from f^-1 = t_to  (f maps the curve `from` to `to`).
  std::string f, from, to;
  // Relation: lhs = rhs as mapping classes, both reduced words.
  AbstractWord lhs, rhs;

  static OracleRelation commute(std::string a, std::string b, Provenance p,
                                std::string note = "") {
    OracleRelation r;
    if (b < a) std::swap(a, b);
    r.id = "commute:" + a + ":" + b;
    r.kind = Kind::Commute;
    r.prov = p;
    r.a = std::move(a);
    r.b = std::move(b);
    r.note = std::move(note);
    return r;
  }

  static OracleRelation conjugate(std::string f, std::string from, std::string to,
                                  Provenance p, std::string note = "") {
    OracleRelation r;
    r.id = "conj:" + f + ":" + from + ":" + to;
    r.kind = Kind::Conjugate;
    r.prov = p;
    r.f = std::move(f);
    r.from = std::move(from);
    r.to = std::move(to);
    r.note = std::move(note);
    return r;
  }

  static OracleRelation relation(const std::string& name, AbstractWord lhs, AbstractWord rhs,
                                 Provenance p, std::string note = "") {
    OracleRelation r;
    r.id = "rel:" + name;
    r.kind = Kind::Relation;
    r.prov = p;
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.note = std::move(note);
    return r;
  }
};

class OracleSet {
 public:
  void add(OracleRelation r) {
    if (by_id_.count(r.id)) return;  // first registration wins
    by_id_.emplace(r.id, rels_.size());
    rels_.push_back(std::move(r));
  }

  void merge(const OracleSet& o) {
    for (const auto& r : o.rels_) add(r);
  }

  /// Remove one oracle by id (for dependency-exactness experiments).
  OracleSet without(const std::string& id) const {
    OracleSet out;
    for (const auto& r : rels_)
      if (r.id != id) out.add(r);
    return out;
  }

  const OracleRelation* find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &rels_[it->second];
  }

  const OracleRelation* find_commute(const std::string& s, const std::string& t) const {
    const std::string id =
        s <= t ? "commute:" + s + ":" + t : "commute:" + t + ":" + s;
    const OracleRelation* r = find(id);
    return r && r->kind == OracleRelation::Kind::Commute ? r : nullptr;
  }

  const OracleRelation* find_conjugate(const std::string& f, const std::string& from) const {
    for (const auto& r : rels_)
      if (r.kind == OracleRelation::Kind::Conjugate && r.f == f && r.from == from) return &r;
    return nullptr;
  }

  const std::vector<OracleRelation>& all() const { return rels_; }

 private:
  std::vector<OracleRelation> rels_;
  std::map<std::string, std::size_t> by_id_;
};

// ---------------------------------------------------------------------------
// Derivation steps

struct DerivStep {
  enum class Kind { Insert, Cancel, Merge, Split, Swap, Subst, Conj };

  Kind kind = Kind::Insert;
  std::size_t pos = 0;
  std::string sym;        // Insert
  long long exp = 0;      // Insert, Split
  std::string oracle_id;  // Swap, Subst, Conj
  bool forward = true;    // Subst, Conj
};

/// Apply one step to the raw tape.  Returns false (with *err set) when the
/// step does not validate; the tape is left unchanged on failure.
inline bool apply_step(RawWord& w, const DerivStep& s, const OracleSet& oracles,
                       std::string* err) {
  auto fail = [&](const std::string& m) {
    if (err) *err = m;
    return false;
  };
  const std::size_t n = w.size();

  switch (s.kind) {
    case DerivStep::Kind::Insert: {
      if (s.pos > n) return fail("insert: position out of range");
      if (s.exp == 0) return fail("insert: zero exponent");
      w.insert(w.begin() + static_cast<long>(s.pos),
               {AbsLetter{s.sym, s.exp}, AbsLetter{s.sym, -s.exp}});
      return true;
    }
    case DerivStep::Kind::Cancel: {
      if (s.pos + 1 >= n) return fail("cancel: position out of range");
      const AbsLetter &x = w[s.pos], &y = w[s.pos + 1];
      if (x.sym != y.sym || x.exp + y.exp != 0)
        return fail("cancel: letters at " + std::to_string(s.pos) + " are not inverse");
      w.erase(w.begin() + static_cast<long>(s.pos), w.begin() + static_cast<long>(s.pos) + 2);
      return true;
    }
    case DerivStep::Kind::Merge: {
      if (s.pos + 1 >= n) return fail("merge: position out of range");
      AbsLetter &x = w[s.pos], &y = w[s.pos + 1];
      if (x.sym != y.sym) return fail("merge: different symbols");
      if (x.exp + y.exp == 0) return fail("merge: exponents cancel, use cancel");
      x.exp += y.exp;
      w.erase(w.begin() + static_cast<long>(s.pos) + 1);
      return true;
    }
    case DerivStep::Kind::Split: {
      if (s.pos >= n) return fail("split: position out of range");
      AbsLetter& x = w[s.pos];
      if (s.exp == 0 || s.exp == x.exp) return fail("split: trivial part");
      const long long rest = x.exp - s.exp;
      AbsLetter right{x.sym, rest};
      x.exp = s.exp;
      w.insert(w.begin() + static_cast<long>(s.pos) + 1, right);
      return true;
    }
    case DerivStep::Kind::Swap: {
      if (s.pos + 1 >= n) return fail("swap: position out of range");
      const OracleRelation* r = oracles.find(s.oracle_id);
      if (!r || r->kind != OracleRelation::Kind::Commute)
        return fail("swap: unknown commute oracle " + s.oracle_id);
      const std::string &p = w[s.pos].sym, &q = w[s.pos + 1].sym;
      const bool match = (p == r->a && q == r->b) || (p == r->b && q == r->a);
      if (!match) return fail("swap: oracle " + s.oracle_id + " does not cover " + p + "," + q);
      std::swap(w[s.pos], w[s.pos + 1]);
      return true;
    }
    case DerivStep::Kind::Subst: {
      const OracleRelation* r = oracles.find(s.oracle_id);
      if (!r || r->kind != OracleRelation::Kind::Relation)
        return fail("subst: unknown relation oracle " + s.oracle_id);
      const RawWord& from = (s.forward ? r->lhs : r->rhs).letters();
      const RawWord& to = (s.forward ? r->rhs : r->lhs).letters();
      if (s.pos + from.size() > n) return fail("subst: pattern exceeds word");
      for (std::size_t i = 0; i < from.size(); ++i)
        if (w[s.pos + i] != from[i])
          return fail("subst: pattern mismatch for " + s.oracle_id + " at " +
                      std::to_string(s.pos));
      RawWord out;
      out.reserve(n - from.size() + to.size());
      out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(s.pos));
      out.insert(out.end(), to.begin(), to.end());
      out.insert(out.end(), w.begin() + static_cast<long>(s.pos + from.size()), w.end());
      w = std::move(out);
      return true;
    }
    case DerivStep::Kind::Conj: {
      const OracleRelation* r = oracles.find(s.oracle_id);
      if (!r || r->kind != OracleRelation::Kind::Conjugate)
        return fail("conj: unknown conjugate oracle " + s.oracle_id);
      if (s.forward) {
        // collapse: f^1 from^e f^-1 -> to^e, or f^-1 to^e f^1 -> from^e
        if (s.pos + 2 >= n) return fail("conj: pattern exceeds word");
        const AbsLetter &l = w[s.pos], &m = w[s.pos + 1], &rr = w[s.pos + 2];
        if (l.sym != r->f || rr.sym != r->f || l.exp + rr.exp != 0 ||
            (l.exp != 1 && l.exp != -1))
          return fail("conj: no conjugating frame at " + std::to_string(s.pos));
        std::string out_sym;
        if (l.exp == 1 && m.sym == r->from)
          out_sym = r->to;
        else if (l.exp == -1 && m.sym == r->to)
          out_sym = r->from;
        else
          return fail("conj: oracle " + s.oracle_id + " does not apply to " + m.sym);
        const long long e = m.exp;
        w.erase(w.begin() + static_cast<long>(s.pos), w.begin() + static_cast<long>(s.pos) + 3);
        w.insert(w.begin() + static_cast<long>(s.pos), AbsLetter{out_sym, e});
        return true;
      }
      // expand: to^e -> f^1 from^e f^-1, or from^e -> f^-1 to^e f^1
      if (s.pos >= n) return fail("conj: position out of range");
      const AbsLetter& m = w[s.pos];
      RawWord frame;
      if (m.sym == r->to)
        frame = {AbsLetter{r->f, 1}, AbsLetter{r->from, m.exp}, AbsLetter{r->f, -1}};
      else if (m.sym == r->from)
        frame = {AbsLetter{r->f, -1}, AbsLetter{r->to, m.exp}, AbsLetter{r->f, 1}};
      else
        return fail("conj: oracle " + s.oracle_id + " does not apply to " + m.sym);
      w.erase(w.begin() + static_cast<long>(s.pos));
      w.insert(w.begin() + static_cast<long>(s.pos), frame.begin(), frame.end());
      return true;
    }
  }
  return fail("unknown step kind");
}

/// Checkable rewrite certificate.
struct Derivation {
  AbstractWord start, end;
  std::vector<DerivStep> steps;

  std::vector<std::string> oracle_ids_used() const {
    std::vector<std::string> ids;
    for (const DerivStep& s : steps)
      if (!s.oracle_id.empty() &&
          std::find(ids.begin(), ids.end(), s.oracle_id) == ids.end())
        ids.push_back(s.oracle_id);
    return ids;
  }
};

/// Replay every step from `start`; true iff all steps validate and the tape
/// reduces to `end`.
inline bool check_derivation(const Derivation& d, const OracleSet& oracles,
                             std::string* err = nullptr) {
  RawWord w = d.start.letters();
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    std::string step_err;
    if (!apply_step(w, d.steps[i], oracles, &step_err)) {
      if (err) *err = "step " + std::to_string(i) + ": " + step_err;
      return false;
    }
  }
  if (AbstractWord(w) != d.end) {
    if (err)
      *err = "final word " + AbstractWord(w).to_string() + " differs from declared end " +
             d.end.to_string();
    return false;
  }
  return true;
}

/// Chain two certificates: d1 must land exactly where d2 begins.
inline Derivation chain(const Derivation& d1, const Derivation& d2) {
  if (d1.end != d2.start) throw std::invalid_argument("chain: endpoint mismatch");
  Derivation d;
  d.start = d1.start;
  d.end = d2.end;
  d.steps = d1.steps;
  d.steps.insert(d.steps.end(), d2.steps.begin(), d2.steps.end());
  return d;
}

// ---------------------------------------------------------------------------
// Step/derivation text form
//
//   start delta^2
//   insert 1 a1^1
//   subst 0 rel:daisy4 fwd
//   swap 5 commute:a2:a3
//   conj 2 conj:phi:x1:a1 rev
//   cancel 4
//   merge 3
//   split 0 2
//   end x1 a2^-1 ...
//
// '#' starts a comment; blank lines are skipped.

inline std::string step_to_line(const DerivStep& s) {
  std::ostringstream os;
  switch (s.kind) {
    case DerivStep::Kind::Insert:
      os << "insert " << s.pos << " " << s.sym << "^" << s.exp;
      break;
    case DerivStep::Kind::Cancel:
      os << "cancel " << s.pos;
      break;
    case DerivStep::Kind::Merge:
      os << "merge " << s.pos;
      break;
    case DerivStep::Kind::Split:
      os << "split " << s.pos << " " << s.exp;
      break;
    case DerivStep::Kind::Swap:
      os << "swap " << s.pos << " " << s.oracle_id;
      break;
    case DerivStep::Kind::Subst:
      os << "subst " << s.pos << " " << s.oracle_id << (s.forward ? " fwd" : " rev");
      break;
    case DerivStep::Kind::Conj:
      os << "conj " << s.pos << " " << s.oracle_id << (s.forward ? " fwd" : " rev");
      break;
  }
  return os.str();
}

inline DerivStep step_from_line(const std::string& line) {
  std::istringstream is(line);
  std::string kind;
  is >> kind;
  DerivStep s;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("bad derivation step line (" + what + "): " + line);
  };
  if (kind == "insert") {
    s.kind = DerivStep::Kind::Insert;
    std::string tok;
    need(static_cast<bool>(is >> s.pos >> tok), "insert args");
    auto caret = tok.find('^');
    need(caret != std::string::npos && caret > 0, "insert sym^exp");
    s.sym = tok.substr(0, caret);
    s.exp = std::stoll(tok.substr(caret + 1));
  } else if (kind == "cancel") {
    s.kind = DerivStep::Kind::Cancel;
    need(static_cast<bool>(is >> s.pos), "cancel pos");
  } else if (kind == "merge") {
    s.kind = DerivStep::Kind::Merge;
    need(static_cast<bool>(is >> s.pos), "merge pos");
  } else if (kind == "split") {
    s.kind = DerivStep::Kind::Split;
    need(static_cast<bool>(is >> s.pos >> s.exp), "split args");
  } else if (kind == "swap") {
    s.kind = DerivStep::Kind::Swap;
    need(static_cast<bool>(is >> s.pos >> s.oracle_id), "swap args");
  } else if (kind == "subst" || kind == "conj") {
    s.kind = kind == "subst" ? DerivStep::Kind::Subst : DerivStep::Kind::Conj;
    std::string dir;
    need(static_cast<bool>(is >> s.pos >> s.oracle_id >> dir), kind + " args");
    need(dir == "fwd" || dir == "rev", "direction");
    s.forward = dir == "fwd";
  } else {
    need(false, "unknown step kind");
  }
  std::string extra;
  need(!(is >> extra), "trailing tokens");
  return s;
}

inline void write_derivation(std::ostream& os, const Derivation& d,
                             const std::string& comment = "") {
  if (!comment.empty()) os << "# " << comment << "\n";
  os << "start " << d.start.to_string() << "\n";
  for (const DerivStep& s : d.steps) os << step_to_line(s) << "\n";
  os << "end " << d.end.to_string() << "\n";
}

inline Derivation read_derivation(std::istream& is) {
  Derivation d;
  bool have_start = false, have_end = false;
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string head;
    if (!(probe >> head)) continue;
    if (head == "start") {
      d.start = parse_word(line.substr(line.find("start") + 5));
      have_start = true;
    } else if (head == "end") {
      d.end = parse_word(line.substr(line.find("end") + 3));
      have_end = true;
    } else {
      d.steps.push_back(step_from_line(line));
    }
  }
  if (!have_start || !have_end)
    throw std::invalid_argument("read_derivation: missing start or end line");
  return d;
}

// ---------------------------------------------------------------------------
// Emitter: builds a derivation while simulating the tape, so generated steps
// are valid by construction (any internal misuse throws immediately).

class DerivationBuilder {
 public:
  DerivationBuilder(AbstractWord start, const OracleSet& oracles)
      : oracles_(&oracles), start_(std::move(start)), w_(start_.letters()) {}

  const RawWord& tape() const { return w_; }
  std::size_t size() const { return w_.size(); }
  const AbsLetter& at(std::size_t i) const { return w_.at(i); }

  void insert(std::size_t pos, const std::string& sym, long long exp) {
    emit({DerivStep::Kind::Insert, pos, sym, exp, "", true});
  }
  void cancel(std::size_t pos) { emit({DerivStep::Kind::Cancel, pos, "", 0, "", true}); }
  void merge(std::size_t pos) { emit({DerivStep::Kind::Merge, pos, "", 0, "", true}); }
  void split(std::size_t pos, long long left_exp) {
    emit({DerivStep::Kind::Split, pos, "", left_exp, "", true});
  }
  void swap(std::size_t pos) {
    const OracleRelation* r = oracles_->find_commute(w_.at(pos).sym, w_.at(pos + 1).sym);
    if (!r)
      throw std::logic_error("DerivationBuilder: no commute oracle for " + w_.at(pos).sym +
                             "," + w_.at(pos + 1).sym);
    emit({DerivStep::Kind::Swap, pos, "", 0, r->id, true});
  }
  void subst(std::size_t pos, const std::string& oracle_id, bool forward) {
    emit({DerivStep::Kind::Subst, pos, "", 0, oracle_id, forward});
  }
  void conj_collapse(std::size_t pos, const std::string& oracle_id) {
    emit({DerivStep::Kind::Conj, pos, "", 0, oracle_id, true});
  }
  void conj_expand(std::size_t pos, const std::string& oracle_id) {
    emit({DerivStep::Kind::Conj, pos, "", 0, oracle_id, false});
  }

  /// Move the single letter at `from` left to index `to` by adjacent swaps.
  void move_left(std::size_t from, std::size_t to) {
    for (std::size_t i = from; i > to; --i) swap(i - 1);
  }

  Derivation finish() const {
    Derivation d;
    d.start = start_;
    d.end = AbstractWord(w_);
    d.steps = steps_;
    return d;
  }

 private:
  void emit(DerivStep s) {
    std::string err;
    if (!apply_step(w_, s, *oracles_, &err))
      throw std::logic_error("DerivationBuilder: invalid step: " + err);
    steps_.push_back(std::move(s));
  }

  const OracleSet* oracles_;
  AbstractWord start_;
  RawWord w_;
  std::vector<DerivStep> steps_;
};

// ---------------------------------------------------------------------------
// Boundary capping

/// Total relabeling applied when boundary components are capped or glued:
/// each symbol maps to another symbol, or to "" (the class dies, e.g. a
/// boundary-parallel twist around a capped hole, or an auxiliary class that
/// becomes isotopic to the identity).
struct CapRule {
  std::map<std::string, std::string> image;

  const std::string& map_sym(const std::string& s) const {
    auto it = image.find(s);
    if (it == image.end())
      throw std::invalid_argument("CapRule: no image declared for symbol " + s);
    return it->second;
  }
};

inline AbstractWord cap_boundary(const AbstractWord& w, const CapRule& rule) {
  RawWord out;
  for (const AbsLetter& l : w.letters()) {
    const std::string& im = rule.map_sym(l.sym);
    if (im.empty()) continue;
    out.push_back(AbsLetter{im, l.exp});
  }
  return AbstractWord(std::move(out));
}

}  // namespace mcgkit
