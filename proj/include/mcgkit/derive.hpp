#pragma once

// Relation programs: generators that emit step-by-step certificates for the
// boundary-twist power relation and its commutator forms.
//
// Everything here works over the standard 4-holed-disk alphabet
//   delta        outer boundary twist
//   a1..a4       hole boundary twists
//   x1..x4       twists about the convex curve enclosing all holes but one
// plus, for the lifted forms, abstract symbols for classes supported in a
// subsurface glued along the boundary: phi, psi (auxiliary conjugators) and
// twist symbols like b.  The generators only ever cite oracles by id; the
// caller supplies an OracleSet that actually contains them (planar-verified
// facts for catalog curves, declared axioms for the abstract symbols).

#include <mcgkit/rewrite.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcgkit {

// ---------------------------------------------------------------------------
// Canonical words

/// lhs of the d-petal chain relation: delta^{d-2} a1 ... ad.
inline AbstractWord daisy_lhs(int d) {
  RawWord w;
  if (d > 2) w.push_back(AbsLetter{"delta", d - 2});
  for (int i = 1; i <= d; ++i) w.push_back(AbsLetter{"a" + std::to_string(i), 1});
  return AbstractWord(std::move(w));
}

/// rhs of the d-petal chain relation: x1 ... xd.
inline AbstractWord daisy_rhs(int d) {
  RawWord w;
  for (int i = 1; i <= d; ++i) w.push_back(AbsLetter{"x" + std::to_string(i), 1});
  return AbstractWord(std::move(w));
}

/// rhs of the even boundary-power relation:
///   prod_{i=1..k} (x1 a2^-1 x2 a1^-1)^{x3^{i-1}} . x3^k a4^-k x4^k a3^-k
/// returned in reduced form.
inline AbstractWord power_relation_rhs(int k) {
  if (k < 1) throw std::invalid_argument("power_relation_rhs: k >= 1 required");
  const AbstractWord F = parse_word("x1 a2^-1 x2 a1^-1");
  const AbstractWord x3 = AbstractWord::gen("x3");
  AbstractWord r;
  for (int i = 1; i <= k; ++i) r = r.concat(F.conjugated_by(x3.pow(i - 1)));
  r = r.concat(AbstractWord::gen("x3", k));
  r = r.concat(AbstractWord::gen("a4", -k));
  r = r.concat(AbstractWord::gen("x4", k));
  r = r.concat(AbstractWord::gen("a3", -k));
  return r;
}

// ---------------------------------------------------------------------------
// Power relation certificate

namespace detail {

/// At tape position p sits delta^2.  Rewrite it, via the 4-petal chain
/// relation and commutations with the central boundary twists, into
///   x1 a2^-1 x2 a1^-1 x3 a4^-1 x4 a3^-1
/// (8 letters replacing 1).
inline void emit_base_power(DerivationBuilder& b, std::size_t p) {
  if (b.at(p) != AbsLetter{"delta", 2})
    throw std::logic_error("emit_base_power: expected delta^2 at position");
  b.insert(p + 1, "a1", 1);
  b.insert(p + 2, "a2", 1);
  b.insert(p + 3, "a3", 1);
  b.insert(p + 4, "a4", 1);
  b.subst(p, "rel:daisy4", true);
  // x1 x2 x3 x4 a4^-1 a3^-1 a2^-1 a1^-1
  b.move_left(p + 6, p + 1);  // a2^-1 behind x1
  b.move_left(p + 7, p + 3);  // a1^-1 behind x2
  b.move_left(p + 6, p + 5);  // a4^-1 behind x3
}

/// Emit the full certificate delta^{2k} -> grouped power rhs onto b, whose
/// tape must currently be the single letter delta^{2k}.  After this call the
/// tape holds the rhs in grouped (unreduced) form: per-factor conjugators
/// x3^{i-1} ... x3^{-(i-1)} stay separate letters, so callers can keep
/// transforming factors in place.
inline void emit_power_steps(DerivationBuilder& b, int k) {
  if (k < 1) throw std::invalid_argument("emit_power_steps: k >= 1 required");
  if (b.size() != 1 || b.at(0) != AbsLetter{"delta", 2 * k})
    throw std::logic_error("emit_power_steps: tape must be delta^{2k}");
  if (k > 1) b.split(0, 2);
  emit_base_power(b, 0);
  // invariant: after round j the tape is H_j T_j [delta^{2(k-j)}], where
  // H_j has j factors (4 + 6(j-1) letters) and T_j = x3^j a4^-j x4^j a3^-j.
  for (int j = 1; j < k; ++j) {
    const std::size_t head = 4 + 6 * static_cast<std::size_t>(j - 1);
    const std::size_t tail = head;           // T_j start
    const std::size_t dpos = tail + 4;       // trailing delta power
    if (k - j > 1) b.split(dpos, 2);
    b.move_left(dpos, tail + 1);  // delta^2 commutes behind x3^j
    emit_base_power(b, tail + 1);
    // (x3,j) x1 a2^-1 x2 a1^-1 (x3,1) a4^-1 x4 a3^-1 (a4,-j)(x4,j)(a3,-j)
    b.insert(tail + 5, "x3", -j);
    b.merge(tail + 6);            // x3^j . x3 -> x3^{j+1}
    b.move_left(tail + 10, tail + 8);
    b.merge(tail + 7);            // a4^-1 . a4^-j
    b.swap(tail + 9);
    b.merge(tail + 8);            // x4 . x4^j
    b.merge(tail + 9);            // a3^-1 . a3^-j
  }
}

}  // namespace detail

/// Certificate for delta^{2k} = power_relation_rhs(k).
inline Derivation derive_power_relation(int k, const OracleSet& oracles) {
  DerivationBuilder b(AbstractWord::gen("delta", 2 * k), oracles);
  detail::emit_power_steps(b, k);
  Derivation d = b.finish();
  if (d.end != power_relation_rhs(k))
    throw std::logic_error("derive_power_relation: generated end word mismatch");
  return d;
}

// ---------------------------------------------------------------------------
// Commutator insertion

namespace detail {

/// The tape at pos holds s1^e1 s2^e2 s3^e3 s4^e4 where some class f carries
/// s2 to s3 (rule_b) and s1 to s4 (rule_a), with e3 = -e2 and e4 = -e1.
/// Rewrite the block into the expanded commutator
///   s1^e1 s2^e2 f s2^-e2 s1^-e1 f^-1  =  [s1^e1 s2^e2, f]
inline void emit_bracket_insertion(DerivationBuilder& b, std::size_t pos,
                                   const OracleSet& oracles, const std::string& rule_b_id,
                                   const std::string& rule_a_id) {
  const OracleRelation* rb = oracles.find(rule_b_id);
  const OracleRelation* ra = oracles.find(rule_a_id);
  if (!rb || !ra || rb->kind != OracleRelation::Kind::Conjugate ||
      ra->kind != OracleRelation::Kind::Conjugate || rb->f != ra->f)
    throw std::logic_error("emit_bracket_insertion: need two conjugation rules by one class");
  const AbsLetter &l1 = b.at(pos), &l2 = b.at(pos + 1), &l3 = b.at(pos + 2),
                  &l4 = b.at(pos + 3);
  if (l2.sym != rb->from || l3.sym != rb->to || l3.exp != -l2.exp)
    throw std::logic_error("emit_bracket_insertion: inner pair does not match rule");
  if (l1.sym != ra->from || l4.sym != ra->to || l4.exp != -l1.exp)
    throw std::logic_error("emit_bracket_insertion: outer pair does not match rule");
  b.conj_expand(pos + 2, rule_b_id);  // s3^-e2 -> f s2^-e2 f^-1
  b.conj_expand(pos + 5, rule_a_id);  // s4^-e1 -> f s1^-e1 f^-1
  b.cancel(pos + 4);                  // f^-1 f
}

}  // namespace detail

/// Standalone form: rewrite the 4-letter block of `w` starting at `pos` into
/// an expanded commutator, citing the two conjugation oracles.  Returns the
/// certificate (start = w).
inline Derivation insert_commutator(const AbstractWord& w, std::size_t pos,
                                    const std::string& rule_b_id, const std::string& rule_a_id,
                                    const OracleSet& oracles) {
  DerivationBuilder b(w, oracles);
  detail::emit_bracket_insertion(b, pos, oracles, rule_b_id, rule_a_id);
  return b.finish();
}

using WordPair = std::pair<AbstractWord, AbstractWord>;

/// prod_i  a_i b_i a_i^-1 b_i^-1, reduced.
inline AbstractWord expand_brackets(const std::vector<WordPair>& pairs) {
  AbstractWord w;
  for (const WordPair& p : pairs) w = w.concat(commutator(p.first, p.second));
  return w;
}

/// A commutator factorization with its replayable certificate: target equals
/// the product of the listed brackets, via cert (start = target, end =
/// reduced expanded product).
struct CommutatorFactorization {
  AbstractWord target;
  std::vector<WordPair> brackets;
  Derivation cert;

  bool validate(const OracleSet& oracles, std::string* err = nullptr) const {
    if (cert.start != target) {
      if (err) *err = "certificate does not start at the target word";
      return false;
    }
    if (expand_brackets(brackets) != cert.end) {
      if (err) *err = "bracket product differs from certificate end word";
      return false;
    }
    return check_derivation(cert, oracles, err);
  }
};

/// Factor delta^{2k} into k+1 commutators.  The first k brackets are
/// x3^{i-1}-conjugates of [x1 a2^-1, phi]; the last is [x3^k a4^-k, psi].
/// When tail_twist_sym is nonempty with tail_twist_power != 0, the last
/// bracket becomes [x3^k a4^-k, psi . t^m]  (t = tail_twist_sym, m = power),
/// which needs commute oracles (t, a4) and (t, x3).
inline CommutatorFactorization commutatorize_even_power(
    int k, const OracleSet& oracles, const std::string& tail_twist_sym = "",
    long long tail_twist_power = 0) {
  if (k < 1) throw std::invalid_argument("commutatorize_even_power: k >= 1 required");
  DerivationBuilder b(AbstractWord::gen("delta", 2 * k), oracles);
  detail::emit_power_steps(b, k);

  // Grouped tape: factor i at offset 4 + 6(i-1) - (i == 1 ? 4 : 6)... compute
  // directly: factor 1 = F at 0 (4 letters); factor i >= 2 = x3^{i-1} F
  // x3^{-(i-1)} (6 letters); tail T_k after them.
  std::vector<std::size_t> factor_off;
  std::size_t off = 0;
  for (int i = 1; i <= k; ++i) {
    factor_off.push_back(off);
    off += (i == 1) ? 4 : 6;
  }
  const std::size_t tail_off = off;

  // Tail first (it sits rightmost), then head factors right to left, so
  // already-planned offsets stay valid.
  detail::emit_bracket_insertion(b, tail_off, oracles, "conj:psi:a4:x4", "conj:psi:x3:a3");
  if (!tail_twist_sym.empty() && tail_twist_power != 0) {
    // [u, psi] -> [u, psi t^m]: plant t^m t^-m behind psi and walk t^-m out
    // across u^-1 (it commutes with both letters of u).
    b.insert(tail_off + 3, tail_twist_sym, tail_twist_power);
    b.swap(tail_off + 4);
    b.swap(tail_off + 5);
  }
  for (int i = k; i >= 1; --i) {
    const std::size_t f = factor_off[static_cast<std::size_t>(i - 1)] + (i == 1 ? 0 : 1);
    detail::emit_bracket_insertion(b, f, oracles, "conj:phi:a2:x2", "conj:phi:x1:a1");
  }

  CommutatorFactorization out;
  out.target = AbstractWord::gen("delta", 2 * k);
  out.cert = b.finish();
  const AbstractWord F = parse_word("x1 a2^-1");
  const AbstractWord phi = AbstractWord::gen("phi");
  const AbstractWord x3 = AbstractWord::gen("x3");
  for (int i = 1; i <= k; ++i) {
    AbstractWord c = x3.pow(i - 1);
    out.brackets.push_back({F.conjugated_by(c), phi.conjugated_by(c)});
  }
  AbstractWord tail_beta = AbstractWord::gen("psi");
  if (!tail_twist_sym.empty() && tail_twist_power != 0)
    tail_beta = tail_beta.concat(AbstractWord::gen(tail_twist_sym, tail_twist_power));
  out.brackets.push_back(
      {AbstractWord::gen("x3", k).concat(AbstractWord::gen("a4", -k)), tail_beta});

  std::string err;
  if (!out.validate(oracles, &err))
    throw std::logic_error("commutatorize_even_power: generated certificate invalid: " + err);
  return out;
}

// ---------------------------------------------------------------------------
// Axioms for the glued-subsurface alphabet

/// Declared facts about the abstract classes used by the lifted relations:
/// phi and psi are supported in the holed disk and carry one convex curve to
/// another; b is a twist about a curve of the glued subsurface, disjoint
/// from every catalog curve of the disk.
inline OracleSet subsurface_axioms(const std::vector<std::string>& extra_twists = {"b"}) {
  OracleSet os;
  os.add(OracleRelation::conjugate("phi", "x1", "a1", Provenance::Axiom,
                                   "phi carries x1 to a1 (both bound the same subsurface "
                                   "after gluing)"));
  os.add(OracleRelation::conjugate("phi", "a2", "x2", Provenance::Axiom,
                                   "phi carries a2 to x2"));
  os.add(OracleRelation::conjugate("psi", "x3", "a3", Provenance::Axiom,
                                   "psi carries x3 to a3"));
  os.add(OracleRelation::conjugate("psi", "a4", "x4", Provenance::Axiom,
                                   "psi carries a4 to x4"));
  std::vector<std::string> disk_syms = {"delta", "a1", "a2", "a3", "a4",
                                        "x1",    "x2", "x3", "x4"};
  for (const std::string& t : extra_twists)
    for (const std::string& s : disk_syms)
      os.add(OracleRelation::commute(t, s, Provenance::Axiom,
                                     "twist about a glued-subsurface curve has support "
                                     "disjoint from the disk"));
  return os;
}

}  // namespace mcgkit
