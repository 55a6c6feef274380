#pragma once

// Free-groupoid core.
//
// The surface models downstream present a disk with n interior holes as a
// graph of basepoints: one outer basepoint v0 and one basepoint v_i on each
// hole boundary.  The fundamental groupoid on these basepoints is free on
//   e_i : v0 -> v_i   (an embedded arc to hole i)
//   b_i : v_i -> v_i  (the loop once around hole i, counterclockwise)
// Words are typed paths: every concatenation must match endpoints, and each
// word is kept freely reduced.  Mapping classes act by endpoint-preserving
// automorphisms, stored as explicit image tables over the positive
// generators.

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace mcgkit {

/// Basepoint index: 0 is the outer basepoint, 1..n sit on the hole boundaries.
struct VertexId {
  int v = 0;
  bool operator==(const VertexId& o) const { return v == o.v; }
  bool operator!=(const VertexId& o) const { return v != o.v; }
};

enum class GenKind { Arc, HoleLoop };

/// One positive generator of the free groupoid.
struct EdgeGen {
  std::string name;  // "e3", "b1", ...
  GenKind kind;
  int hole;  // 1-based hole index
  VertexId source, target;
};

/// Generator alphabet for a disk with n holes.  Immutable once built.
class GroupoidSignature {
 public:
  explicit GroupoidSignature(int holes) : holes_(holes) {
    if (holes < 1) throw std::invalid_argument("GroupoidSignature: need at least one hole");
    gens_.reserve(2 * static_cast<std::size_t>(holes));
    for (int i = 1; i <= holes; ++i)
      push(EdgeGen{"e" + std::to_string(i), GenKind::Arc, i, VertexId{0}, VertexId{i}});
    for (int i = 1; i <= holes; ++i)
      push(EdgeGen{"b" + std::to_string(i), GenKind::HoleLoop, i, VertexId{i}, VertexId{i}});
  }

  int holes() const { return holes_; }
  std::size_t size() const { return gens_.size(); }
  const EdgeGen& gen(int id) const { return gens_.at(static_cast<std::size_t>(id)); }

  int arc(int hole) const { return hole - 1; }
  int loop(int hole) const { return holes_ + hole - 1; }

  int id_of(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end())
      throw std::invalid_argument("GroupoidSignature: unknown generator " + name);
    return it->second;
  }

 private:
  void push(EdgeGen g) {
    by_name_.emplace(g.name, static_cast<int>(gens_.size()));
    gens_.push_back(std::move(g));
  }
  int holes_;
  std::vector<EdgeGen> gens_;
  std::unordered_map<std::string, int> by_name_;
};

/// Signed generator occurrence.
struct Letter {
  int gen = 0;
  int sign = 1;  // +1 or -1
  bool operator==(const Letter& o) const { return gen == o.gen && sign == o.sign; }
  bool operator!=(const Letter& o) const { return !(*this == o); }
};

/// Freely reduce in place with a single stack pass.
inline void reduce_letters(std::vector<Letter>& ls) {
  std::size_t top = 0;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (top > 0 && ls[top - 1].gen == ls[i].gen && ls[top - 1].sign == -ls[i].sign)
      --top;
    else
      ls[top++] = ls[i];
  }
  ls.resize(top);
}

/// Typed, freely reduced path.  Free reduction never changes endpoints, so
/// src/dst are fixed at construction.
class GroupoidWord {
 public:
  GroupoidWord() = default;
  GroupoidWord(VertexId src, VertexId dst, std::vector<Letter> ls)
      : src_(src), dst_(dst), ls_(std::move(ls)) {
    reduce_letters(ls_);
  }

  VertexId src() const { return src_; }
  VertexId dst() const { return dst_; }
  const std::vector<Letter>& letters() const { return ls_; }
  std::size_t length() const { return ls_.size(); }
  bool is_identity() const { return ls_.empty() && src_ == dst_; }

  bool operator==(const GroupoidWord& o) const {
    return src_ == o.src_ && dst_ == o.dst_ && ls_ == o.ls_;
  }
  bool operator!=(const GroupoidWord& o) const { return !(*this == o); }

 private:
  VertexId src_{}, dst_{};
  std::vector<Letter> ls_;
};

inline GroupoidWord identity_word(VertexId at) { return GroupoidWord(at, at, {}); }

/// Build a word from signed letters, checking endpoint chaining against sig.
inline GroupoidWord make_word(const GroupoidSignature& sig, const std::vector<Letter>& ls) {
  if (ls.empty()) return identity_word(VertexId{0});
  auto ends = [&](const Letter& l) {
    const EdgeGen& g = sig.gen(l.gen);
    return l.sign > 0 ? std::pair<VertexId, VertexId>{g.source, g.target}
                      : std::pair<VertexId, VertexId>{g.target, g.source};
  };
  VertexId src = ends(ls.front()).first;
  VertexId at = src;
  for (const Letter& l : ls) {
    auto [s, t] = ends(l);
    if (s != at)
      throw std::invalid_argument("make_word: endpoint mismatch at generator " +
                                  sig.gen(l.gen).name);
    at = t;
  }
  return GroupoidWord(src, at, ls);
}

/// Path composition, left factor first: concat(a, b) traverses a then b.
inline GroupoidWord concat(const GroupoidWord& a, const GroupoidWord& b) {
  if (a.dst() != b.src()) throw std::invalid_argument("concat: endpoint mismatch");
  std::vector<Letter> ls;
  ls.reserve(a.length() + b.length());
  ls.insert(ls.end(), a.letters().begin(), a.letters().end());
  ls.insert(ls.end(), b.letters().begin(), b.letters().end());
  return GroupoidWord(a.src(), b.dst(), std::move(ls));
}

inline GroupoidWord inverse(const GroupoidWord& w) {
  std::vector<Letter> ls;
  ls.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it)
    ls.push_back(Letter{it->gen, -it->sign});
  return GroupoidWord(w.dst(), w.src(), std::move(ls));
}

inline std::string word_to_string(const GroupoidSignature& sig, const GroupoidWord& w) {
  if (w.letters().empty()) return "1";
  std::string s;
  for (const Letter& l : w.letters()) {
    if (!s.empty()) s += " ";
    s += sig.gen(l.gen).name;
    if (l.sign < 0) s += "^-1";
  }
  return s;
}

/// Endpoint-preserving automorphism, stored as the image of every positive
/// generator.  Images of inverses are derived by word inversion; this is the
/// generic groupoid layer, the curve catalogs upstream record geometric
/// inverse actions separately before they ever reach this type.
struct AutomorphismTable {
  std::vector<GroupoidWord> img;  // indexed by generator id

  bool operator==(const AutomorphismTable& o) const { return img == o.img; }
  bool operator!=(const AutomorphismTable& o) const { return !(*this == o); }
};

inline AutomorphismTable identity_table(const GroupoidSignature& sig) {
  AutomorphismTable t;
  t.img.reserve(sig.size());
  for (std::size_t g = 0; g < sig.size(); ++g) {
    const EdgeGen& e = sig.gen(static_cast<int>(g));
    t.img.push_back(GroupoidWord(e.source, e.target, {Letter{static_cast<int>(g), 1}}));
  }
  return t;
}

/// Every image must connect the same endpoints as its generator.
inline bool table_endpoints_ok(const GroupoidSignature& sig, const AutomorphismTable& t) {
  if (t.img.size() != sig.size()) return false;
  for (std::size_t g = 0; g < sig.size(); ++g) {
    const EdgeGen& e = sig.gen(static_cast<int>(g));
    if (t.img[g].src() != e.source || t.img[g].dst() != e.target) return false;
  }
  return true;
}

/// Image of a word under a table: splice generator images and reduce once.
inline GroupoidWord apply(const AutomorphismTable& t, const GroupoidWord& w) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters()) {
    const GroupoidWord& im = t.img.at(static_cast<std::size_t>(l.gen));
    if (l.sign > 0)
      out.insert(out.end(), im.letters().begin(), im.letters().end());
    else
      for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it)
        out.push_back(Letter{it->gen, -it->sign});
  }
  return GroupoidWord(w.src(), w.dst(), std::move(out));
}

/// compose(f, g) is "f after g": the automorphism applying g first, then f.
inline AutomorphismTable compose(const AutomorphismTable& f, const AutomorphismTable& g) {
  AutomorphismTable r;
  r.img.reserve(g.img.size());
  for (const GroupoidWord& w : g.img) r.img.push_back(apply(f, w));
  return r;
}

/// Tables are equal iff all generator images agree as reduced words; free
/// reduction is a normal form, so this decides equality of the automorphisms.
inline bool auto_equal(const AutomorphismTable& a, const AutomorphismTable& b) {
  return a.img == b.img;
}

}  // namespace mcgkit
