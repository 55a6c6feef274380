#pragma once

// Symplectic homology representation of twist words on a closed surface.
//
// H_1 of the closed genus-g surface carries the basis u1..ug, v1..vg with
// intersection pairing <u_i, v_i> = +1 and all other basis pairings zero.
// A twist about a curve in class c acts by the transvection
//   x  |->  x + n <x, c> c        (n = twist power)
// which depends on c only up to sign, so orientation choices for curve
// classes never matter downstream.  Twist words map to integer symplectic
// matrices; the word acts with the same convention as everywhere else, the
// rightmost factor first.

#include <mcgkit/rewrite.hpp>
#include <mcgkit/snf.hpp>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcgkit {

struct SymplecticSpace {
  int genus = 0;
  std::size_t dim() const { return static_cast<std::size_t>(2 * genus); }
};

using HomologyClass = std::vector<long long>;

/// Intersection pairing in the u/v basis.
inline Int pairing(const SymplecticSpace& sp, const HomologyClass& x, const HomologyClass& y) {
  if (x.size() != sp.dim() || y.size() != sp.dim())
    throw std::invalid_argument("pairing: class dimension mismatch");
  const std::size_t g = static_cast<std::size_t>(sp.genus);
  Int s = 0;
  for (std::size_t i = 0; i < g; ++i)
    s += Int(x[i]) * y[g + i] - Int(x[g + i]) * y[i];
  return s;
}

/// Matrix of the n-th power of the twist about a curve in class c.
inline IntMatrix transvection(const SymplecticSpace& sp, const HomologyClass& c, long long n) {
  const std::size_t d = sp.dim();
  if (c.size() != d) throw std::invalid_argument("transvection: class dimension mismatch");
  IntMatrix m = IntMatrix::identity(d);
  for (std::size_t j = 0; j < d; ++j) {
    HomologyClass ej(d, 0);
    ej[j] = 1;
    const Int w = pairing(sp, ej, c) * n;
    if (w == 0) continue;
    for (std::size_t i = 0; i < d; ++i) m.at(i, j) += w * c[i];
  }
  return m;
}

/// Name -> H_1 class, usually extracted from a closed-surface catalog.
using ClassTable = std::map<std::string, HomologyClass>;

/// Matrix of a twist word: product of transvections, rightmost letter acting
/// first.  Every symbol in the word must have a class in the table.
inline IntMatrix word_to_matrix(const SymplecticSpace& sp, const ClassTable& classes,
                                const AbstractWord& w) {
  IntMatrix m = IntMatrix::identity(sp.dim());
  for (const AbsLetter& l : w.letters()) {
    auto it = classes.find(l.sym);
    if (it == classes.end())
      throw std::invalid_argument("word_to_matrix: no homology class for symbol " + l.sym);
    m = m * transvection(sp, it->second, l.exp);
  }
  return m;
}

inline bool check_identity_homology(const SymplecticSpace& sp, const ClassTable& classes,
                                    const AbstractWord& w) {
  return word_to_matrix(sp, classes, w) == IntMatrix::identity(sp.dim());
}

/// M^T J M = J for the standard symplectic form J.
inline bool symplectic_check(const SymplecticSpace& sp, const IntMatrix& m) {
  const std::size_t d = sp.dim(), g = static_cast<std::size_t>(sp.genus);
  if (m.rows() != d || m.cols() != d) return false;
  IntMatrix j(d, d);
  for (std::size_t i = 0; i < g; ++i) {
    j.at(i, g + i) = 1;
    j.at(g + i, i) = -1;
  }
  IntMatrix mt(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) mt.at(c, r) = m.at(r, c);
  return mt * j * m == j;
}

}  // namespace mcgkit
