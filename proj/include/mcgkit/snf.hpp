#pragma once

// Exact integer matrices and Smith normal form.
//
// All arithmetic is arbitrary-precision: intermediate entries in a Smith
// reduction can grow far beyond any fixed-width type even for small inputs,
// and a silent wrap would corrupt every downstream invariant.  No modular
// shortcuts, no floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mcgkit {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

/// Dense integer matrix, row-major.  Value type; equality is entrywise.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Int& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& x = at(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += x * o.at(k, j);
      }
    return r;
  }

  IntMatrix operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("IntMatrix: shape mismatch in difference");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
  }
  /// row[i] += q * row[j]
  void add_row(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < cols_; ++c) at(i, c) += q * at(j, c);
  }
  /// col[i] += q * col[j]
  void add_col(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < rows_; ++r) at(r, i) += q * at(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) at(i, c) = -at(i, c);
  }

  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i == 0 ? "[" : " ");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "[") << at(i, j);
      os << "]" << (i + 1 == rows_ ? "]" : "\n");
    }
    if (rows_ == 0) os << "[]";
    return os.str();
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

/// Exact determinant (fraction-free Bareiss elimination).  Square input only.
inline Int determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: square matrix required");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

/// U * A * V = D with U, V unimodular and D diagonal, d_i >= 0, d_i | d_{i+1}.
struct SNFResult {
  IntMatrix u, d, v;
};

namespace detail {

// Pivot choice: smallest nonzero |entry| in the trailing block, ties broken
// by row-major position.  Deterministic, so transforms are reproducible.
inline bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Int best = 0;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Int& x = d.at(i, j);
      if (x == 0) continue;
      Int ax = abs_int(x);
      if (!found || ax < best) {
        found = true;
        best = ax;
        pr = i;
        pc = j;
      }
    }
  return found;
}

}  // namespace detail

inline SNFResult smith_normal_form(const IntMatrix& a) {
  SNFResult r{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  IntMatrix& d = r.d;
  IntMatrix& u = r.u;
  IntMatrix& v = r.v;
  const std::size_t n = std::min(a.rows(), a.cols());

  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pr = t, pc = t;
    if (!detail::find_pivot(d, t, pr, pc)) break;
    d.swap_rows(t, pr);
    u.swap_rows(t, pr);
    d.swap_cols(t, pc);
    v.swap_cols(t, pc);

    for (;;) {
      // Clear below and to the right of the pivot; a nonzero remainder
      // becomes the new (strictly smaller) pivot and we start over.
      bool again = false;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d.at(i, t) == 0) continue;
        Int q = d.at(i, t) / d.at(t, t);
        d.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (d.at(i, t) != 0) {
          d.swap_rows(t, i);
          u.swap_rows(t, i);
          again = true;
          break;
        }
      }
      if (again) continue;
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d.at(t, j) == 0) continue;
        Int q = d.at(t, j) / d.at(t, t);
        d.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (d.at(t, j) != 0) {
          d.swap_cols(t, j);
          v.swap_cols(t, j);
          again = true;
          break;
        }
      }
      if (again) continue;

      // Divisibility: pivot must divide every remaining entry.
      bool fixed = true;
      for (std::size_t i = t + 1; i < d.rows() && fixed; ++i)
        for (std::size_t j = t + 1; j < d.cols() && fixed; ++j)
          if (d.at(i, j) % d.at(t, t) != 0) {
            d.add_row(t, i, 1);
            u.add_row(t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
  }

  for (std::size_t i = 0; i < n; ++i)
    if (d.at(i, i) < 0) {
      d.negate_row(i);
      u.negate_row(i);
    }
  return r;
}

/// Finitely generated abelian group: Z^free_rank + sum Z/torsion[i],
/// torsion entries >= 2 in divisibility order.
struct AbelianGroup {
  long long free_rank = 0;
  std::vector<Int> torsion;

  bool operator==(const AbelianGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
      os << "Z";
      first = false;
    } else if (free_rank > 1) {
      os << "Z^" << free_rank;
      first = false;
    }
    for (const Int& t : torsion) {
      if (!first) os << " + ";
      os << "Z/" << t;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }
};

/// Cokernel Z^rows / (integer column span of a).
inline AbelianGroup cokernel(const IntMatrix& a) {
  SNFResult s = smith_normal_form(a);
  AbelianGroup g;
  const std::size_t n = std::min(a.rows(), a.cols());
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Int& di = s.d.at(i, i);
    if (di == 0) continue;
    ++rank;
    if (di >= 2) g.torsion.push_back(di);
  }
  g.free_rank = static_cast<long long>(a.rows() - rank);
  return g;
}

}  // namespace mcgkit
