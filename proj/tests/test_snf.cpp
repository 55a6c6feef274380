#include <catch2/catch_amalgamated.hpp>

#include <mcgkit/snf.hpp>

#include <numeric>
#include <random>
#include <vector>

using namespace mcgkit;

namespace {

// Independent oracle: the product d_1...d_j of the first j diagonal entries
// of the Smith form equals the gcd of all j x j minors of the input.  This
// characterises the Smith form without running any elimination, so it shares
// no code path with the implementation under test.
Int minor_gcd(const IntMatrix& a, std::size_t j) {
  std::vector<std::size_t> rows(a.rows()), cols(a.cols());
  std::iota(rows.begin(), rows.end(), 0);
  std::iota(cols.begin(), cols.end(), 0);

  std::vector<std::vector<std::size_t>> row_sets, col_sets;
  std::vector<std::size_t> pick;
  auto choose = [&](auto&& self, const std::vector<std::size_t>& from, std::size_t k,
                    std::size_t start, std::vector<std::vector<std::size_t>>& out) -> void {
    if (pick.size() == k) {
      out.push_back(pick);
      return;
    }
    for (std::size_t i = start; i < from.size(); ++i) {
      pick.push_back(from[i]);
      self(self, from, k, i + 1, out);
      pick.pop_back();
    }
  };
  choose(choose, rows, j, 0, row_sets);
  pick.clear();
  choose(choose, cols, j, 0, col_sets);

  Int g = 0;
  for (const auto& rs : row_sets)
    for (const auto& cs : col_sets) {
      IntMatrix sub(j, j);
      for (std::size_t r = 0; r < j; ++r)
        for (std::size_t c = 0; c < j; ++c) sub.at(r, c) = a.at(rs[r], cs[c]);
      g = boost::multiprecision::gcd(g, determinant(sub));
      if (g == 1) return g;
    }
  return abs_int(g);
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix m(dim(rng), dim(rng));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
  return m;
}

void check_snf_contract(const IntMatrix& a) {
  SNFResult s = smith_normal_form(a);

  REQUIRE(s.u.rows() == a.rows());
  REQUIRE(s.v.cols() == a.cols());
  REQUIRE(s.u * a * s.v == s.d);
  REQUIRE(abs_int(determinant(s.u)) == 1);
  REQUIRE(abs_int(determinant(s.v)) == 1);

  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < s.d.rows(); ++i)
    for (std::size_t j = 0; j < s.d.cols(); ++j)
      if (i != j) REQUIRE(s.d.at(i, j) == 0);
  for (std::size_t i = 0; i < n; ++i) REQUIRE(s.d.at(i, i) >= 0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (s.d.at(i + 1, i + 1) != 0) {
      REQUIRE(s.d.at(i, i) != 0);
      REQUIRE(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
    }
  }
}

}  // namespace

TEST_CASE("smith normal form matches the minor-gcd characterisation", "[snf]") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 60; ++trial) {
    IntMatrix a = random_matrix(rng, 5);
    SNFResult s = smith_normal_form(a);
    Int prod = 1;
    for (std::size_t j = 1; j <= std::min(a.rows(), a.cols()); ++j) {
      prod *= s.d.at(j - 1, j - 1);
      INFO("matrix\n" << a.to_string() << "\nj=" << j);
      REQUIRE(prod == minor_gcd(a, j));
    }
  }
}

TEST_CASE("smith normal form contract on 500 random matrices", "[snf]") {
  std::mt19937 rng(97);
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix a = random_matrix(rng, 8);
    INFO("trial " << trial << "\n" << a.to_string());
    check_snf_contract(a);
  }
}

TEST_CASE("smith normal form handles degenerate shapes", "[snf]") {
  check_snf_contract(IntMatrix(0, 0));
  check_snf_contract(IntMatrix(3, 0));
  check_snf_contract(IntMatrix(0, 4));
  check_snf_contract(IntMatrix(4, 4));  // zero matrix

  IntMatrix one(1, 1);
  one.at(0, 0) = -7;
  SNFResult s = smith_normal_form(one);
  REQUIRE(s.d.at(0, 0) == 7);
}

TEST_CASE("cokernel reports finitely generated abelian groups", "[snf]") {
  // Z^2 / <(2,0),(0,3)> = Z/2 + Z/6 after saturation? No: diag(2,3) has
  // Smith form diag(1,6), so the quotient is Z/6.
  IntMatrix a(2, 2);
  a.at(0, 0) = 2;
  a.at(1, 1) = 3;
  AbelianGroup g = cokernel(a);
  REQUIRE(g.free_rank == 0);
  REQUIRE(g.torsion == std::vector<Int>{6});
  REQUIRE(g.to_string() == "Z/6");

  // Z^3 / <(m,0,0)> = Z^2 + Z/m for m >= 2.
  IntMatrix b(3, 1);
  b.at(0, 0) = 4;
  AbelianGroup h = cokernel(b);
  REQUIRE(h.free_rank == 2);
  REQUIRE(h.torsion == std::vector<Int>{4});
  REQUIRE(h.to_string() == "Z^2 + Z/4");

  // m = 0 gives a free summand instead of torsion.
  IntMatrix c(3, 1);
  AbelianGroup z = cokernel(c);
  REQUIRE(z.free_rank == 3);
  REQUIRE(z.torsion.empty());

  // m = 1 contributes nothing.
  IntMatrix e(2, 1);
  e.at(0, 0) = 1;
  AbelianGroup t = cokernel(e);
  REQUIRE(t.free_rank == 1);
  REQUIRE(t.torsion.empty());
  REQUIRE(t.to_string() == "Z");

  REQUIRE(AbelianGroup{}.to_string() == "0");
}

TEST_CASE("determinant is exact on a known large case", "[snf]") {
  // Vandermonde on 1..6: det = prod_{i<j} (x_j - x_i), computed symbolically.
  const int n = 6;
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    Int p = 1;
    for (int j = 0; j < n; ++j) {
      m.at(i, j) = p;
      p *= (i + 1);
    }
  }
  Int expect = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) expect *= (j - i);
  REQUIRE(determinant(m) == expect);
}
