#include <gtest/gtest.h>

#include "hodgep/arith/field.hpp"
#include "hodgep/arith/integer_lattice.hpp"
#include "hodgep/arith/matrix.hpp"
#include "hodgep/arith/sparse.hpp"
#include "support.hpp"

using namespace hodgep;
using testing_support::uniform;

namespace {

std::vector<GaloisField> small_fields() {
  return {GaloisField(2), GaloisField(3), GaloisField(5), GaloisField(2, 2), GaloisField(3, 2), GaloisField(2, 3),
          GaloisField(7)};
}

template <class Field>
Matrix<Field> random_matrix(const Field& F, std::size_t r, std::size_t c, std::mt19937_64& g, long long q) {
  Matrix<Field> m(F, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = F.from_int(uniform(g, 0, q - 1));
  return m;
}

}  // namespace

TEST(GaloisField, FieldAxiomsOnEveryElement) {
  for (const auto& F : small_fields()) {
    const long long q = F.order();
    for (long long a = 0; a < q; ++a) {
      const auto x = static_cast<GaloisField::value_type>(a);
      EXPECT_TRUE(F.equal(F.add(x, F.neg(x)), F.zero()));
      if (a != 0) {
        EXPECT_TRUE(F.equal(F.mul(x, F.inv(x)), F.one())) << F.name() << " " << a;
        EXPECT_TRUE(F.equal(F.pow(x, q - 1), F.one()));
      }
      for (long long b = 0; b < q; ++b) {
        const auto y = static_cast<GaloisField::value_type>(b);
        EXPECT_EQ(F.add(x, y), F.add(y, x));
        EXPECT_EQ(F.mul(x, y), F.mul(y, x));
        // Frobenius is additive and multiplicative
        EXPECT_EQ(F.frobenius(F.add(x, y)), F.add(F.frobenius(x), F.frobenius(y)));
        EXPECT_EQ(F.frobenius(F.mul(x, y)), F.mul(F.frobenius(x), F.frobenius(y)));
      }
    }
  }
}

TEST(GaloisField, DistributivityRandomTriples) {
  auto g = testing_support::rng(1);
  for (const auto& F : small_fields())
    for (int k = 0; k < 200; ++k) {
      auto r = [&] { return static_cast<GaloisField::value_type>(uniform(g, 0, F.order() - 1)); };
      auto a = r(), b = r(), c = r();
      EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      EXPECT_EQ(F.mul(F.mul(a, b), c), F.mul(a, F.mul(b, c)));
    }
}

TEST(GaloisField, MultiplicativeGroupIsCyclicOfOrderQMinusOne) {
  for (const auto& F : small_fields()) {
    const long long q = F.order();
    bool found_generator = false;
    for (long long a = 1; a < q && !found_generator; ++a) {
      std::set<GaloisField::value_type> powers;
      auto x = F.one();
      for (long long k = 0; k < q - 1; ++k) {
        powers.insert(x);
        x = F.mul(x, static_cast<GaloisField::value_type>(a));
      }
      found_generator = static_cast<long long>(powers.size()) == q - 1;
    }
    EXPECT_TRUE(found_generator) << F.name();
  }
}

TEST(GaloisField, FrobeniusFixesExactlyThePrimeField) {
  for (const auto& F : small_fields()) {
    long long fixed = 0;
    for (long long a = 0; a < F.order(); ++a) {
      const auto x = static_cast<GaloisField::value_type>(a);
      if (F.frobenius(x) == x) ++fixed;
    }
    EXPECT_EQ(fixed, F.characteristic());
  }
}

TEST(GaloisField, RationalReduction) {
  GaloisField F(7);
  EXPECT_EQ(F.from_rational(mpq_class(1, 2)), 4u);
  EXPECT_EQ(F.from_rational(mpq_class(-3, 5)), F.div(F.from_int(-3), F.from_int(5)));
  EXPECT_THROW(F.from_rational(mpq_class(1, 7)), Error);
  EXPECT_THROW(GaloisField(6), Error);
}

TEST(Matrix, InverseRankKernelSolve) {
  auto g = testing_support::rng(2);
  for (const auto& F : small_fields()) {
    for (int k = 0; k < 20; ++k) {
      const std::size_t r = uniform(g, 1, 5), c = uniform(g, 1, 5);
      auto m = random_matrix(F, r, c, g, F.order());
      auto ker = kernel(m);
      EXPECT_EQ(ker.rows() + rank(m), c);
      for (std::size_t i = 0; i < ker.rows(); ++i) {
        auto v = hodgep::apply(m, ker.row(i));
        for (auto x : v) EXPECT_TRUE(F.is_zero(x));
      }
      // solve reproduces a right-hand side in the image
      std::vector<GaloisField::value_type> x(c);
      for (auto& t : x) t = F.from_int(uniform(g, 0, F.order() - 1));
      auto b = hodgep::apply(m, x);
      auto sol = solve(m, b);
      ASSERT_TRUE(sol.has_value());
      EXPECT_EQ(hodgep::apply(m, *sol), b);
      if (r == c) {
        auto inv = inverse(m);
        EXPECT_EQ(inv.has_value(), rank(m) == r);
        if (inv) {
          EXPECT_EQ((*inv) * m, (Matrix<GaloisField>::identity(F, r)));
        }
      }
    }
  }
}

TEST(Matrix, RationalInverse) {
  Rationals Q;
  auto m = Matrix<Rationals>::from_rows(Q, 2, {{2, 1}, {1, 1}});
  auto inv = inverse(m);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ((*inv)(0, 0), mpq_class(1));
  EXPECT_EQ((*inv)(0, 1), mpq_class(-1));
  EXPECT_EQ((*inv)(1, 1), mpq_class(2));
}

TEST(Subspace, DimensionFormulaForSumAndIntersection) {
  auto g = testing_support::rng(3);
  for (const auto& F : small_fields())
    for (int k = 0; k < 30; ++k) {
      const std::size_t n = uniform(g, 1, 5);
      Subspace<GaloisField> U(random_matrix(F, uniform(g, 0, n), n, g, F.order()));
      Subspace<GaloisField> W(random_matrix(F, uniform(g, 0, n), n, g, F.order()));
      auto S = U.sum(W), I = U.intersect(W);
      EXPECT_EQ(S.dim() + I.dim(), U.dim() + W.dim());
      EXPECT_TRUE(S.contains(U) && S.contains(W));
      EXPECT_TRUE(U.contains(I) && W.contains(I));
      EXPECT_EQ(U.annihilator().dim(), n - U.dim());
      // quotient basis completes the lower space to the upper one
      auto qb = quotient_basis(S, U);
      EXPECT_EQ(qb.rows(), S.dim() - U.dim());
      auto m = U.basis();
      for (std::size_t r = 0; r < qb.rows(); ++r) m.append_row(qb.row(r));
      EXPECT_TRUE(Subspace<GaloisField>(m) == S);
    }
}

TEST(Subspace, EqualityIsRepresentationIndependent) {
  GaloisField F(5);
  auto a = Matrix<GaloisField>::from_rows(F, 3, {{1, 2, 0}, {0, 1, 1}});
  auto b = Matrix<GaloisField>::from_rows(F, 3, {{1, 3, 1}, {2, 4, 0}});
  EXPECT_TRUE(Subspace<GaloisField>(a) == Subspace<GaloisField>(b));
}

TEST(SparseMatrix, AgreesWithDenseProducts) {
  auto g = testing_support::rng(4);
  GaloisField F(11);
  for (int k = 0; k < 20; ++k) {
    auto a = random_matrix(F, 4, 3, g, 11), b = random_matrix(F, 3, 5, g, 11);
    auto sa = SparseMatrix<GaloisField>::from_dense(a), sb = SparseMatrix<GaloisField>::from_dense(b);
    EXPECT_EQ((sa * sb).dense(), a * b);
    EXPECT_EQ(sa.transpose().dense(), a.transpose());
  }
}

TEST(IntegerLattice, KernelAndSaturation) {
  // x + 2y + 3z = 0 has an integer kernel of rank 2
  ZMat a{{1, 2, 3}};
  auto k = integer_kernel(a, 3);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_EQ(v[0] + 2 * v[1] + 3 * v[2], 0);
  // the span of (2, 4) saturates to the span of (1, 2)
  Rationals Q;
  auto s = saturate(Matrix<Rationals>::from_rows(Q, 2, {{2, 4}}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(abs(s[0][0]), 1);
  EXPECT_EQ(s[0][1], 2 * s[0][0]);
  auto sol = integer_solve(ZMat{{2, 0}, {0, 3}}, 2, ZVec{4, 9});
  ASSERT_TRUE(sol.has_value());
  EXPECT_EQ((*sol)[0], 2);
  EXPECT_EQ((*sol)[1], 3);
  EXPECT_FALSE(integer_solve(ZMat{{2, 0}}, 2, ZVec{3}).has_value());
}
