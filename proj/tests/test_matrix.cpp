#include "doctest.h"

#include "cvnf/matrix.hpp"

using namespace cvnf;

namespace {

// Independent quadruple-loop Kronecker oracle.
ComplexMatrix kron_oracle(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          out.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
  return out;
}

ComplexMatrix random_matrix(int r, int c, Rng& rng) {
  ComplexMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = rng.gaussian_complex();
  return m;
}

}  // namespace

TEST_CASE("kron of identities") {
  ComplexMatrix k = kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3));
  CHECK((k - ComplexMatrix::identity(6)).max_abs() == 0.0);
}

TEST_CASE("kron matches the quadruple loop") {
  Rng rng(11);
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix a = random_matrix(rng.uniform_int(1, 4), rng.uniform_int(1, 4), rng);
    ComplexMatrix b = random_matrix(rng.uniform_int(1, 4), rng.uniform_int(1, 4), rng);
    CHECK((kron(a, b) - kron_oracle(a, b)).max_abs() == doctest::Approx(0.0));
    CHECK((ref::kron(a, b) - kron_oracle(a, b)).max_abs() == 0.0);
  }
}

TEST_CASE("kron is associative (same basis order either way)") {
  Rng rng(5);
  ComplexMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng),
                c = random_matrix(2, 2, rng);
  // Entries are products of the same three scalars in a different order, so
  // the two sides agree to rounding.
  CHECK((kron(kron(a, b), c) - kron(a, kron(b, c))).max_abs() < 1e-14);
}

TEST_CASE("parallel multiply matches the serial reference") {
  Rng rng(3);
  ComplexMatrix a = random_matrix(70, 65, rng), b = random_matrix(65, 80, rng);
  CHECK((a * b - ref::mul(a, b)).max_abs() < 1e-12);
}

TEST_CASE("unitarity residual of diag(2,1) is exactly 3") {
  ComplexMatrix d(2, 2);
  d.at(0, 0) = 2.0;
  d.at(1, 1) = 1.0;
  CHECK(unitarity_residual(d) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(unitarity_residual(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("permutation matrix convention: perm[j] is the destination row") {
  ComplexMatrix p = ComplexMatrix::permutation({2, 0, 1});
  CHECK(p.at(2, 0) == cd(1.0));
  CHECK(p.at(0, 1) == cd(1.0));
  CHECK(p.at(1, 2) == cd(1.0));
  CHECK(unitarity_residual(p) == 0.0);
}

TEST_CASE("direct sum layout") {
  ComplexMatrix a = ComplexMatrix::identity(2);
  ComplexMatrix b(1, 1);
  b.at(0, 0) = 5.0;
  ComplexMatrix s = direct_sum({a, b});
  CHECK(s.rows() == 3);
  CHECK(s.at(2, 2) == cd(5.0));
  CHECK(s.at(0, 2) == cd(0.0));
}

TEST_CASE("random unitaries are unitary and deterministic in the seed") {
  Rng r1(99), r2(99);
  ComplexMatrix u1 = random_unitary(6, r1);
  ComplexMatrix u2 = random_unitary(6, r2);
  CHECK(unitarity_residual(u1) < 1e-12);
  CHECK((u1 - u2).max_abs() == 0.0);
  Rng r3(100);
  CHECK((random_unitary(6, r3) - u1).max_abs() > 1e-3);
}

TEST_CASE("rng split streams do not collide") {
  Rng base(7);
  Rng a = base.split(1), b = base.split(2);
  bool differ = false;
  for (int i = 0; i < 16; ++i) differ |= (a.next() != b.next());
  CHECK(differ);
}
