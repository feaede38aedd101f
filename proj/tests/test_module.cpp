#include "doctest.h"

#include "cvnf/module.hpp"

using namespace cvnf;

TEST_CASE("module layout is atom-major") {
  Module m(numbered_algebra(3, "a"), {2, 0, 3});
  CHECK(m.total() == 5);
  CHECK(m.offset(0) == 0);
  CHECK(m.offset(1) == 2);
  CHECK(m.offset(2) == 2);
}

TEST_CASE("Lambda, frozen on a hand-worked square") {
  // c0 carries atoms a0, a2 of A and atom b1 of B; c1 carries a1 and b0.
  Algebra c = numbered_algebra(2, "c");
  Algebra a = numbered_algebra(3, "a"), b = numbered_algebra(2, "b");
  Hom f(c, a, {0, 1, 0}), g(c, b, {1, 0});
  FibreSquare sq = fibre_product(f, g);
  // Fusion order (base-atom major): (a0,b1), (a2,b1) over c0, then (a1,b0).
  // Lexicographic pair order:       (a0,b1), (a1,b0), (a2,b1).
  ComplexMatrix lam = lambda_matrix(sq);
  ComplexMatrix expect = ComplexMatrix::permutation({0, 2, 1});
  CHECK((lam - expect).max_abs() == 0.0);
  CHECK(unitarity_residual(lam) == 0.0);
}

TEST_CASE("fusion dims multiply fibrewise") {
  Algebra a = numbered_algebra(2, "a");
  Module m(a, {2, 3}), n(a, {1, 2});
  Module fused = fuse(m, n);
  CHECK(fused.dims == std::vector<int>{2, 6});
}

TEST_CASE("unitors and associator are exact identities in this model") {
  Algebra a = numbered_algebra(2, "a");
  Module m(a, {2, 1}), n(a, {1, 3}), p(a, {2, 2});
  CHECK(left_unitor(m).residual(ModuleMap::identity(m)) == 0.0);
  CHECK(right_unitor(m).residual(ModuleMap::identity(m)) == 0.0);
  ModuleMap assoc = associator(m, n, p);
  CHECK(assoc.src == fuse(fuse(m, n), p));
  CHECK(assoc.dst == fuse(m, fuse(n, p)));
  CHECK(assoc.residual(ModuleMap::identity(assoc.src)) == 0.0);
}

TEST_CASE("symmetry is the fibrewise Kronecker swap") {
  Algebra a = numbered_algebra(1, "a");
  Module m(a, {2}), n(a, {3});
  ModuleMap s = symmetry(m, n);
  // Basis (i,j) of M x N goes to (j,i) of N x M.
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(s.blocks[0].at(j * 2 + i, i * 3 + j) == cd(1.0));
  ModuleMap back = mcompose(symmetry(n, m), s);
  CHECK(back.residual(ModuleMap::identity(fuse(m, n))) == 0.0);
}

TEST_CASE("slicing a full matrix detects off-block mass") {
  Algebra a = numbered_algebra(2, "a");
  Module m(a, {1, 1});
  ComplexMatrix good = ComplexMatrix::identity(2);
  ModuleMap mm = module_map_from_full(m, m, good);
  CHECK(mm.blocks.size() == 2);
  ComplexMatrix bad = good;
  bad.at(0, 1) = 0.5;  // couples the two fibres
  CHECK_THROWS_AS(module_map_from_full(m, m, bad), StructureError);
}

TEST_CASE("duality is the blockwise transpose and an involution") {
  Algebra a = numbered_algebra(2, "a");
  Module m(a, {2, 1}), n(a, {1, 2});
  ComplexMatrix b0(1, 2), b1(2, 1);
  b0.at(0, 0) = cd(1.0, 2.0);
  b0.at(0, 1) = cd(0.0, -1.0);
  b1.at(0, 0) = cd(3.0);
  b1.at(1, 0) = cd(0.0, 1.0);
  ModuleMap h(m, n, {b0, b1});
  ModuleMap d = dual_map(h);
  CHECK(d.blocks[0].at(0, 0) == cd(1.0, 2.0));  // transpose, no conjugation
  CHECK(d.blocks[0].at(1, 0) == cd(0.0, -1.0));
  CHECK(dual_map(d).residual(h) == 0.0);
}

TEST_CASE("spanning vectors have the advertised coordinates") {
  Algebra c = numbered_algebra(1, "c");
  Algebra a = numbered_algebra(2, "a"), b = numbered_algebra(2, "b");
  Hom f(c, a, {0, 0}), g(c, b, {0, 0});
  FibreSquare sq = fibre_product(f, g);
  CondExp phi(f, {4.0, 1.0}), psi(g, {9.0, 1.0});
  FusionVector v = span_vector(sq, phi, psi);
  CHECK(v.coords.size() == 4);
  CHECK(std::abs(v.coords[0] - cd(6.0)) < 1e-14);  // sqrt(4*9)
  // Lambda carries it to the square root of the tensor expectation.
  ComplexMatrix lam = lambda_matrix(sq);
  CondExp tens = tensor_ce(sq, phi, psi);
  for (int p = 0; p < sq.product.size(); ++p) {
    cd got = 0.0;
    for (int k = 0; k < 4; ++k) got += lam.at(p, k) * v.coords[k];
    CHECK(std::abs(got - cd(std::sqrt(tens.weights[p]))) < 1e-13);
  }
}
