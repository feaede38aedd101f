#include "doctest.h"

#include "cvnf/functor.hpp"

using namespace cvnf;

namespace {

Algebra C2() { return numbered_algebra(2, "c"); }

}  // namespace

TEST_CASE("restriction concatenates fibres in ascending order") {
  Algebra b = C2();
  Algebra a = numbered_algebra(3, "a");
  Hom f(b, a, {1, 0, 1});
  Module m(a, {1, 2, 3});
  Module r = restrict_module(f, m);
  CHECK(r.alg == b);
  CHECK(r.dims == std::vector<int>{2, 4});  // fibre of b0: a1; of b1: a0, a2
}

TEST_CASE("induction copies the fibre under each atom") {
  Algebra b = C2();
  Algebra a = numbered_algebra(3, "a");
  Hom f(b, a, {1, 0, 1});
  Module m(b, {2, 5});
  CHECK(induce_module(f, m).dims == std::vector<int>{5, 2, 5});
}

TEST_CASE("res and ind compositors are unitary with consistent endpoints") {
  Algebra c = numbered_algebra(2, "x"), b = numbered_algebra(3, "y"), a = numbered_algebra(4, "z");
  Hom bhom(c, b, {0, 1, 0});  // C -> B
  Hom ahom(b, a, {2, 0, 1, 2});  // B -> A
  Module m(a, {1, 2, 1, 2});
  ModuleMap rc = res_compositor(bhom, ahom, m);
  CHECK(rc.unitarity() == 0.0);
  CHECK(rc.src == restrict_module(bhom, restrict_module(ahom, m)));
  CHECK(rc.dst == restrict_module(compose(ahom, bhom), m));

  Module n(c, {2, 3});
  ModuleMap ic = ind_compositor(ahom, bhom, n);
  CHECK(ic.unitarity() == 0.0);
  CHECK(ic.src == induce_module(ahom, induce_module(bhom, n)));
  CHECK(ic.dst == induce_module(compose(ahom, bhom), n));
}

TEST_CASE("the induction unit is the relabelling of standard modules") {
  Algebra b = C2();
  Algebra a = numbered_algebra(3, "a");
  Hom f(b, a, {0, 1, 1});
  ModuleMap u = ind_unit_iso(f);
  CHECK(u.src == induce_module(f, l2(b)));
  CHECK(u.dst == l2(a));
  CHECK(u.residual(ModuleMap::identity(u.src)) == 0.0);
}

TEST_CASE("projection isomorphism is unitary and natural") {
  Algebra b = C2();
  Algebra a = numbered_algebra(3, "a");
  Hom f(b, a, {0, 1, 0});
  Module m(a, {2, 1, 1});
  Module n(b, {1, 2});
  ModuleMap p = projection_iso(f, m, n);
  CHECK(p.unitarity() < 1e-14);
  CHECK(p.src == fuse(restrict_module(f, m), n));
  CHECK(p.dst == restrict_module(f, fuse(m, induce_module(f, n))));

  NatIso iso = projection_nat(f, m);
  Module n2(b, {2, 1});
  ComplexMatrix hb0(2, 1), hb1(1, 2);
  hb0.at(0, 0) = cd(1.0, 1.0);
  hb1.at(0, 1) = cd(-2.0, 0.5);
  ModuleMap h(n, n2, {hb0, hb1});
  CHECK(iso.naturality_residual(h) < 1e-12);
}

TEST_CASE("base change routes through Lambda and is unitary") {
  Algebra c = C2();
  Algebra a = numbered_algebra(3, "a"), b = numbered_algebra(3, "b");
  Hom f(c, a, {0, 1, 0}), g(c, b, {1, 0, 0});
  FibreSquare sq = fibre_product(f, g);
  Module m(b, {2, 1, 2});
  ModuleMap bc = base_change_iso(sq, m);
  CHECK(bc.unitarity() < 1e-14);
  CHECK(bc.src == induce_module(f, restrict_module(g, m)));
  CHECK(bc.dst == restrict_module(sq.gbar, induce_module(sq.fbar, m)));

  Module ma(a, {1, 2, 1});
  ModuleMap bct = base_change_iso_transposed(sq, ma);
  CHECK(bct.unitarity() < 1e-14);
  CHECK(bct.src == induce_module(g, restrict_module(f, ma)));
  CHECK(bct.dst == restrict_module(sq.fbar, induce_module(sq.gbar, ma)));
}

TEST_CASE("a corrupted Lambda is rejected as non-equivariant or detected") {
  Algebra c = C2();
  Algebra a = numbered_algebra(3, "a"), b = numbered_algebra(3, "b");
  Hom f(c, a, {0, 1, 0}), g(c, b, {1, 0, 0});
  FibreSquare sq = fibre_product(f, g);
  ComplexMatrix lam = lambda_matrix(sq);
  // Swap two rows living over different product atoms.
  for (int k = 0; k < lam.cols(); ++k) std::swap(lam.at(0, k), lam.at(1, k));
  Module m(b, {1, 1, 1});
  bool detected = false;
  try {
    NatIso iso = base_change_nat(sq, &lam);
    ModuleMap comp = iso.component(m);
    detected = comp.residual(base_change_iso(sq, m)) > 1e-3;
  } catch (const StructureError&) {
    detected = true;  // off-block mass caught during slicing
  }
  CHECK(detected);
}

TEST_CASE("duality structure maps are identities with the right endpoints") {
  Algebra b = C2();
  Algebra a = numbered_algebra(3, "a");
  Hom f(b, a, {0, 1, 1});
  Module m(a, {1, 2, 1});
  ModuleMap xi = xi_iso(f, m);
  CHECK(xi.residual(ModuleMap::identity(xi.src)) == 0.0);
  Module n(b, {2, 1});
  ModuleMap zeta = zeta_iso(f, n);
  CHECK(zeta.residual(ModuleMap::identity(zeta.src)) == 0.0);
}
