#include "cvnf/functor.hpp"

#include <cmath>

namespace cvnf {

Bimodule::Bimodule(Module m, Algebra g, std::vector<std::vector<int>> l)
    : mod(std::move(m)), grading(std::move(g)), labels(std::move(l)) {
  if (labels.size() != mod.dims.size()) throw DimensionError("bimodule: labels per atom");
  for (size_t i = 0; i < labels.size(); ++i) {
    if (static_cast<int>(labels[i].size()) != mod.dims[i])
      throw DimensionError("bimodule: one label per basis vector");
    for (int l_ : labels[i])
      if (l_ < 0 || l_ >= grading.size()) throw DimensionError("bimodule: label out of range");
  }
}

Bimodule unit_bimodule(const Algebra& a) {
  std::vector<std::vector<int>> labels(a.size());
  for (int i = 0; i < a.size(); ++i) labels[i] = {i};
  return Bimodule(l2(a), a, std::move(labels));
}

Bimodule trivial_bimodule(const Module& m) {
  std::vector<std::vector<int>> labels(m.dims.size());
  for (size_t i = 0; i < m.dims.size(); ++i) labels[i].assign(m.dims[i], 0);
  return Bimodule(m, scalar_algebra(), std::move(labels));
}

Module kfuse(const Bimodule& k, const Module& m) {
  if (!(k.grading == m.alg)) throw DimensionError("kfuse: grading does not match module");
  std::vector<int> dims(k.mod.dims.size(), 0);
  for (size_t i = 0; i < dims.size(); ++i)
    for (int lab : k.labels[i]) dims[i] += m.dims[lab];
  return Module(k.mod.alg, std::move(dims));
}

Module Functor::apply_module(const Module& m) const { return apply(trivial_bimodule(m)).mod; }

ModuleMap Functor::expansion(const Module& m) const {
  return interchange(unit_bimodule(dom_), m);
}

namespace {

std::vector<ComplexMatrix> identity_blocks(const Module& m) {
  std::vector<ComplexMatrix> b;
  b.reserve(m.dims.size());
  for (int d : m.dims) b.push_back(ComplexMatrix::identity(d));
  return b;
}

class IdF : public Functor {
 public:
  explicit IdF(const Algebra& a) : Functor(a, a) {}
  Bimodule apply(const Bimodule& k) const override { return k; }
  ModuleMap apply_map(const ModuleMap& h) const override { return h; }
  ModuleMap interchange(const Bimodule& k, const Module& m) const override {
    Module km = kfuse(k, m);
    return ModuleMap(km, km, identity_blocks(km));
  }
};

class ResF : public Functor {
 public:
  explicit ResF(Hom f) : Functor(f.target, f.source), f_(std::move(f)) {}

  Bimodule apply(const Bimodule& k) const override {
    if (!(k.mod.alg == dom_)) throw DimensionError("res: module over wrong algebra");
    std::vector<int> dims(cod_.size(), 0);
    std::vector<std::vector<int>> labels(cod_.size());
    for (int j = 0; j < cod_.size(); ++j)
      for (int i : f_.fibre(j)) {
        dims[j] += k.mod.dims[i];
        labels[j].insert(labels[j].end(), k.labels[i].begin(), k.labels[i].end());
      }
    return Bimodule(Module(cod_, std::move(dims)), k.grading, std::move(labels));
  }

  ModuleMap apply_map(const ModuleMap& h) const override {
    std::vector<ComplexMatrix> blocks(cod_.size());
    for (int j = 0; j < cod_.size(); ++j) {
      std::vector<ComplexMatrix> parts;
      for (int i : f_.fibre(j)) parts.push_back(h.blocks[i]);
      blocks[j] = direct_sum(parts);
    }
    return ModuleMap(apply_module(h.src), apply_module(h.dst), std::move(blocks));
  }

  ModuleMap interchange(const Bimodule& k, const Module& m) const override {
    // Concatenation over the fibre commutes with kernel fusion verbatim.
    Module km = apply_module(kfuse(k, m));
    return ModuleMap(kfuse(apply(k), m), km, identity_blocks(km));
  }

 private:
  Hom f_;
};

class IndF : public Functor {
 public:
  explicit IndF(Hom f) : Functor(f.source, f.target), f_(std::move(f)) {}

  Bimodule apply(const Bimodule& k) const override {
    if (!(k.mod.alg == dom_)) throw DimensionError("ind: module over wrong algebra");
    std::vector<int> dims(cod_.size());
    std::vector<std::vector<int>> labels(cod_.size());
    for (int i = 0; i < cod_.size(); ++i) {
      dims[i] = k.mod.dims[f_.spec[i]];
      labels[i] = k.labels[f_.spec[i]];
    }
    return Bimodule(Module(cod_, std::move(dims)), k.grading, std::move(labels));
  }

  ModuleMap apply_map(const ModuleMap& h) const override {
    std::vector<ComplexMatrix> blocks(cod_.size());
    for (int i = 0; i < cod_.size(); ++i) blocks[i] = h.blocks[f_.spec[i]];
    return ModuleMap(apply_module(h.src), apply_module(h.dst), std::move(blocks));
  }

  ModuleMap interchange(const Bimodule& k, const Module& m) const override {
    Module km = apply_module(kfuse(k, m));
    return ModuleMap(kfuse(apply(k), m), km, identity_blocks(km));
  }

 private:
  Hom f_;
};

class FuseLeftF : public Functor {
 public:
  explicit FuseLeftF(Module x) : Functor(x.alg, x.alg), x_(std::move(x)) {}

  Bimodule apply(const Bimodule& k) const override {
    std::vector<int> dims(cod_.size());
    std::vector<std::vector<int>> labels(cod_.size());
    for (int i = 0; i < cod_.size(); ++i) {
      dims[i] = x_.dims[i] * k.mod.dims[i];
      for (int x = 0; x < x_.dims[i]; ++x)
        labels[i].insert(labels[i].end(), k.labels[i].begin(), k.labels[i].end());
    }
    return Bimodule(Module(cod_, std::move(dims)), k.grading, std::move(labels));
  }

  ModuleMap apply_map(const ModuleMap& h) const override {
    std::vector<ComplexMatrix> blocks(cod_.size());
    for (int i = 0; i < cod_.size(); ++i)
      blocks[i] = kron(ComplexMatrix::identity(x_.dims[i]), h.blocks[i]);
    return ModuleMap(apply_module(h.src), apply_module(h.dst), std::move(blocks));
  }

  ModuleMap interchange(const Bimodule& k, const Module& m) const override {
    // (x, v, m) enumerates both sides in the same order.
    Module km = apply_module(kfuse(k, m));
    return ModuleMap(kfuse(apply(k), m), km, identity_blocks(km));
  }

 private:
  Module x_;
};

class FuseRightF : public Functor {
 public:
  explicit FuseRightF(Module x) : Functor(x.alg, x.alg), x_(std::move(x)) {}

  Bimodule apply(const Bimodule& k) const override {
    std::vector<int> dims(cod_.size());
    std::vector<std::vector<int>> labels(cod_.size());
    for (int i = 0; i < cod_.size(); ++i) {
      dims[i] = k.mod.dims[i] * x_.dims[i];
      for (int v = 0; v < k.mod.dims[i]; ++v)
        labels[i].insert(labels[i].end(), x_.dims[i], k.labels[i][v]);
    }
    return Bimodule(Module(cod_, std::move(dims)), k.grading, std::move(labels));
  }

  ModuleMap apply_map(const ModuleMap& h) const override {
    std::vector<ComplexMatrix> blocks(cod_.size());
    for (int i = 0; i < cod_.size(); ++i)
      blocks[i] = kron(h.blocks[i], ComplexMatrix::identity(x_.dims[i]));
    return ModuleMap(apply_module(h.src), apply_module(h.dst), std::move(blocks));
  }

  ModuleMap interchange(const Bimodule& k, const Module& m) const override {
    // Source enumerates (v, x, m); target enumerates (v, m, x).
    Module src = kfuse(apply(k), m);
    Module dst = apply_module(kfuse(k, m));
    std::vector<ComplexMatrix> blocks(cod_.size());
    for (int i = 0; i < cod_.size(); ++i) {
      int dx = x_.dims[i];
      std::vector<int> perm;
      perm.reserve(src.dims[i]);
      // Offsets of (v, m) pairs inside kfuse(k, m).
      std::vector<int> voff(k.mod.dims[i] + 1, 0);
      for (int v = 0; v < k.mod.dims[i]; ++v)
        voff[v + 1] = voff[v] + m.dims[k.labels[i][v]];
      for (int v = 0; v < k.mod.dims[i]; ++v) {
        int dm = m.dims[k.labels[i][v]];
        for (int x = 0; x < dx; ++x)
          for (int mm = 0; mm < dm; ++mm) perm.push_back((voff[v] + mm) * dx + x);
      }
      blocks[i] = ComplexMatrix::permutation(perm);
    }
    return ModuleMap(src, dst, std::move(blocks));
  }

 private:
  Module x_;
};

class ComposeF : public Functor {
 public:
  ComposeF(FunctorPtr outer, FunctorPtr inner)
      : Functor(inner->dom(), outer->cod()), outer_(std::move(outer)), inner_(std::move(inner)) {
    if (!(inner_->cod() == outer_->dom()))
      throw DimensionError("functor compose: middle algebras differ");
  }

  Bimodule apply(const Bimodule& k) const override { return outer_->apply(inner_->apply(k)); }

  ModuleMap apply_map(const ModuleMap& h) const override {
    return outer_->apply_map(inner_->apply_map(h));
  }

  ModuleMap interchange(const Bimodule& k, const Module& m) const override {
    ModuleMap inner_ic = inner_->interchange(k, m);
    ModuleMap outer_ic = outer_->interchange(inner_->apply(k), m);
    return mcompose(outer_->apply_map(inner_ic), outer_ic);
  }

 private:
  FunctorPtr outer_, inner_;
};

}  // namespace

FunctorPtr F_id(const Algebra& a) { return std::make_shared<IdF>(a); }
FunctorPtr F_res(const Hom& f) { return std::make_shared<ResF>(f); }
FunctorPtr F_ind(const Hom& f) { return std::make_shared<IndF>(f); }
FunctorPtr F_fuse_left(const Module& x) { return std::make_shared<FuseLeftF>(x); }
FunctorPtr F_fuse_right(const Module& x) { return std::make_shared<FuseRightF>(x); }
FunctorPtr F_compose(FunctorPtr outer, FunctorPtr inner) {
  return std::make_shared<ComposeF>(std::move(outer), std::move(inner));
}

NatIso::NatIso(FunctorPtr f, FunctorPtr g, ModuleMap generator)
    : F(std::move(f)), G(std::move(g)), gen(std::move(generator)) {
  if (!(F->dom() == G->dom()) || !(F->cod() == G->cod()))
    throw DimensionError("natural iso: functors have different (co)domains");
  if (!(gen.src == F->kernel().mod) || !(gen.dst == G->kernel().mod))
    throw DimensionError("natural iso: generator value has wrong endpoints");
}

ModuleMap NatIso::component(const Module& m) const {
  if (!(m.alg == F->dom())) throw DimensionError("component: module over wrong algebra");
  Bimodule kf = F->kernel(), kg = G->kernel();
  const double equiv_eps = 1e-12;
  std::vector<ComplexMatrix> blocks(F->cod().size());
  for (int i = 0; i < F->cod().size(); ++i) {
    int nv = kf.mod.dims[i], nw = kg.mod.dims[i];
    std::vector<int> coff(nv + 1, 0), roff(nw + 1, 0);
    for (int v = 0; v < nv; ++v) coff[v + 1] = coff[v] + m.dims[kf.labels[i][v]];
    for (int w = 0; w < nw; ++w) roff[w + 1] = roff[w] + m.dims[kg.labels[i][w]];
    ComplexMatrix t(roff[nw], coff[nv]);
    for (int w = 0; w < nw; ++w)
      for (int v = 0; v < nv; ++v) {
        cd gentry = gen.blocks[i].at(w, v);
        if (kg.labels[i][w] != kf.labels[i][v]) {
          if (std::abs(gentry) > equiv_eps)
            throw StructureError("generator value is not grading-equivariant");
          continue;
        }
        int d = m.dims[kf.labels[i][v]];
        for (int mm = 0; mm < d; ++mm) t.at(roff[w] + mm, coff[v] + mm) = gentry;
      }
    blocks[i] = std::move(t);
  }
  ModuleMap tmap(kfuse(kf, m), kfuse(kg, m), std::move(blocks));
  return mcompose(G->expansion(m), mcompose(tmap, F->expansion(m).dagger()));
}

double NatIso::naturality_residual(const ModuleMap& h) const {
  ModuleMap lhs = mcompose(component(h.dst), F->apply_map(h));
  ModuleMap rhs = mcompose(G->apply_map(h), component(h.src));
  return lhs.residual(rhs);
}

ModuleMap extend_by_generator(const FunctorPtr& F, const FunctorPtr& G, const ModuleMap& gen,
                              const Module& m) {
  return NatIso(F, G, gen).component(m);
}

Module restrict_module(const Hom& f, const Module& m) { return F_res(f)->apply_module(m); }
ModuleMap restrict_map(const Hom& f, const ModuleMap& h) { return F_res(f)->apply_map(h); }
Module induce_module(const Hom& f, const Module& m) { return F_ind(f)->apply_module(m); }
ModuleMap induce_map(const Hom& f, const ModuleMap& h) { return F_ind(f)->apply_map(h); }

ComplexMatrix restrict_perm(const Hom& f, const Module& m) {
  if (!(m.alg == f.target)) throw DimensionError("restrict_perm: wrong algebra");
  std::vector<int> perm(m.total());
  int pos = 0;
  for (int j = 0; j < f.source.size(); ++j)
    for (int i : f.fibre(j))
      for (int v = 0; v < m.dims[i]; ++v) perm[m.offset(i) + v] = pos++;
  return ComplexMatrix::permutation(perm);
}

ModuleMap res_compositor(const Hom& a, const Hom& b, const Module& m) {
  if (!(m.alg == b.target)) throw DimensionError("res_compositor: wrong algebra");
  Hom ba = compose(b, a);
  Module src = restrict_module(a, restrict_module(b, m));
  Module dst = restrict_module(ba, m);
  std::vector<ComplexMatrix> blocks(a.source.size());
  for (int x = 0; x < a.source.size(); ++x) {
    // Source fibre enumerates (y, z, v) with y over x, z over y; destination
    // enumerates (z, v) with z ascending.  Match via the position of z.
    std::vector<int> zs_dst = ba.fibre(x);
    std::vector<int> dst_off(m.alg.size(), -1);
    int acc = 0;
    for (int z : zs_dst) {
      dst_off[z] = acc;
      acc += m.dims[z];
    }
    std::vector<int> perm;
    perm.reserve(acc);
    for (int y : a.fibre(x))
      for (int z : b.fibre(y))
        for (int v = 0; v < m.dims[z]; ++v) perm.push_back(dst_off[z] + v);
    blocks[x] = ComplexMatrix::permutation(perm);
  }
  return ModuleMap(src, dst, std::move(blocks));
}

ModuleMap ind_compositor(const Hom& f, const Hom& g, const Module& m) {
  Module src = induce_module(f, induce_module(g, m));
  Module dst = induce_module(compose(f, g), m);
  if (!(src.dims == dst.dims)) throw StructureError("ind_compositor: fibre mismatch");
  return ModuleMap(src, dst, identity_blocks(dst));
}

ModuleMap ind_unit_iso(const Hom& f) {
  Module src = induce_module(f, l2(f.source));
  return ModuleMap(src, l2(f.target), identity_blocks(src));
}

ModuleMap ind_mult_iso(const Hom& f, const Module& m, const Module& n) {
  Module src = induce_module(f, fuse(m, n));
  Module dst = fuse(induce_module(f, m), induce_module(f, n));
  if (!(src.dims == dst.dims)) throw StructureError("ind_mult_iso: fibre mismatch");
  return ModuleMap(src, dst, identity_blocks(src));
}

NatIso projection_nat(const Hom& f, const Module& m) {
  FunctorPtr F = F_fuse_left(restrict_module(f, m));
  FunctorPtr G =
      F_compose(F_res(f), F_compose(F_fuse_left(m), F_ind(f)));
  // Generator value: res_f(M) ⊠ L^2 B -> res_f(M) -> res_f(M ⊠ L^2 A)
  //                  -> res_f(M ⊠ ind_f L^2 B), all unitors.
  ModuleMap e1 = right_unitor(restrict_module(f, m));
  ModuleMap e2 = restrict_map(f, right_unitor(m).dagger());
  ModuleMap e3 = restrict_map(f, fuse_maps(ModuleMap::identity(m), ind_unit_iso(f).dagger()));
  ModuleMap gen = mcompose(e3, mcompose(e2, e1));
  return NatIso(F, G, std::move(gen));
}

ModuleMap projection_iso(const Hom& f, const Module& m, const Module& n) {
  return projection_nat(f, m).component(n);
}

NatIso base_change_nat(const FibreSquare& sq, const ComplexMatrix* lambda_override) {
  FunctorPtr F = F_compose(F_ind(sq.f), F_res(sq.g));
  FunctorPtr G = F_compose(F_res(sq.gbar), F_ind(sq.fbar));
  // Basis bookkeeping for the generator value, as tuple enumerations of the
  // matched-pair set.  The fusion model sits in the middle; Lambda carries it
  // onto L^2 of the fibre product, which is the induced model on the right.
  int nA = sq.f.target.size(), nB = sq.g.target.size(), nC = sq.f.source.size();
  TupleSpace la = ts_leaf(nA), lb = ts_leaf(nB);
  TupleKey ka = [&](const std::vector<int>& t) { return sq.f.spec[t[0]]; };
  TupleKey kb = [&](const std::vector<int>& t) { return sq.g.spec[t[0]]; };
  TupleSpace fusion = ts_fuse(la, lb, ka, kb, nC);
  // ind_f(res_g L^2 B): A-atoms ascending, then the matched B-atoms.
  TupleSpace dom_basis;
  for (int i = 0; i < nA; ++i)
    for (int j = 0; j < nB; ++j)
      if (sq.g.spec[j] == sq.f.spec[i]) dom_basis.tuples.push_back({i, j});
  TupleSpace pair_basis = ts_star(la, lb, ka, kb);  // = res_gbar(ind_fbar L^2 B)
  ComplexMatrix lam = lambda_override ? *lambda_override : lambda_matrix(sq);
  ComplexMatrix gen_full = lam * ts_perm(dom_basis, fusion);
  ModuleMap gen = module_map_from_full(F->kernel().mod, G->kernel().mod, gen_full);
  return NatIso(F, G, std::move(gen));
}

ModuleMap base_change_iso(const FibreSquare& sq, const Module& m) {
  return base_change_nat(sq).component(m);
}

ModuleMap base_change_iso_transposed(const FibreSquare& sq, const Module& m) {
  FibreSquare sw = fibre_product(sq.g, sq.f);
  ModuleMap iso = base_change_iso(sw, m);
  // Transport along the pair swap (j,i) -> (i,j).  Both sides enumerate the
  // fibre over an atom of B by ascending A-atom, so the blocks agree verbatim.
  Module dst = restrict_module(sq.fbar, induce_module(sq.gbar, m));
  if (!(iso.dst.dims == dst.dims))
    throw StructureError("transposed base change: fibre mismatch");
  return ModuleMap(iso.src, dst, iso.blocks);
}

ModuleMap xi_iso(const Hom& f, const Module& m) {
  return ModuleMap::identity(restrict_module(f, dual_module(m)));
}

ModuleMap zeta_iso(const Hom& f, const Module& m) {
  return ModuleMap::identity(induce_module(f, dual_module(m)));
}

}  // namespace cvnf
