#include "cvnf/module.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cvnf {

Module::Module(Algebra a, std::vector<int> d) : alg(std::move(a)), dims(std::move(d)) {
  if (static_cast<int>(dims.size()) != alg.size())
    throw DimensionError("module: one fibre dimension per atom required");
  for (int x : dims)
    if (x < 0) throw DimensionError("module: negative fibre dimension");
}

int Module::total() const { return std::accumulate(dims.begin(), dims.end(), 0); }

int Module::offset(int atom) const {
  return std::accumulate(dims.begin(), dims.begin() + atom, 0);
}

Module l2(const Algebra& a) { return Module(a, std::vector<int>(a.size(), 1)); }

ModuleMap::ModuleMap(Module s, Module d, std::vector<ComplexMatrix> b)
    : src(std::move(s)), dst(std::move(d)), blocks(std::move(b)) {
  if (!(src.alg == dst.alg)) throw DimensionError("module map: different base algebras");
  if (static_cast<int>(blocks.size()) != src.alg.size())
    throw DimensionError("module map: one block per atom required");
  for (int i = 0; i < src.alg.size(); ++i)
    if (blocks[i].rows() != dst.dims[i] || blocks[i].cols() != src.dims[i])
      throw DimensionError("module map: block shape mismatch at atom " +
                           src.alg.atoms[i]);
}

ModuleMap ModuleMap::identity(const Module& m) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(m.dims.size());
  for (int d : m.dims) blocks.push_back(ComplexMatrix::identity(d));
  return ModuleMap(m, m, std::move(blocks));
}

ModuleMap ModuleMap::dagger() const {
  std::vector<ComplexMatrix> b;
  b.reserve(blocks.size());
  for (const auto& m : blocks) b.push_back(m.adjoint());
  return ModuleMap(dst, src, std::move(b));
}

ComplexMatrix ModuleMap::full() const { return direct_sum(blocks); }

double ModuleMap::residual(const ModuleMap& o) const {
  if (!(src == o.src) || !(dst == o.dst))
    throw DimensionError("residual: maps between different modules");
  double s = 0.0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    double r = (blocks[i] - o.blocks[i]).frobenius_norm();
    s += r * r;
  }
  return std::sqrt(s);
}

double ModuleMap::unitarity() const {
  double s = 0.0;
  for (const auto& b : blocks) {
    if (b.rows() != b.cols()) return 1.0 / 0.0;
    double r = unitarity_residual(b);
    s += r * r;
  }
  return std::sqrt(s);
}

ModuleMap mcompose(const ModuleMap& a, const ModuleMap& b) {
  if (!(b.dst == a.src)) throw DimensionError("mcompose: middle modules differ");
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(a.blocks.size());
  for (size_t i = 0; i < a.blocks.size(); ++i) blocks.push_back(a.blocks[i] * b.blocks[i]);
  return ModuleMap(b.src, a.dst, std::move(blocks));
}

ModuleMap module_map_from_full(const Module& src, const Module& dst, const ComplexMatrix& m,
                               double eps) {
  if (m.rows() != dst.total() || m.cols() != src.total())
    throw DimensionError("module_map_from_full: matrix does not match modules");
  std::vector<ComplexMatrix> blocks;
  double off = 0.0;
  for (int a = 0; a < src.alg.size(); ++a) {
    ComplexMatrix blk(dst.dims[a], src.dims[a]);
    int ro = dst.offset(a), co = src.offset(a);
    for (int i = 0; i < blk.rows(); ++i)
      for (int j = 0; j < blk.cols(); ++j) blk.at(i, j) = m.at(ro + i, co + j);
    blocks.push_back(std::move(blk));
  }
  // Anything outside the diagonal blocks means the matrix is not A-linear.
  ComplexMatrix rebuilt = direct_sum(blocks);
  off = (rebuilt - m).frobenius_norm();
  if (off > eps)
    throw StructureError("module_map_from_full: matrix is not grading-diagonal (residual " +
                         std::to_string(off) + ")");
  return ModuleMap(src, dst, std::move(blocks));
}

Module fuse(const Module& m, const Module& n) {
  if (!(m.alg == n.alg)) throw DimensionError("fuse: different base algebras");
  std::vector<int> dims(m.dims.size());
  for (size_t i = 0; i < dims.size(); ++i) dims[i] = m.dims[i] * n.dims[i];
  return Module(m.alg, std::move(dims));
}

ModuleMap fuse_maps(const ModuleMap& h, const ModuleMap& k) {
  if (!(h.src.alg == k.src.alg)) throw DimensionError("fuse_maps: different base algebras");
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(h.blocks.size());
  for (size_t i = 0; i < h.blocks.size(); ++i) blocks.push_back(kron(h.blocks[i], k.blocks[i]));
  return ModuleMap(fuse(h.src, k.src), fuse(h.dst, k.dst), std::move(blocks));
}

ModuleMap left_unitor(const Module& m) {
  // Fibres of L^2(A) ⊠ M and M have equal dimension and the bases coincide.
  std::vector<ComplexMatrix> blocks;
  for (int d : m.dims) blocks.push_back(ComplexMatrix::identity(d));
  return ModuleMap(fuse(l2(m.alg), m), m, std::move(blocks));
}

ModuleMap right_unitor(const Module& m) {
  std::vector<ComplexMatrix> blocks;
  for (int d : m.dims) blocks.push_back(ComplexMatrix::identity(d));
  return ModuleMap(fuse(m, l2(m.alg)), m, std::move(blocks));
}

ModuleMap associator(const Module& m, const Module& n, const Module& p) {
  // Row-major Kronecker indexing is strictly associative.
  Module lhs = fuse(fuse(m, n), p), rhs = fuse(m, fuse(n, p));
  std::vector<ComplexMatrix> blocks;
  for (int d : lhs.dims) blocks.push_back(ComplexMatrix::identity(d));
  return ModuleMap(lhs, rhs, std::move(blocks));
}

ModuleMap symmetry(const Module& m, const Module& n) {
  std::vector<ComplexMatrix> blocks;
  for (size_t a = 0; a < m.dims.size(); ++a) {
    int dm = m.dims[a], dn = n.dims[a];
    std::vector<int> perm(dm * dn);
    for (int i = 0; i < dm; ++i)
      for (int j = 0; j < dn; ++j) perm[i * dn + j] = j * dm + i;
    blocks.push_back(ComplexMatrix::permutation(perm));
  }
  return ModuleMap(fuse(m, n), fuse(n, m), std::move(blocks));
}

Module dual_module(const Module& m) { return m; }

ModuleMap dual_map(const ModuleMap& h) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(h.blocks.size());
  for (const auto& b : h.blocks) blocks.push_back(b.transpose());
  return ModuleMap(dual_module(h.dst), dual_module(h.src), std::move(blocks));
}

int TupleSpace::index_of(const std::vector<int>& t) const {
  for (size_t i = 0; i < tuples.size(); ++i)
    if (tuples[i] == t) return static_cast<int>(i);
  return -1;
}

TupleSpace ts_leaf(int n_atoms) {
  TupleSpace ts;
  for (int i = 0; i < n_atoms; ++i) ts.tuples.push_back({i});
  return ts;
}

static std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

TupleSpace ts_fuse(const TupleSpace& x, const TupleSpace& y, const TupleKey& kx,
                   const TupleKey& ky, int n_base) {
  TupleSpace out;
  for (int k = 0; k < n_base; ++k)
    for (const auto& tx : x.tuples) {
      if (kx(tx) != k) continue;
      for (const auto& ty : y.tuples)
        if (ky(ty) == k) out.tuples.push_back(concat(tx, ty));
    }
  return out;
}

TupleSpace ts_star(const TupleSpace& x, const TupleSpace& y, const TupleKey& kx,
                   const TupleKey& ky) {
  TupleSpace out;
  for (const auto& tx : x.tuples)
    for (const auto& ty : y.tuples)
      if (kx(tx) == ky(ty)) out.tuples.push_back(concat(tx, ty));
  return out;
}

TupleSpace ts_regrade(const TupleSpace& x, const TupleKey& key) {
  TupleSpace out = x;
  std::stable_sort(out.tuples.begin(), out.tuples.end(),
                   [&](const auto& a, const auto& b) { return key(a) < key(b); });
  return out;
}

ComplexMatrix ts_perm(const TupleSpace& from, const TupleSpace& to) {
  if (from.dim() != to.dim()) throw DimensionError("ts_perm: different dimensions");
  std::vector<int> perm(from.dim());
  for (int j = 0; j < from.dim(); ++j) {
    int i = to.index_of(from.tuples[j]);
    if (i < 0) throw StructureError("ts_perm: tuple sets differ");
    perm[j] = i;
  }
  return ComplexMatrix::permutation(perm);
}

Module fusion_of_l2(const FibreSquare& sq) {
  Algebra c = sq.f.source;
  std::vector<int> dims(c.size(), 0);
  for (auto& [i, j] : sq.pairs) dims[sq.f.spec[i]] += 1;
  return Module(c, std::move(dims));
}

ComplexMatrix lambda_matrix(const FibreSquare& sq) {
  TupleSpace la = ts_leaf(sq.f.target.size());
  TupleSpace lb = ts_leaf(sq.g.target.size());
  TupleKey ka = [&](const std::vector<int>& t) { return sq.f.spec[t[0]]; };
  TupleKey kb = [&](const std::vector<int>& t) { return sq.g.spec[t[0]]; };
  TupleSpace fus = ts_fuse(la, lb, ka, kb, sq.f.source.size());
  TupleSpace pairs = ts_star(la, lb, ka, kb);
  return ts_perm(fus, pairs);
}

FusionVector span_vector(const FibreSquare& sq, const CondExp& phi, const CondExp& psi) {
  if (!(phi.hom.target == sq.f.target) || !(psi.hom.target == sq.g.target))
    throw DimensionError("span_vector: expectations do not match the square");
  FusionVector v;
  v.sq = sq;
  v.space = fusion_of_l2(sq);
  v.coords.resize(v.space.total());
  // Enumerate the fusion basis: base atom ascending, then (i, j) pairs.
  int pos = 0;
  for (int k = 0; k < sq.f.source.size(); ++k)
    for (int i = 0; i < sq.f.target.size(); ++i) {
      if (sq.f.spec[i] != k) continue;
      for (int j = 0; j < sq.g.target.size(); ++j) {
        if (sq.g.spec[j] != k) continue;
        v.coords[pos++] = std::sqrt(phi.weights[i] * psi.weights[j]);
      }
    }
  return v;
}

}  // namespace cvnf
