#include "cvnf/groupoid.hpp"

#include <cmath>

namespace cvnf {

void FiniteGroupoid::validate() const {
  int na = n_arrows();
  if (static_cast<int>(tgt.size()) != na || static_cast<int>(comp.size()) != na)
    throw ValidationError("groupoid: table sizes disagree");
  if (static_cast<int>(identity.size()) != n_objects ||
      static_cast<int>(inverse.size()) != na)
    throw ValidationError("groupoid: identity/inverse sizes disagree");
  for (int a = 0; a < na; ++a) {
    if (src[a] < 0 || src[a] >= n_objects || tgt[a] < 0 || tgt[a] >= n_objects)
      throw ValidationError("groupoid: arrow endpoints out of range");
    if (static_cast<int>(comp[a].size()) != na)
      throw ValidationError("groupoid: composition table not square");
  }
  for (int x = 0; x < n_objects; ++x) {
    int e = identity[x];
    if (src[e] != x || tgt[e] != x) throw ValidationError("groupoid: identity endpoints");
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      int m = comp[a][b];
      if ((src[a] == tgt[b]) != (m >= 0))
        throw ValidationError("groupoid: composability vs table mismatch");
      if (m >= 0 && (src[m] != src[b] || tgt[m] != tgt[a]))
        throw ValidationError("groupoid: composite endpoints wrong");
    }
  for (int a = 0; a < na; ++a) {
    if (comp[a][identity[src[a]]] != a || comp[identity[tgt[a]]][a] != a)
      throw ValidationError("groupoid: identities do not act trivially");
    int i = inverse[a];
    if (src[i] != tgt[a] || tgt[i] != src[a] || comp[a][i] != identity[tgt[a]] ||
        comp[i][a] != identity[src[a]])
      throw ValidationError("groupoid: inverses wrong");
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b)
      for (int c = 0; c < na; ++c)
        if (src[a] == tgt[b] && src[b] == tgt[c] &&
            comp[comp[a][b]][c] != comp[a][comp[b][c]])
          throw ValidationError("groupoid: associativity fails");
  if (!object_weights.empty() && static_cast<int>(object_weights.size()) != n_objects)
    throw ValidationError("groupoid: object weight count");
  if (!arrow_weights.empty() && static_cast<int>(arrow_weights.size()) != na)
    throw ValidationError("groupoid: arrow weight count");
}

GroupTable cyclic_table(int n) {
  GroupTable t;
  t.n = n;
  t.e = 0;
  t.mult.assign(n, std::vector<int>(n));
  t.inv.resize(n);
  for (int a = 0; a < n; ++a) {
    t.inv[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) t.mult[a][b] = (a + b) % n;
  }
  return t;
}

GroupTable klein_table() {
  GroupTable t;
  t.n = 4;
  t.e = 0;
  t.mult.assign(4, std::vector<int>(4));
  t.inv = {0, 1, 2, 3};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t.mult[a][b] = a ^ b;
  return t;
}

GroupTable s3_table() {
  // Elements as permutations of {0,1,2}.
  std::vector<std::array<int, 3>> perms = {
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  auto index_of = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    throw StructureError("s3_table: bad permutation");
  };
  GroupTable t;
  t.n = 6;
  t.e = 0;
  t.mult.assign(6, std::vector<int>(6));
  t.inv.resize(6);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c;
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t.mult[a][b] = index_of(c);
    }
  }
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      if (t.mult[a][b] == 0) t.inv[a] = b;
  return t;
}

FiniteGroupoid group_groupoid(const GroupTable& t) {
  FiniteGroupoid g;
  g.n_objects = 1;
  g.src.assign(t.n, 0);
  g.tgt.assign(t.n, 0);
  g.comp = t.mult;
  g.identity = {t.e};
  g.inverse = t.inv;
  g.object_weights = {1.0};
  g.arrow_weights.assign(t.n, 1.0);
  g.validate();
  return g;
}

FiniteGroupoid cyclic_groupoid(int n) { return group_groupoid(cyclic_table(n)); }

FiniteGroupoid pair_groupoid(int n_points) {
  FiniteGroupoid g;
  g.n_objects = n_points;
  // Arrow (x, y) : y -> x, indexed x * n + y.
  int n = n_points;
  g.src.resize(n * n);
  g.tgt.resize(n * n);
  g.comp.assign(n * n, std::vector<int>(n * n, -1));
  g.identity.resize(n);
  g.inverse.resize(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int a = x * n + y;
      g.src[a] = y;
      g.tgt[a] = x;
      g.inverse[a] = y * n + x;
    }
  for (int x = 0; x < n; ++x) g.identity[x] = x * n + x;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) g.comp[x * n + y][y * n + z] = x * n + z;
  g.object_weights.assign(n, 1.0);
  g.arrow_weights.assign(n * n, 1.0);
  g.validate();
  return g;
}

FiniteGroupoid action_groupoid(const GroupTable& t, const std::vector<std::vector<int>>& act) {
  int nx = static_cast<int>(act.empty() ? 0 : act[0].size());
  FiniteGroupoid g;
  g.n_objects = nx;
  // Arrow (gr, x) : x -> gr.x, indexed gr * nx + x.
  g.src.resize(t.n * nx);
  g.tgt.resize(t.n * nx);
  g.comp.assign(t.n * nx, std::vector<int>(t.n * nx, -1));
  g.identity.resize(nx);
  g.inverse.resize(t.n * nx);
  for (int gr = 0; gr < t.n; ++gr)
    for (int x = 0; x < nx; ++x) {
      int a = gr * nx + x;
      g.src[a] = x;
      g.tgt[a] = act[gr][x];
      g.inverse[a] = t.inv[gr] * nx + act[gr][x];
    }
  for (int x = 0; x < nx; ++x) g.identity[x] = t.e * nx + x;
  for (int gr = 0; gr < t.n; ++gr)
    for (int h = 0; h < t.n; ++h)
      for (int x = 0; x < nx; ++x)
        g.comp[gr * nx + act[h][x]][h * nx + x] = t.mult[gr][h] * nx + x;
  g.object_weights.assign(nx, 1.0);
  g.arrow_weights.assign(t.n * nx, 1.0);
  g.validate();
  return g;
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid g;
  g.n_objects = a.n_objects + b.n_objects;
  int na = a.n_arrows(), nb = b.n_arrows();
  g.comp.assign(na + nb, std::vector<int>(na + nb, -1));
  for (int i = 0; i < na; ++i) {
    g.src.push_back(a.src[i]);
    g.tgt.push_back(a.tgt[i]);
    g.inverse.push_back(a.inverse[i]);
    for (int j = 0; j < na; ++j) g.comp[i][j] = a.comp[i][j];
  }
  for (int i = 0; i < nb; ++i) {
    g.src.push_back(b.src[i] + a.n_objects);
    g.tgt.push_back(b.tgt[i] + a.n_objects);
    g.inverse.push_back(b.inverse[i] + na);
    for (int j = 0; j < nb; ++j)
      g.comp[na + i][na + j] = b.comp[i][j] < 0 ? -1 : b.comp[i][j] + na;
  }
  g.identity = a.identity;
  for (int e : b.identity) g.identity.push_back(e + na);
  g.object_weights = a.object_weights;
  g.object_weights.insert(g.object_weights.end(), b.object_weights.begin(),
                          b.object_weights.end());
  g.arrow_weights = a.arrow_weights;
  g.arrow_weights.insert(g.arrow_weights.end(), b.arrow_weights.begin(),
                         b.arrow_weights.end());
  g.validate();
  return g;
}

NerveHoms nerve_homs(const FiniteGroupoid& g) {
  NerveHoms n;
  n.a0 = numbered_algebra(g.n_objects, "x");
  n.a1 = numbered_algebra(g.n_arrows(), "g");
  n.hs = Hom(n.a0, n.a1, g.src);
  n.ht = Hom(n.a0, n.a1, g.tgt);
  n.square1 = fibre_product(n.hs, n.ht);
  n.a2 = n.square1.product;
  n.hp = n.square1.gbar;
  n.hq = n.square1.fbar;
  std::vector<int> mspec;
  mspec.reserve(n.square1.pairs.size());
  for (auto& [a, b] : n.square1.pairs) mspec.push_back(g.comp[a][b]);
  n.hm = Hom(n.a1, n.a2, std::move(mspec));
  return n;
}

GRepresentation trivial_rep(const FiniteGroupoid& g, int rank) {
  GRepresentation r;
  r.bundle = Module(numbered_algebra(g.n_objects, "x"), std::vector<int>(g.n_objects, rank));
  r.alphas.assign(g.n_arrows(), ComplexMatrix::identity(rank));
  return r;
}

GRepresentation pullback_rep(const FiniteGroupoid& g, int rank) { return trivial_rep(g, rank); }

GRepresentation regular_rep(const FiniteGroupoid& g) {
  NerveHoms n = nerve_homs(g);
  Module l2a1 = l2(n.a1);
  // First square: (source, target); base change carries s-pullback of the
  // t-pushforward onto the composable-pair picture.
  ModuleMap bc1 = base_change_iso(n.square1, l2a1);
  // Second square: (target, target); its base change holds the t-pullback.
  FibreSquare sq2 = fibre_product(n.ht, n.ht);
  ModuleMap bc2 = base_change_iso(sq2, l2a1);
  // Composition glues the two pictures: within the fibre over an arrow a the
  // pair (a, b) goes to (a, a∘b).
  std::vector<ComplexMatrix> tb(g.n_arrows());
  for (int a = 0; a < g.n_arrows(); ++a) {
    std::vector<int> dom = n.square1.f.fibre(a);  // not used; keep fibre order via pairs
    (void)dom;
    std::vector<int> bs, cs;
    for (size_t p = 0; p < n.square1.pairs.size(); ++p)
      if (n.square1.pairs[p].first == a) bs.push_back(n.square1.pairs[p].second);
    for (size_t q = 0; q < sq2.pairs.size(); ++q)
      if (sq2.pairs[q].first == a) cs.push_back(sq2.pairs[q].second);
    std::vector<int> perm(bs.size());
    for (size_t i = 0; i < bs.size(); ++i) {
      int cgoal = g.comp[a][bs[i]];
      int at = -1;
      for (size_t j = 0; j < cs.size(); ++j)
        if (cs[j] == cgoal) at = static_cast<int>(j);
      if (at < 0) throw StructureError("regular_rep: composite escaped the fibre");
      perm[i] = at;
    }
    tb[a] = ComplexMatrix::permutation(perm);
  }
  ModuleMap t(bc1.dst, bc2.dst, std::move(tb));
  ModuleMap lam = mcompose(bc2.dagger(), mcompose(t, bc1));
  GRepresentation r;
  r.bundle = restrict_module(n.ht, l2a1);  // fibre over x: arrows into x
  r.alphas = lam.blocks;
  return r;
}

GRepresentation tensor_reps(const FiniteGroupoid& g, const GRepresentation& r1,
                            const GRepresentation& r2) {
  GRepresentation r;
  r.bundle = fuse(r1.bundle, r2.bundle);
  r.alphas.reserve(g.n_arrows());
  for (int a = 0; a < g.n_arrows(); ++a) r.alphas.push_back(kron(r1.alphas[a], r2.alphas[a]));
  return r;
}

GRepresentation direct_sum_reps(const FiniteGroupoid& g, const GRepresentation& r1,
                                const GRepresentation& r2) {
  GRepresentation r;
  std::vector<int> dims(g.n_objects);
  for (int x = 0; x < g.n_objects; ++x) dims[x] = r1.bundle.dims[x] + r2.bundle.dims[x];
  r.bundle = Module(r1.bundle.alg, std::move(dims));
  for (int a = 0; a < g.n_arrows(); ++a)
    r.alphas.push_back(direct_sum({r1.alphas[a], r2.alphas[a]}));
  return r;
}

GRepresentation coboundary_twist(const FiniteGroupoid& g, const GRepresentation& r, Rng& rng) {
  std::vector<ComplexMatrix> u(g.n_objects);
  for (int x = 0; x < g.n_objects; ++x) u[x] = random_unitary(r.bundle.dims[x], rng);
  GRepresentation out;
  out.bundle = r.bundle;
  out.alphas.reserve(g.n_arrows());
  for (int a = 0; a < g.n_arrows(); ++a)
    out.alphas.push_back(u[g.tgt[a]] * r.alphas[a] * u[g.src[a]].adjoint());
  return out;
}

GRepresentation cyclic_character_rep(int n, int k) {
  FiniteGroupoid g = cyclic_groupoid(n);
  GRepresentation r = trivial_rep(g, 1);
  for (int a = 0; a < n; ++a)
    r.alphas[a].at(0, 0) = std::polar(1.0, 2.0 * M_PI * k * a / n);
  return r;
}

GRepresentation s3_two_dim_rep() {
  // The two-dimensional irreducible representation, with the transposition
  // (01) as a reflection and the 3-cycles as rotations by 2*pi/3.
  GroupTable t = s3_table();
  FiniteGroupoid g = group_groupoid(t);
  GRepresentation r = trivial_rep(g, 2);
  const double c = -0.5, s = std::sqrt(3.0) / 2.0;
  auto mat = [&](double a11, double a12, double a21, double a22) {
    ComplexMatrix m(2, 2);
    m.at(0, 0) = a11;
    m.at(0, 1) = a12;
    m.at(1, 0) = a21;
    m.at(1, 1) = a22;
    return m;
  };
  // Elements (see s3_table): 0:id 1:(01) 2:(12) 3:(02) 4:(012) 5:(021).
  ComplexMatrix rot = mat(c, -s, s, c);       // order-3 rotation
  ComplexMatrix refl = mat(1, 0, 0, -1);      // reflection for (01)
  std::vector<ComplexMatrix> im(6, ComplexMatrix::identity(2));
  im[4] = rot;
  im[5] = rot * rot;
  im[1] = refl;
  im[2] = refl * rot;   // another transposition
  im[3] = refl * rot * rot;
  // Assign consistently with the multiplication table by brute force: find
  // the assignment of {refl*rot^k} to transpositions that is a homomorphism.
  // The choice above matches the table built from permutation composition;
  // validated by the cocycle residual below.
  r.alphas = im;
  double res = rep_cocycle_residual(g, r);
  if (res > 1e-9) {
    std::swap(r.alphas[2], r.alphas[3]);
    if (rep_cocycle_residual(g, r) > 1e-9)
      throw StructureError("s3 representation does not match the table");
  }
  return r;
}

double rep_cocycle_residual(const FiniteGroupoid& g, const GRepresentation& r) {
  double res = 0.0;
  for (int x = 0; x < g.n_objects; ++x) {
    int e = g.identity[x];
    res = std::max(
        res, (r.alphas[e] - ComplexMatrix::identity(r.bundle.dims[x])).frobenius_norm());
  }
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int b = 0; b < g.n_arrows(); ++b) {
      if (g.src[a] != g.tgt[b]) continue;
      res = std::max(res,
                     (r.alphas[g.comp[a][b]] - r.alphas[a] * r.alphas[b]).frobenius_norm());
    }
  return res;
}

double rep_unitarity(const FiniteGroupoid& g, const GRepresentation& r) {
  double res = 0.0;
  for (int a = 0; a < g.n_arrows(); ++a) {
    const ComplexMatrix& m = r.alphas[a];
    if (m.rows() != r.bundle.dims[g.tgt[a]] || m.cols() != r.bundle.dims[g.src[a]])
      throw ValidationError("representation: cocycle block has wrong shape");
    ComplexMatrix d = m.adjoint() * m - ComplexMatrix::identity(m.cols());
    res = std::max(res, d.frobenius_norm());
  }
  return res;
}

cd rep_character(const FiniteGroupoid& g, const GRepresentation& r, int arrow) {
  if (g.src[arrow] != g.tgt[arrow])
    throw DimensionError("character: arrow is not an endomorphism");
  cd tr = 0.0;
  for (int i = 0; i < r.alphas[arrow].rows(); ++i) tr += r.alphas[arrow].at(i, i);
  return tr;
}

FellResult fell_iso(const FiniteGroupoid& g, const GRepresentation& r) {
  int rank = r.bundle.dims.empty() ? 0 : r.bundle.dims[0];
  for (int d : r.bundle.dims)
    if (d != rank) throw ValidationError("fell_iso: needs a constant-rank bundle");
  NerveHoms n = nerve_homs(g);
  Module l2a1 = l2(n.a1);
  Module h = r.bundle;                           // pullback bundle over the objects
  Module treg = restrict_module(n.ht, l2a1);     // t_! bundle
  // H ⊗ t_! −> t_!(𝟙 ⊗ t-pullback H) via symmetry, projection, unitor.
  ModuleMap r1 = symmetry(h, treg);
  ModuleMap r2 = projection_iso(n.ht, l2a1, h);
  Module ind_h = induce_module(n.ht, h);
  ModuleMap r3 = restrict_map(n.ht, left_unitor(ind_h));
  ModuleMap route = mcompose(r3, mcompose(r2, r1));
  // The cocycle acting fibrewise over the arrows (constant rank makes the
  // s- and t-pullback bundles literally equal).
  ModuleMap alpha(ind_h, ind_h, r.alphas);
  ModuleMap mid = restrict_map(n.ht, alpha);
  ModuleMap u = mcompose(route.dagger(), mcompose(mid, route));

  FellResult out;
  out.unitarity = u.unitarity();
  GRepresentation reg = regular_rep(g);
  GRepresentation twisted = tensor_reps(g, r, reg);
  GRepresentation flat = tensor_reps(g, trivial_rep(g, rank), reg);
  double res = 0.0;
  // u intertwines the untwisted side into the twisted one: applying the
  // cocycle pointwise over the arrow space turns plain translation into the
  // twisted translation.
  for (int a = 0; a < g.n_arrows(); ++a) {
    ComplexMatrix lhs = u.blocks[g.tgt[a]] * flat.alphas[a];
    ComplexMatrix rhs = twisted.alphas[a] * u.blocks[g.src[a]];
    res = std::max(res, (lhs - rhs).frobenius_norm());
  }
  out.intertwine = res;
  out.u = std::move(u);
  return out;
}

std::vector<RankPart> decompose_by_rank(const FiniteGroupoid& g, const GRepresentation& r) {
  // Orbits via union-find over arrows.
  std::vector<int> parent(g.n_objects);
  for (int i = 0; i < g.n_objects; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (int a = 0; a < g.n_arrows(); ++a) parent[find(g.src[a])] = find(g.tgt[a]);
  std::vector<std::vector<int>> orbits(g.n_objects);
  for (int x = 0; x < g.n_objects; ++x) orbits[find(x)].push_back(x);
  std::map<int, std::vector<int>> by_rank;
  for (auto& orb : orbits) {
    if (orb.empty()) continue;
    int rank = r.bundle.dims[orb[0]];
    for (int x : orb)
      if (r.bundle.dims[x] != rank)
        throw ValidationError("rank is not constant on an orbit");
    auto& part = by_rank[rank];
    part.insert(part.end(), orb.begin(), orb.end());
  }
  std::vector<RankPart> out;
  for (auto& [rank, objs] : by_rank) {
    std::sort(objs.begin(), objs.end());
    out.push_back({rank, objs});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Property suite over a deterministic corpus.
// ---------------------------------------------------------------------------

namespace {

struct CorpusEntry {
  std::string name;
  FiniteGroupoid gpd;
};

std::vector<CorpusEntry> corpus() {
  std::vector<CorpusEntry> out;
  for (int n : {1, 2, 3, 4, 6, 8}) out.push_back({"cyclic" + std::to_string(n), cyclic_groupoid(n)});
  out.push_back({"s3", group_groupoid(s3_table())});
  for (int k : {2, 3, 5}) out.push_back({"pair" + std::to_string(k), pair_groupoid(k)});
  // Regular actions: the group acting on itself by left translation.
  for (auto& [nm, tb] : std::vector<std::pair<std::string, GroupTable>>{
           {"act-z2", cyclic_table(2)}, {"act-z3", cyclic_table(3)},
           {"act-z4", cyclic_table(4)}, {"act-klein", klein_table()}}) {
    std::vector<std::vector<int>> act(tb.n, std::vector<int>(tb.n));
    for (int a = 0; a < tb.n; ++a)
      for (int x = 0; x < tb.n; ++x) act[a][x] = tb.mult[a][x];
    out.push_back({nm, action_groupoid(tb, act)});
  }
  return out;
}

GRepresentation maybe_perturb(const SuiteConfig& cfg, const FiniteGroupoid& g,
                              GRepresentation r) {
  if (cfg.mutate != Mutation::Cocycle) return r;
  for (int a = 0; a < g.n_arrows(); ++a) {
    bool is_id = false;
    for (int x = 0; x < g.n_objects; ++x) is_id |= (g.identity[x] == a);
    if (!is_id && r.alphas[a].rows() > 0) {
      r.alphas[a] = r.alphas[a] * std::polar(1.0, 0.1);
      break;
    }
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_groupoid_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> out;
  auto entries = corpus();
  int trial = 0;
  auto push = [&](const std::string& id, const std::string& note, double residual) {
    CheckResult r;
    r.id = id;
    r.trial = trial++;
    r.residual = residual;
    r.residual_gen = residual;
    r.passed = residual <= cfg.tol.eps;
    r.note = note;
    out.push_back(std::move(r));
  };

  for (auto& [name, g] : entries) {
    Rng rng = Rng(cfg.seed).split(std::hash<std::string>{}(name));
    try {
      g.validate();
      GRepresentation reg = maybe_perturb(cfg, g, regular_rep(g));
      push("gpd-cocycle", name, rep_cocycle_residual(g, reg));
      push("gpd-unitary", name, rep_unitarity(g, reg));
      // Character oracle for the regular representation: |t^{-1}(x)| at the
      // identities, 0 at every other endo-arrow.
      double cres = 0.0;
      for (int a = 0; a < g.n_arrows(); ++a) {
        if (g.src[a] != g.tgt[a]) continue;
        double expect = 0.0;
        if (a == g.identity[g.src[a]]) {
          for (int b = 0; b < g.n_arrows(); ++b)
            if (g.tgt[b] == g.src[a]) expect += 1.0;
        }
        cres = std::max(cres, std::abs(rep_character(g, reg, a) - cd(expect)));
      }
      push("gpd-regular-char", name, cres);

      // Representation corpus for Fell absorption.
      std::vector<std::pair<std::string, GRepresentation>> reps;
      reps.emplace_back("triv1", trivial_rep(g, 1));
      reps.emplace_back("triv2", trivial_rep(g, 2));
      int n_random = std::max(1, cfg.trials / 8);
      for (int t = 0; t < n_random; ++t) {
        Rng sub = rng.split(t);
        int rank = sub.uniform_int(1, 3);
        reps.emplace_back("twist" + std::to_string(t),
                          coboundary_twist(g, trivial_rep(g, rank), sub));
      }
      if (name.rfind("cyclic", 0) == 0 && g.n_arrows() > 1) {
        int n = g.n_arrows();
        reps.emplace_back("char1", cyclic_character_rep(n, 1));
        Rng sub = rng.split(999);
        reps.emplace_back("char-sum",
                          coboundary_twist(g, direct_sum_reps(g, cyclic_character_rep(n, 1),
                                                              cyclic_character_rep(n, n / 2)),
                                           sub));
      }
      if (name == "s3") reps.emplace_back("std2", s3_two_dim_rep());

      for (auto& [rname, rep0] : reps) {
        GRepresentation rep = maybe_perturb(cfg, g, rep0);
        std::string note = name + "/" + rname;
        push("gpd-rep-cocycle", note, rep_cocycle_residual(g, rep));
        FellResult fr = fell_iso(g, rep);
        push("fell-unitary", note, fr.unitarity);
        push("fell-intertwine", note, fr.intertwine);
        // Character oracle: the twisted and flat characters agree at every
        // endo-arrow (both vanish away from identities after tensoring).
        GRepresentation tw = tensor_reps(g, rep, regular_rep(g));
        GRepresentation fl = tensor_reps(g, trivial_rep(g, rep.bundle.dims[0]), regular_rep(g));
        double chres = 0.0;
        for (int a = 0; a < g.n_arrows(); ++a) {
          if (g.src[a] != g.tgt[a]) continue;
          chres = std::max(chres,
                           std::abs(rep_character(g, tw, a) - rep_character(g, fl, a)));
        }
        push("fell-character", note, chres);
      }

      // The measure class never enters: rebuilding with different weights
      // yields bit-identical structure maps.
      {
        FiniteGroupoid g2 = g;
        Rng wrng = rng.split(1234);
        for (auto& w : g2.object_weights) w = wrng.uniform(0.1, 2.0);
        for (auto& w : g2.arrow_weights) w = wrng.uniform(0.1, 2.0);
        GRepresentation rw = trivial_rep(g2, 2);
        Rng twrng1 = rng.split(777), twrng2 = rng.split(777);
        GRepresentation ra = coboundary_twist(g, trivial_rep(g, 2), twrng1);
        GRepresentation rb = coboundary_twist(g2, rw, twrng2);
        FellResult fa = fell_iso(g, ra);
        FellResult fb = fell_iso(g2, rb);
        double diff = fa.u.residual(fb.u);
        push("gpd-measure-class", name, diff);
      }
    } catch (const Error& e) {
      push("gpd-error", std::string(name) + ": " + e.what(), 1.0);
    }
  }

  // Rank decomposition over a mixed-rank groupoid.
  try {
    FiniteGroupoid g = disjoint_union(pair_groupoid(2), cyclic_groupoid(3));
    GRepresentation r = trivial_rep(g, 1);
    r.bundle = Module(r.bundle.alg, {2, 2, 3});
    r.alphas.clear();
    for (int a = 0; a < g.n_arrows(); ++a)
      r.alphas.push_back(ComplexMatrix::identity(a < 4 ? 2 : 3));
    auto parts = decompose_by_rank(g, r);
    bool ok = parts.size() == 2 && parts[0].rank == 2 && parts[0].objects == std::vector<int>{0, 1} &&
              parts[1].rank == 3 && parts[1].objects == std::vector<int>{2};
    push("gpd-rank-decompose", "pair2+cyclic3", ok ? 0.0 : 1.0);
  } catch (const Error& e) {
    push("gpd-rank-decompose", e.what(), 1.0);
  }

  return out;
}

}  // namespace cvnf
