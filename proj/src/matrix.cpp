#include "cvnf/matrix.hpp"

#include <cmath>

namespace cvnf {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::permutation(const std::vector<int>& perm) {
  int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    int i = perm[j];
    if (i < 0 || i >= n || seen[i]) throw DimensionError("not a permutation");
    seen[i] = 1;
    m.at(i, j) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("add: shape mismatch");
  ComplexMatrix r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("sub: shape mismatch");
  ComplexMatrix r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

ComplexMatrix ComplexMatrix::operator*(cd scalar) const {
  ComplexMatrix r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * scalar;
  return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionError("mul: inner dimension mismatch");
  ComplexMatrix r(rows_, o.cols_);
  const long long work = 1LL * rows_ * cols_ * o.cols_;
  // i-k-j loop order keeps both reads sequential in row-major storage.
#pragma omp parallel for schedule(static) if (work > 64 * 64 * 64)
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      cd a = at(i, k);
      if (a == cd(0.0)) continue;
      const cd* brow = &o.data_[static_cast<size_t>(k) * o.cols_];
      cd* rrow = &r.data_[static_cast<size_t>(i) * o.cols_];
      for (int j = 0; j < o.cols_; ++j) rrow[j] += a * brow[j];
    }
  }
  return r;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = std::conj(data_[i]);
  return r;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cd& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const cd& v : data_) m = std::max(m, std::abs(v));
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  const long long work = 1LL * r.rows() * r.cols();
#pragma omp parallel for collapse(2) schedule(static) if (work > 256 * 256)
  for (int i1 = 0; i1 < a.rows(); ++i1) {
    for (int i2 = 0; i2 < b.rows(); ++i2) {
      for (int j1 = 0; j1 < a.cols(); ++j1) {
        cd av = a.at(i1, j1);
        if (av == cd(0.0)) continue;
        for (int j2 = 0; j2 < b.cols(); ++j2) {
          r.at(i1 * b.rows() + i2, j1 * b.cols() + j2) = av * b.at(i2, j2);
        }
      }
    }
  }
  return r;
}

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks) {
  int rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix r(rows, cols);
  int ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) r.at(ro + i, co + j) = b.at(i, j);
    ro += b.rows();
    co += b.cols();
  }
  return r;
}

double unitarity_residual(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitarity_residual: non-square");
  ComplexMatrix d = u.adjoint() * u - ComplexMatrix::identity(u.cols());
  return d.frobenius_norm();
}

double Tolerance::bound(int rows, int cols) const {
  if (!scale_by_dim) return eps;
  double n = std::sqrt(std::max(1.0, static_cast<double>(rows) * cols));
  return eps * n;
}

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).frobenius_norm() <= tol.bound(a.rows(), a.cols());
}

namespace ref {

ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("ref::mul: inner dimension mismatch");
  ComplexMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      cd s = 0.0;
      for (int k = 0; k < a.cols(); ++k) s += a.at(i, k) * b.at(k, j);
      r.at(i, j) = s;
    }
  return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      r.at(i, j) = a.at(i / b.rows(), j / b.cols()) * b.at(i % b.rows(), j % b.cols());
  return r;
}

}  // namespace ref

uint64_t Rng::next() {
  // SplitMix64 finaliser.
  state_ += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Rng Rng::split(uint64_t salt) const {
  Rng probe = *this;
  uint64_t base = probe.next();
  // Mix the salt through the same finaliser so sibling streams decorrelate.
  uint64_t z = base ^ (salt + 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  Rng child(0);
  child.state_ = z ^ (z >> 31);
  return child;
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1));
}

double Rng::gaussian() {
  // Box-Muller; offset keeps log() away from zero.
  double u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1 + 1e-300)) * std::cos(2.0 * M_PI * u2);
}

cd Rng::gaussian_complex() {
  double re = gaussian();
  double im = gaussian();
  return cd(re, im) * M_SQRT1_2;
}

ComplexMatrix random_unitary(int n, Rng& rng) {
  if (n == 0) return ComplexMatrix(0, 0);
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a.at(i, j) = rng.gaussian_complex();
  // Modified Gram-Schmidt on columns, with one reorthogonalisation pass.
  ComplexMatrix q(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<cd> v(n);
    for (int i = 0; i < n; ++i) v[i] = a.at(i, j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) {
        cd r = 0.0;
        for (int i = 0; i < n; ++i) r += std::conj(q.at(i, k)) * v[i];
        for (int i = 0; i < n; ++i) v[i] -= r * q.at(i, k);
      }
    }
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += std::norm(v[i]);
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) throw StructureError("random_unitary: degenerate Gaussian sample");
    for (int i = 0; i < n; ++i) q.at(i, j) = v[i] / nrm;
  }
  return q;
}

}  // namespace cvnf
