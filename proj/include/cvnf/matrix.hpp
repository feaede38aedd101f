#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvnf {

using cd = std::complex<double>;

/// Error hierarchy. Everything thrown by this library derives from Error, so
/// callers (notably the CLI) can map failures to stable exit codes.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
/// A structural invariant of the formalism failed (e.g. a generator map that
/// is not grading-equivariant).  Distinct from a numerical check failing.
struct StructureError : Error {
  using Error::Error;
};
/// Bad user-supplied data (documents, weights, groupoid tables).
struct ValidationError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

/// Dense row-major complex matrix.  Deliberately minimal: the whole engine is
/// built from products, Kroneckers and direct sums of small blocks, so a thin
/// type with unambiguous storage beats a general-purpose library here.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
  }

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }
  /// Permutation matrix sending basis vector j to basis vector perm[j].
  static ComplexMatrix permutation(const std::vector<int>& perm);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  cd& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const cd& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<cd>& data() { return data_; }
  const std::vector<cd>& data() const { return data_; }

  ComplexMatrix operator+(const ComplexMatrix& o) const;
  ComplexMatrix operator-(const ComplexMatrix& o) const;
  ComplexMatrix operator*(const ComplexMatrix& o) const;  // OpenMP above a size threshold
  ComplexMatrix operator*(cd scalar) const;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  double frobenius_norm() const;
  double max_abs() const;
  bool operator==(const ComplexMatrix& o) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<cd> data_;
};

/// Kronecker product in row-major convention:
/// (A⊗B)[i1*rB+i2, j1*cB+j2] = A[i1,j1] * B[i2,j2].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Block-diagonal stacking; direct_sum({}) is the 0x0 matrix.
ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks);

/// ||U*U - I||_F.  Throws DimensionError on non-square input.
double unitarity_residual(const ComplexMatrix& u);

struct Tolerance {
  double eps = 1e-10;
  /// When set, comparisons scale eps by sqrt(rows*cols) so large composites
  /// are not penalised for accumulated roundoff.
  bool scale_by_dim = false;
  double bound(int rows, int cols) const;
};

bool approx_eq(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerance& tol);

/// Serial reference kernels.  Kept deliberately naive; tests cross-check the
/// parallel paths against these, and tools/bench compares their throughput.
namespace ref {
ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
}  // namespace ref

/// Splittable deterministic RNG (SplitMix64 core).  Child streams derived via
/// split() are independent of the order in which siblings are consumed, which
/// is what makes the parallel property-test suites reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ULL + 0x1ULL) {}

  uint64_t next();
  Rng split(uint64_t salt) const;

  double uniform();                  // [0,1)
  double uniform(double lo, double hi);
  int uniform_int(int lo, int hi);   // inclusive bounds
  double gaussian();
  cd gaussian_complex();

 private:
  uint64_t state_;
};

/// Haar-distributed unitary via Gram-Schmidt QR of a complex Gaussian matrix
/// (modified Gram-Schmidt with reorthogonalisation; the positive-diagonal R
/// normalisation makes the distribution exactly Haar).
ComplexMatrix random_unitary(int n, Rng& rng);

}  // namespace cvnf
