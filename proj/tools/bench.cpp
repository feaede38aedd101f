// Micro-benchmark: the OpenMP matrix kernels against the serial reference
// implementations, plus the property suite run serially and in parallel.

#include <chrono>
#include <iostream>

#include "cvnf/coherence.hpp"

using namespace cvnf;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

ComplexMatrix random_matrix(int n, Rng& rng) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = rng.gaussian_complex();
  return m;
}

}  // namespace

int main() {
  Rng rng(7);

  for (int n : {64, 128, 256, 384}) {
    ComplexMatrix a = random_matrix(n, rng);
    ComplexMatrix b = random_matrix(n, rng);
    auto t0 = std::chrono::steady_clock::now();
    ComplexMatrix c1 = a * b;
    double t_par = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    ComplexMatrix c2 = ref::mul(a, b);
    double t_ser = ms_since(t0);
    std::cout << "mul n=" << n << "  parallel " << t_par << " ms  serial " << t_ser
              << " ms  max diff " << (c1 - c2).max_abs() << "\n";
  }

  for (int n : {16, 24, 32}) {
    ComplexMatrix a = random_matrix(n, rng);
    ComplexMatrix b = random_matrix(n, rng);
    auto t0 = std::chrono::steady_clock::now();
    ComplexMatrix k1 = kron(a, b);
    double t_par = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    ComplexMatrix k2 = ref::kron(a, b);
    double t_ser = ms_since(t0);
    std::cout << "kron n=" << n << "  parallel " << t_par << " ms  serial " << t_ser
              << " ms  max diff " << (k1 - k2).max_abs() << "\n";
  }

  SuiteConfig cfg;
  cfg.trials = 30;
  cfg.parallel = true;
  auto t0 = std::chrono::steady_clock::now();
  CoherenceReport rp = run_all(cfg);
  double t_par = ms_since(t0);
  cfg.parallel = false;
  t0 = std::chrono::steady_clock::now();
  CoherenceReport rs = run_all(cfg);
  double t_ser = ms_since(t0);
  std::cout << "suite  parallel " << t_par << " ms (passed " << rp.all_passed()
            << ")  serial " << t_ser << " ms (passed " << rs.all_passed() << ")\n";
  return rp.all_passed() && rs.all_passed() ? 0 : 1;
}
