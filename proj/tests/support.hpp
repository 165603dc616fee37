#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "tqd/linalg.hpp"

namespace tqd::testing {

inline OperatorMatrix random_hermitian(std::size_t dim, std::mt19937_64& gen, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    e[i * dim + i] = g(gen);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const Complex z(g(gen), g(gen));
      e[i * dim + j] = z;
      e[j * dim + i] = std::conj(z);
    }
  }
  return OperatorMatrix(dim, std::move(e)).certified_hermitian();
}

inline StateVector random_state(std::size_t dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  std::vector<Complex> v(dim);
  for (auto& z : v) z = Complex(g(gen), g(gen));
  return StateVector(std::move(v)).normalized();
}

// Plain triple loop, no library helpers.
inline std::vector<Complex> naive_matmul(const OperatorMatrix& a, const OperatorMatrix& b) {
  const std::size_t n = a.dim();
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i * n + j] += a(i, k) * b(k, j);
  return out;
}

}  // namespace tqd::testing
