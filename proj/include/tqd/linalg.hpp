#pragma once

// Dense complex linear algebra for few-qubit problems (dim <= 2^10).

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tqd {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = std::size_t{1} << 10;
inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-13;

/// Throws std::invalid_argument unless both parts are finite.
Complex checked_scalar(Complex z);

bool is_power_of_two(std::size_t n);

/// Amplitudes over the computational basis, party A as the most significant
/// bit. The dimension is always a power of two.
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amps);

  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  std::size_t qubits() const;
  const Complex& operator[](std::size_t k) const { return amps_[k]; }
  std::span<const Complex> amplitudes() const { return amps_; }

  double norm() const;
  bool is_normalized(double tol = kNormTolerance) const;
  StateVector normalized() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<Complex> amps_;
};

/// Big-endian Kronecker product: the first vector is the most significant
/// party. Every factor must be normalized.
StateVector tensor_product(std::span<const StateVector> xs);
StateVector tensor_product(std::initializer_list<StateVector> xs);

/// <x|y>, conjugate-linear in x.
Complex inner_product(const StateVector& x, const StateVector& y);

class OperatorMatrix {
 public:
  /// Zero matrix (certified Hermitian).
  explicit OperatorMatrix(std::size_t dim);
  OperatorMatrix(std::size_t dim, std::vector<Complex> row_major);

  static OperatorMatrix identity(std::size_t dim);
  static OperatorMatrix diagonal(std::span<const double> values);
  static OperatorMatrix projector(const StateVector& v);
  static OperatorMatrix real(std::size_t dim, std::span<const double> row_major);

  std::size_t dim() const { return dim_; }
  Complex operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  /// Mutable access drops the Hermitian certificate.
  Complex& at(std::size_t i, std::size_t j);

  bool hermitian_certified() const { return certified_; }
  /// max |A - A^dagger|
  double hermiticity_defect() const;
  /// Returns a copy flagged Hermitian; throws std::domain_error if the
  /// defect exceeds tol.
  OperatorMatrix certified_hermitian(double tol = kHermitianTolerance) const;

  OperatorMatrix adjoint() const;
  double max_abs() const;
  double frobenius_norm() const;
  Complex trace() const;

  StateVector apply(const StateVector& v) const;

  OperatorMatrix& operator+=(const OperatorMatrix& rhs);
  OperatorMatrix& operator-=(const OperatorMatrix& rhs);
  OperatorMatrix& operator*=(Complex s);

  friend OperatorMatrix operator+(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs += rhs; }
  friend OperatorMatrix operator-(OperatorMatrix lhs, const OperatorMatrix& rhs) { return lhs -= rhs; }
  friend OperatorMatrix operator*(Complex s, OperatorMatrix m) { return m *= s; }
  friend OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
  bool certified_ = false;
};

OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs);
double max_abs_diff(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

struct EigenPair {
  double value;
  StateVector vector;
  /// 1-based label carried through sorting; 0 when unlabeled.
  std::size_t label = 0;
};

/// Eigenpairs sorted ascending. Clusters group indices whose eigenvalues
/// chain together within the degeneracy tolerance.
struct Spectrum {
  std::vector<EigenPair> pairs;
  std::vector<std::vector<std::size_t>> degeneracy_clusters;

  std::vector<double> eigenvalues() const;
  double max_abs_eigenvalue() const;
};

inline constexpr double kDegeneracyRelTol = 1e-9;

/// Sorts pairs ascending and fills degeneracy_clusters using
/// |E_i - E_j| <= rel_tol * max|E|.
Spectrum make_spectrum(std::vector<EigenPair> pairs, double rel_tol = kDegeneracyRelTol);

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct JacobiOptions {
  int max_sweeps = 100;
  /// Converged when the off-diagonal Frobenius norm is <= rel_tol * ||H||_F.
  double rel_tol = 1e-13;
};

/// Cyclic complex Jacobi diagonalization. The input must carry the
/// Hermitian certificate.
Spectrum hermitian_eigendecomposition(const OperatorMatrix& h, JacobiOptions opts = {});

/// Sum of |v><v| over each degeneracy cluster, in cluster order.
std::vector<OperatorMatrix> spectral_projectors(const Spectrum& s);

/// max |H - sum_i E_i |e_i><e_i||
double reconstruction_residual(const OperatorMatrix& h, const Spectrum& s);

/// Max entry of P_a - P_b over eigenvalue clusters of `reference`, where P_b
/// collects the pairs of `candidate` whose eigenvalue lies within that
/// cluster's tolerance. Candidate pairs matching no cluster count in full.
double spectral_projector_residual(const Spectrum& reference, const Spectrum& candidate,
                                   double rel_tol = kDegeneracyRelTol);

/// max_i max_k |(H e_i - E_i e_i)_k|
double eigenpair_residual(const OperatorMatrix& h, const Spectrum& s);

/// max |U^dagger U - I| for the eigenvector matrix U.
double orthonormality_defect(std::span<const StateVector> vs);

/// max |sum_i |v_i><v_i| - I|
double completeness_defect(std::span<const StateVector> vs);

}  // namespace tqd
