#pragma once

// Triple-dot three-spin Hamiltonian: coupling tensors, the Pauli-operator
// builder, the printed reference matrix and its closed-form spectrum.

#include <array>
#include <string>
#include <vector>

#include "tqd/linalg.hpp"

namespace tqd {

enum class PauliAxis { x = 0, y = 1, z = 2 };

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;
/// gamma[i][j][k] multiplies S_1^i S_2^j S_3^k.
using ThreeSpinTensor = std::array<Mat3, 3>;

/// Maps site index (0,1,2) to Kronecker slot (0 = most significant bit).
using QubitOrder = std::array<std::size_t, 3>;
inline constexpr QubitOrder kBigEndian{0, 1, 2};
inline constexpr QubitOrder kBitReversed{2, 1, 0};

std::string to_string(const QubitOrder& order);

/// 2x2 Pauli matrix.
OperatorMatrix pauli(PauliAxis axis);

/// Pauli operator `axis` on `site` of a three-site register.
OperatorMatrix site_operator(std::size_t site, PauliAxis axis, const QubitOrder& order = kBigEndian);

struct PauliTerm {
  std::string label;  // e.g. "XIZ", slot 0 first
  double coefficient;
};

/// Real coefficients of a Hermitian n-qubit matrix in the Pauli string basis,
/// c_P = Tr(P H) / 2^n. Terms with |c_P| <= tol are dropped.
std::vector<PauliTerm> pauli_decomposition(const OperatorMatrix& h, double tol = 1e-12);

struct ExchangeTerm {
  std::size_t site_i;
  std::size_t site_j;
  /// mu[k][l] multiplies S_i^k S_j^l.
  Mat3 mu;
};

/// Free parameters (a, b, c) and the tensors derived from them.
///
/// `standard()` fills the single-site fields and the exchange tensors with
/// the reference (a, b, c) patterns and a zero three-spin tensor. Any
/// override_* call records itself, and a config with recorded overrides is no
/// longer standard.
class CouplingConfig {
 public:
  static CouplingConfig standard(double a, double b, double c);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  const std::array<Vec3, 3>& fields() const { return fields_; }
  const std::vector<ExchangeTerm>& exchange() const { return exchange_; }
  const ThreeSpinTensor& three_spin() const { return gamma_; }

  bool is_standard() const { return overrides_.empty(); }
  const std::vector<std::string>& overrides() const { return overrides_; }

  CouplingConfig& override_field(std::size_t site, const Vec3& field);
  /// Replaces the (i, j) exchange tensor, or appends one if none exists.
  CouplingConfig& override_exchange(std::size_t site_i, std::size_t site_j, const Mat3& mu);
  CouplingConfig& override_three_spin(const ThreeSpinTensor& gamma);

 private:
  CouplingConfig() = default;

  double a_ = 0.0, b_ = 0.0, c_ = 0.0;
  std::array<Vec3, 3> fields_{};
  std::vector<ExchangeTerm> exchange_;
  ThreeSpinTensor gamma_{};
  std::vector<std::string> overrides_;
};

/// S^k = sigma^k. The printed matrix fixes the absolute scale; see
/// tests/test_hamiltonian.cpp for the term-by-term calibration.
inline constexpr double kSpinScale = 1.0;

/// H = sum_i b_i.S_i + sum_(ij) sum_kl mu_kl S_i^k S_j^l
///     + sum_ijk gamma_ijk S_1^i S_2^j S_3^k
/// Throws std::domain_error naming the first non-Hermitian term.
OperatorMatrix build_hamiltonian(const CouplingConfig& cfg, const QubitOrder& order = kBigEndian);

/// The printed 8x8 reference matrix (leading factor 2 applied).
OperatorMatrix explicit_matrix(double a, double b, double c);

inline constexpr double kBuilderTolerance = 1e-12;

struct OrderResidual {
  QubitOrder order;
  double residual;
};

struct BuilderVerification {
  /// Smallest residual over the orders tried.
  double residual;
  QubitOrder best_order;
  bool matched;
  std::vector<OrderResidual> tried;
  /// Pauli terms of (reference - built) under best_order.
  std::vector<PauliTerm> discrepancy;
};

/// Compares the builder against `reference`. Big-endian is tried first, then
/// bit-reversed, then the remaining site permutations; the first order that
/// reaches kBuilderTolerance wins.
BuilderVerification verify_builder(const CouplingConfig& cfg, const OperatorMatrix& reference);
BuilderVerification verify_builder(const CouplingConfig& cfg);

/// Integer-coefficient form ca*a + cb*b + cc*c.
struct LinearForm {
  long ca = 0, cb = 0, cc = 0;

  double operator()(double a, double b, double c) const { return ca * a + cb * b + cc * c; }
  bool is_zero() const { return ca == 0 && cb == 0 && cc == 0; }
  /// Divided by the gcd, first nonzero coefficient positive.
  LinearForm normalized() const;
  std::string to_string() const;

  friend LinearForm operator-(const LinearForm& l, const LinearForm& r) {
    return {l.ca - r.ca, l.cb - r.cb, l.cc - r.cc};
  }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

enum class FormSource {
  /// E_1..E_8 exactly as printed.
  printed,
  /// <e_i|H|e_i> extracted exactly from the printed matrix.
  matrix_derived,
};

const std::array<LinearForm, 8>& printed_eigenvalue_forms();

/// |e_1>..|e_8> in printed order; coefficients +-1/2.
const std::array<StateVector, 8>& printed_eigenvectors();

/// Coefficients of <e_i|H(a,b,c)|e_i>, read off at the unit points. H is
/// linear in (a, b, c) and the kets are dyadic, so the extraction is exact;
/// a non-integer coefficient throws.
std::array<LinearForm, 8> matrix_derived_forms();

const std::array<LinearForm, 8>& eigenvalue_forms(FormSource source);

struct FormAuditEntry {
  std::size_t index;  // 1-based
  LinearForm printed;
  LinearForm derived;
  bool matches() const { return printed == derived; }
};

/// Printed eigenvalue forms against the matrix-derived ones.
std::vector<FormAuditEntry> audit_eigenvalue_forms();

/// Closed-form spectrum, sorted ascending; EigenPair::label keeps the
/// printed index.
Spectrum analytic_spectrum(double a, double b, double c, FormSource source = FormSource::printed);

struct Collision {
  std::size_t i;  // 1-based, i < j
  std::size_t j;
  LinearForm form;  // normalized E_i - E_j
};

struct DegeneracyReport {
  FormSource source;
  double threshold;
  std::vector<Collision> collisions;
};

/// Pairs (i, j) with |E_i - E_j| <= 1e-9 * max|E|.
DegeneracyReport degeneracy_report(double a, double b, double c, FormSource source = FormSource::printed);

}  // namespace tqd
