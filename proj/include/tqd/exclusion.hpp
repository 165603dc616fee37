#pragma once

// Preparations, rank-one measurements and the exclusion structure of the
// three-spin protocol and of the original two-qubit game.

#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tqd/linalg.hpp"

namespace tqd {

/// Dense row-major table. Rows index preparations, columns outcomes.
template <typename T>
struct Table {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Table() = default;
  Table(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct SingleQubitStates {
  StateVector m;
  StateVector n;
  StateVector m_bar;
  StateVector n_bar;
};

/// m = (c, -s), n = (c, s), m_bar = (s, c), n_bar = (-s, c) with
/// c = cos(theta/2), s = sin(theta/2).
SingleQubitStates single_qubit_states(double theta);

/// Eight product preparations A (x) B (x) C, A in {m, n}, B in {m, n_bar},
/// C in {m_bar, n_bar}, enumerated with A slowest.
struct PreparationFamily {
  double theta;
  SingleQubitStates states;
  std::array<StateVector, 8> preparations;
  std::array<std::array<std::string, 3>, 8> labels;
};

/// Requires 0 < theta < pi/2; throws std::domain_error otherwise.
PreparationFamily build_preparations(double theta);

/// Orthonormal rank-one projective measurement.
class MeasurementBasis {
 public:
  /// Throws std::invalid_argument if the vectors are not an orthonormal basis.
  explicit MeasurementBasis(std::vector<StateVector> outcomes, double tol = kNormTolerance);

  std::size_t size() const { return outcomes_.size(); }
  std::size_t dim() const { return outcomes_.front().dim(); }
  const std::vector<StateVector>& outcomes() const { return outcomes_; }
  const StateVector& outcome(std::size_t i) const { return outcomes_.at(i); }
  OperatorMatrix projector(std::size_t i) const { return OperatorMatrix::projector(outcomes_.at(i)); }

 private:
  std::vector<StateVector> outcomes_;
};

/// The eigenstates |e_1>..|e_8> in printed order.
MeasurementBasis three_spin_measurement();

/// |<outcome|state>|^2
double born_probability(const StateVector& state, const StateVector& outcome);

Table<Complex> amplitude_table(std::span<const StateVector> preparations, const MeasurementBasis& basis);
Table<double> probability_table(std::span<const StateVector> preparations, const MeasurementBasis& basis);
Table<double> probability_table(const PreparationFamily& family, const MeasurementBasis& basis);

inline constexpr double kExclusionZeroTol = 1e-12;

/// Outcome i excludes preparation outcome_to_preparation[i] (both 0-based).
struct ExclusionMatching {
  std::vector<std::size_t> outcome_to_preparation;
  /// max |<e_i|Psi_pi(i)>| over the matching.
  double certified_amplitude = 0.0;

  bool is_identity() const;
  friend bool operator==(const ExclusionMatching& l, const ExclusionMatching& r) {
    return l.outcome_to_preparation == r.outcome_to_preparation;
  }
};

class NoPerfectMatching : public std::runtime_error {
 public:
  NoPerfectMatching(const std::string& what, Table<Complex> amplitudes)
      : std::runtime_error(what), amplitudes_(std::move(amplitudes)) {}
  const Table<Complex>& amplitudes() const { return amplitudes_; }

 private:
  Table<Complex> amplitudes_;
};

/// Lexicographically smallest perfect matching in the bipartite graph with
/// an edge (outcome i, preparation j) whenever |amplitudes(j, i)| <= zero_tol.
ExclusionMatching find_exclusion_matching(const Table<Complex>& amplitudes, double zero_tol = kExclusionZeroTol);
ExclusionMatching find_exclusion_matching(const PreparationFamily& family, const MeasurementBasis& basis,
                                          double zero_tol = kExclusionZeroTol);

/// `points` equally spaced interior points k (pi/2) / (points + 1).
std::vector<double> theta_grid(std::size_t points);

struct ThetaScanEntry {
  double theta;
  Table<double> probabilities;
  ExclusionMatching matching;
  /// P(e_2 | Psi_2) under the identity pairing.
  double identity_pair_2_probability;
};

struct ThetaScan {
  std::vector<ThetaScanEntry> entries;
  bool matching_stable;
  double max_certified_probability;
  double max_row_sum_defect;
};

/// Runs find_exclusion_matching at each theta; throws NoPerfectMatching on the
/// first theta without one.
ThetaScan scan_exclusion(std::span<const double> thetas, const MeasurementBasis& basis);

struct TwoQubitProtocol {
  std::array<StateVector, 4> preparations;  // |00>, |0+>, |+0>, |++>
  MeasurementBasis basis;                   // xi_1..xi_4
  Table<double> probabilities;
  ExclusionMatching matching;
  /// max |<xi_i|printed partner_i>|, partner_i = preparation i.
  double partner_amplitude;
  double orthonormality_defect;
  double completeness_defect;
};

TwoQubitProtocol pbr_two_qubit_protocol();

}  // namespace tqd
