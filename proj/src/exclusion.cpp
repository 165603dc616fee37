#include "tqd/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tqd/hamiltonian.hpp"

namespace tqd {

SingleQubitStates single_qubit_states(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return {StateVector({c, -s}), StateVector({c, s}), StateVector({s, c}), StateVector({-s, c})};
}

PreparationFamily build_preparations(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi / 2.0)) {
    std::ostringstream os;
    os << "theta = " << theta << " outside the open interval (0, pi/2): nonoverlap regime excluded";
    throw std::domain_error(os.str());
  }
  auto states = single_qubit_states(theta);
  const std::array<std::pair<const StateVector*, const char*>, 2> alice{{{&states.m, "m"}, {&states.n, "n"}}};
  const std::array<std::pair<const StateVector*, const char*>, 2> bob{{{&states.m, "m"}, {&states.n_bar, "nbar"}}};
  const std::array<std::pair<const StateVector*, const char*>, 2> charlie{
      {{&states.m_bar, "mbar"}, {&states.n_bar, "nbar"}}};

  std::vector<StateVector> preps;
  std::array<std::array<std::string, 3>, 8> labels;
  for (std::size_t i = 0; i < 8; ++i) {
    const auto& [pa, la] = alice[(i >> 2) & 1];
    const auto& [pb, lb] = bob[(i >> 1) & 1];
    const auto& [pc, lc] = charlie[i & 1];
    preps.push_back(tensor_product({*pa, *pb, *pc}));
    labels[i] = {la, lb, lc};
  }
  return PreparationFamily{theta,
                           std::move(states),
                           {preps[0], preps[1], preps[2], preps[3], preps[4], preps[5], preps[6], preps[7]},
                           labels};
}

MeasurementBasis::MeasurementBasis(std::vector<StateVector> outcomes, double tol) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw std::invalid_argument("measurement basis is empty");
  for (const auto& v : outcomes_) {
    if (v.dim() != outcomes_.front().dim()) throw std::invalid_argument("measurement basis: mixed dimensions");
  }
  if (outcomes_.size() != outcomes_.front().dim()) {
    throw std::invalid_argument("measurement basis: outcome count must equal the dimension");
  }
  const double defect = orthonormality_defect(outcomes_);
  if (defect > tol) {
    std::ostringstream os;
    os << "measurement basis is not orthonormal (defect " << defect << ")";
    throw std::invalid_argument(os.str());
  }
}

MeasurementBasis three_spin_measurement() {
  const auto& kets = printed_eigenvectors();
  return MeasurementBasis(std::vector<StateVector>(kets.begin(), kets.end()));
}

double born_probability(const StateVector& state, const StateVector& outcome) {
  return std::norm(inner_product(outcome, state));
}

Table<Complex> amplitude_table(std::span<const StateVector> preparations, const MeasurementBasis& basis) {
  Table<Complex> t(preparations.size(), basis.size());
  for (std::size_t r = 0; r < preparations.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c) t(r, c) = inner_product(basis.outcome(c), preparations[r]);
  return t;
}

Table<double> probability_table(std::span<const StateVector> preparations, const MeasurementBasis& basis) {
  Table<double> t(preparations.size(), basis.size());
  for (std::size_t r = 0; r < preparations.size(); ++r)
    for (std::size_t c = 0; c < basis.size(); ++c) t(r, c) = born_probability(preparations[r], basis.outcome(c));
  return t;
}

Table<double> probability_table(const PreparationFamily& family, const MeasurementBasis& basis) {
  return probability_table(family.preparations, basis);
}

bool ExclusionMatching::is_identity() const {
  for (std::size_t i = 0; i < outcome_to_preparation.size(); ++i)
    if (outcome_to_preparation[i] != i) return false;
  return true;
}

namespace {

// Depth-first over outcomes in order, preparations ascending; the first
// complete assignment found is the lexicographically smallest.
bool assign(std::size_t outcome, const Table<Complex>& amps, double tol, std::vector<bool>& used,
            std::vector<std::size_t>& perm) {
  if (outcome == amps.cols) return true;
  for (std::size_t prep = 0; prep < amps.rows; ++prep) {
    if (used[prep] || std::abs(amps(prep, outcome)) > tol) continue;
    used[prep] = true;
    perm[outcome] = prep;
    if (assign(outcome + 1, amps, tol, used, perm)) return true;
    used[prep] = false;
  }
  return false;
}

}  // namespace

ExclusionMatching find_exclusion_matching(const Table<Complex>& amplitudes, double zero_tol) {
  if (amplitudes.rows != amplitudes.cols) {
    throw std::invalid_argument("find_exclusion_matching: table must be square");
  }
  std::vector<bool> used(amplitudes.rows, false);
  std::vector<std::size_t> perm(amplitudes.cols);
  if (!assign(0, amplitudes, zero_tol, used, perm)) {
    std::ostringstream os;
    os << "no perfect exclusion matching: amplitudes (rows = preparations)\n";
    for (std::size_t r = 0; r < amplitudes.rows; ++r) {
      for (std::size_t c = 0; c < amplitudes.cols; ++c) os << ' ' << std::abs(amplitudes(r, c));
      os << '\n';
    }
    throw NoPerfectMatching(os.str(), amplitudes);
  }
  ExclusionMatching m{perm, 0.0};
  for (std::size_t i = 0; i < perm.size(); ++i)
    m.certified_amplitude = std::max(m.certified_amplitude, std::abs(amplitudes(perm[i], i)));
  return m;
}

ExclusionMatching find_exclusion_matching(const PreparationFamily& family, const MeasurementBasis& basis,
                                          double zero_tol) {
  return find_exclusion_matching(amplitude_table(family.preparations, basis), zero_tol);
}

std::vector<double> theta_grid(std::size_t points) {
  std::vector<double> out;
  const double step = (std::numbers::pi / 2.0) / static_cast<double>(points + 1);
  for (std::size_t k = 1; k <= points; ++k) out.push_back(step * static_cast<double>(k));
  return out;
}

ThetaScan scan_exclusion(std::span<const double> thetas, const MeasurementBasis& basis) {
  ThetaScan scan{{}, true, 0.0, 0.0};
  for (double theta : thetas) {
    const auto family = build_preparations(theta);
    auto probs = probability_table(family, basis);
    auto matching = find_exclusion_matching(family, basis);
    for (std::size_t r = 0; r < probs.rows; ++r) {
      double sum = 0.0;
      for (std::size_t c = 0; c < probs.cols; ++c) sum += probs(r, c);
      scan.max_row_sum_defect = std::max(scan.max_row_sum_defect, std::abs(sum - 1.0));
    }
    for (std::size_t i = 0; i < matching.outcome_to_preparation.size(); ++i)
      scan.max_certified_probability =
          std::max(scan.max_certified_probability, probs(matching.outcome_to_preparation[i], i));
    if (!scan.entries.empty() && !(scan.entries.front().matching == matching)) scan.matching_stable = false;
    const double p22 = probs(1, 1);
    scan.entries.push_back({theta, std::move(probs), std::move(matching), p22});
  }
  return scan;
}

TwoQubitProtocol pbr_two_qubit_protocol() {
  const double r = 1.0 / std::numbers::sqrt2;
  const StateVector zero({1.0, 0.0}), one({0.0, 1.0});
  const StateVector plus({r, r}), minus({r, -r});

  auto superpose = [&](const StateVector& x, const StateVector& y) {
    std::vector<Complex> amps(4);
    for (std::size_t k = 0; k < 4; ++k) amps[k] = r * (x[k] + y[k]);
    return StateVector(std::move(amps));
  };
  std::vector<StateVector> xi{
      superpose(tensor_product({zero, one}), tensor_product({one, zero})),
      superpose(tensor_product({zero, minus}), tensor_product({one, plus})),
      superpose(tensor_product({plus, one}), tensor_product({minus, zero})),
      // Printed with both factors of the first term on A; the second belongs to B.
      superpose(tensor_product({plus, minus}), tensor_product({minus, plus})),
  };
  std::array<StateVector, 4> preps{tensor_product({zero, zero}), tensor_product({zero, plus}),
                                   tensor_product({plus, zero}), tensor_product({plus, plus})};

  const double ortho = orthonormality_defect(xi);
  const double complete = completeness_defect(xi);
  MeasurementBasis basis(std::move(xi));
  auto amps = amplitude_table(preps, basis);
  double partner = 0.0;
  for (std::size_t i = 0; i < 4; ++i) partner = std::max(partner, std::abs(amps(i, i)));
  auto matching = find_exclusion_matching(amps);
  auto probs = probability_table(preps, basis);
  return TwoQubitProtocol{preps, std::move(basis), std::move(probs), std::move(matching), partner, ortho, complete};
}

}  // namespace tqd
