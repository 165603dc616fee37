#pragma once

// Finite ontological models over a product ontic space and the exclusion
// contradiction they run into.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tqd/exclusion.hpp"

namespace tqd {

struct EpistemicState {
  std::string label;
  std::vector<double> probabilities;  // over the party's ontic points
};

/// One preparing party: its ontic points and the distributions induced by
/// its two candidate pure states.
struct Party {
  std::string name;
  std::vector<std::string> points;
  std::array<EpistemicState, 2> states;
};

/// Preparations are indexed big-endian over the parties' state choices
/// (party 0 slowest); joint ontic points are indexed the same way over the
/// parties' point lists. response(joint point, outcome).
struct OnticModel {
  std::vector<Party> parties;
  Table<double> response;

  std::size_t preparations() const { return std::size_t{1} << parties.size(); }
  std::size_t outcomes() const { return response.cols; }
  std::size_t joint_points() const;

  /// Points where both of the party's epistemic states are strictly positive.
  std::vector<std::size_t> overlap_region(std::size_t party) const;
  /// min over the two states of their mass on overlap_region(party).
  double overlap_mass(std::size_t party) const;
  /// sum over points of min(mu_first, mu_second).
  double overlap_weight(std::size_t party) const;
};

inline constexpr double kDistributionTol = 1e-12;

/// Throws std::invalid_argument describing the first violated invariant.
void validate(const OnticModel& model);

/// Disjoint supports; the response at each joint point is the quantum row of
/// the matching preparation. `state_labels[p]` names party p's two states.
OnticModel build_psi_ontic_model(const Table<double>& quantum,
                                 const std::vector<std::array<std::string, 2>>& state_labels);
OnticModel build_psi_ontic_model(const PreparationFamily& family, const MeasurementBasis& basis);

/// Three points per party {only_first, shared, only_second}; both states put
/// mass q on `shared`; uniform response. Requires 0 < q <= 1.
OnticModel build_overlap_toy_model(double q, std::size_t parties = 3);

/// Returns a copy with a random stochastic response table (rows uniform on
/// the simplex), reproducible from `seed`.
OnticModel with_random_response(OnticModel model, std::uint64_t seed);

/// Predicted outcome distribution for preparation `preparation` (1-based).
std::vector<double> model_prediction(const OnticModel& model, std::size_t preparation);

/// prod_p overlap_weight(p) / outcomes. forbidden_outcome_bound never falls
/// below it when the matching is a bijection.
double pigeonhole_bound(const OnticModel& model);

/// max over preparations j of the predicted probability of the outcome that
/// excludes j.
double forbidden_outcome_bound(const OnticModel& model, const ExclusionMatching& matching);

struct ForbiddenViolation {
  std::size_t preparation;  // 1-based
  std::size_t outcome;      // 1-based
  double predicted;
};

struct ConsistencyReport {
  double max_deviation;
  std::vector<ForbiddenViolation> violations;
  double eps;
  bool passed() const { return max_deviation <= eps; }
};

/// Model rows against quantum rows. A violation is a forbidden outcome whose
/// predicted probability exceeds eps.
ConsistencyReport consistency_check(const OnticModel& model, const Table<double>& quantum,
                                    const ExclusionMatching& matching, double eps);
ConsistencyReport consistency_check(const OnticModel& model, const PreparationFamily& family,
                                    const MeasurementBasis& basis, double eps);

struct MonteCarloResult {
  std::size_t preparation;  // 1-based
  std::uint64_t samples;
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
};

/// Samples are drawn in fixed blocks, each from its own substream of
/// (seed, preparation, block). Results do not depend on `workers`.
MonteCarloResult monte_carlo_run(const OnticModel& model, std::size_t preparation, std::uint64_t samples,
                                 std::uint64_t seed, unsigned workers = 1);

inline constexpr std::uint64_t kMonteCarloBlock = 4096;

}  // namespace tqd
