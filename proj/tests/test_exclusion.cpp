#include <cmath>
#include <numbers>

#include "doctest.h"

#include "tqd/exclusion.hpp"

using namespace tqd;

namespace {

constexpr double kPi = std::numbers::pi;

// Product amplitude by explicit index arithmetic, no tensor_product.
Complex product_amplitude(const StateVector& outcome, const std::array<StateVector, 3>& parts) {
  Complex s = 0.0;
  for (std::size_t k = 0; k < 8; ++k)
    s += std::conj(outcome[k]) * parts[0][(k >> 2) & 1] * parts[1][(k >> 1) & 1] * parts[2][k & 1];
  return s;
}

}  // namespace

TEST_CASE("single-qubit states and their orthogonal partners") {
  const double theta = 0.7;
  const auto s = single_qubit_states(theta);
  CHECK(std::abs(inner_product(s.m, s.m_bar)) < 1e-16);
  CHECK(std::abs(inner_product(s.n, s.n_bar)) < 1e-16);
  CHECK(inner_product(s.m, s.n).real() == doctest::Approx(std::cos(theta)));
  CHECK(s.m[0].real() == doctest::Approx(std::cos(theta / 2)));
  CHECK(s.m[1].real() == doctest::Approx(-std::sin(theta / 2)));
}

TEST_CASE("preparations are labelled with the slowest party first") {
  const auto f = build_preparations(kPi / 3);
  CHECK(f.labels[0] == std::array<std::string, 3>{"m", "m", "mbar"});
  CHECK(f.labels[7] == std::array<std::string, 3>{"n", "nbar", "nbar"});
  for (const auto& p : f.preparations) CHECK(p.is_normalized());
}

TEST_CASE("theta outside the open interval is rejected") {
  for (double theta : {0.0, kPi / 2, -0.1, 2.0}) {
    CAPTURE(theta);
    CHECK_THROWS_WITH_AS(build_preparations(theta), doctest::Contains("nonoverlap regime excluded"), std::domain_error);
  }
  CHECK_NOTHROW(build_preparations(1e-6));
}

TEST_CASE("measurement basis validation") {
  CHECK_NOTHROW(three_spin_measurement());
  CHECK_THROWS_AS(MeasurementBasis({StateVector::basis(2, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(MeasurementBasis({StateVector::basis(2, 0), StateVector::basis(2, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(MeasurementBasis(std::vector<StateVector>{}), std::invalid_argument);
  const double r = 1.0 / std::numbers::sqrt2;
  CHECK_NOTHROW(MeasurementBasis({StateVector({r, r}), StateVector({r, -r})}));
}

TEST_CASE("probability table against an index-arithmetic oracle") {
  const double theta = 1.1;
  const auto f = build_preparations(theta);
  const auto basis = three_spin_measurement();
  const auto table = probability_table(f, basis);
  const auto q = single_qubit_states(theta);
  const StateVector a_choice[2] = {q.m, q.n}, b_choice[2] = {q.m, q.n_bar}, c_choice[2] = {q.m_bar, q.n_bar};
  for (std::size_t j = 0; j < 8; ++j) {
    const std::array<StateVector, 3> parts{a_choice[(j >> 2) & 1], b_choice[(j >> 1) & 1], c_choice[j & 1]};
    double row = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      const double p = std::norm(product_amplitude(basis.outcome(i), parts));
      CHECK(table(j, i) == doctest::Approx(p).epsilon(1e-13));
      row += table(j, i);
    }
    CHECK(std::abs(row - 1.0) < 1e-12);
  }
}

TEST_CASE("exclusion matching at pi/3") {
  const auto m = find_exclusion_matching(build_preparations(kPi / 3), three_spin_measurement());
  CHECK(m.outcome_to_preparation == std::vector<std::size_t>{0, 5, 4, 1, 2, 7, 3, 6});
  CHECK(m.certified_amplitude <= 1e-12);
  CHECK_FALSE(m.is_identity());
}

TEST_CASE("identity pairing fails at e2, Psi2 with the closed form") {
  for (double theta : {0.2, kPi / 3, 1.4}) {
    const auto t = probability_table(build_preparations(theta), three_spin_measurement());
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    CHECK(std::abs(t(1, 1) - c * c * s * s * s * s) < 1e-12);
  }
  const auto t = probability_table(build_preparations(kPi / 3), three_spin_measurement());
  CHECK(t(1, 1) == doctest::Approx(3.0 / 64.0).epsilon(1e-14));
}

TEST_CASE("matching on hand-built tables") {
  Table<Complex> t(3, 3);
  for (auto& v : t.data) v = 1.0;
  t(2, 0) = 0.0;
  t(0, 1) = 0.0;
  t(1, 1) = 0.0;
  t(1, 2) = 0.0;
  // outcome 0 -> prep 2, outcome 1 -> {0,1}, outcome 2 -> prep 1: unique
  auto m = find_exclusion_matching(t);
  CHECK(m.outcome_to_preparation == std::vector<std::size_t>{2, 0, 1});

  t(0, 2) = 0.0;  // outcome 2 can now also exclude prep 0
  m = find_exclusion_matching(t);
  CHECK(m.outcome_to_preparation == std::vector<std::size_t>{2, 0, 1});

  t(1, 2) = 1e-11;
  t(0, 1) = 1.0;
  // outcome 1 -> prep 1 only, outcome 2 -> prep 0 only
  m = find_exclusion_matching(t);
  CHECK(m.outcome_to_preparation == std::vector<std::size_t>{2, 1, 0});

  t(0, 2) = 1.0;
  CHECK_THROWS_AS(find_exclusion_matching(t), NoPerfectMatching);
  CHECK_THROWS_AS(find_exclusion_matching(Table<Complex>(2, 3)), std::invalid_argument);
}

TEST_CASE("identity matching is recognized") {
  Table<Complex> t(2, 2);
  t(0, 1) = 1.0;
  t(1, 0) = 1.0;
  const auto m = find_exclusion_matching(t);
  CHECK(m.is_identity());
  CHECK(m.certified_amplitude == 0.0);
}

TEST_CASE("theta grid is interior and evenly spaced") {
  const auto g = theta_grid(3);
  REQUIRE(g.size() == 3);
  CHECK(g[0] == doctest::Approx(kPi / 8));
  CHECK(g[2] == doctest::Approx(3 * kPi / 8));
  CHECK(theta_grid(0).empty());
}

TEST_CASE("scan over a grid keeps the matching") {
  const auto thetas = theta_grid(99);
  const auto scan = scan_exclusion(thetas, three_spin_measurement());
  CHECK(scan.entries.size() == 99);
  CHECK(scan.matching_stable);
  CHECK(scan.max_certified_probability <= 1e-24);
  CHECK(scan.max_row_sum_defect <= 1e-12);
}

TEST_CASE("two-qubit protocol") {
  const auto p = pbr_two_qubit_protocol();
  CHECK(p.matching.is_identity());
  CHECK(p.partner_amplitude * p.partner_amplitude <= 1e-24);
  CHECK(p.orthonormality_defect <= 1e-12);
  CHECK(p.completeness_defect <= 1e-12);
  CHECK(std::abs(p.probabilities(0, 3) - 0.5) <= 1e-12);
  for (std::size_t i = 0; i < 4; ++i) CHECK(p.probabilities(i, i) <= 1e-24);

  // |++> against xi_1 by hand: xi_1 = (|01> + |10>)/sqrt2, so 1/2.
  CHECK(p.probabilities(3, 0) == doctest::Approx(0.5));
}
