#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "doctest.h"

#include "tqd/hamiltonian.hpp"

using namespace tqd;

namespace {

std::map<std::string, double> terms(const OperatorMatrix& h) {
  std::map<std::string, double> out;
  for (const auto& t : pauli_decomposition(h)) out[t.label] = t.coefficient;
  return out;
}

// Pauli strings by hand: slot 0 is the most significant factor.
OperatorMatrix pauli_string(const std::string& label) {
  auto one = [](char ch) {
    switch (ch) {
      case 'X': return pauli(PauliAxis::x);
      case 'Y': return pauli(PauliAxis::y);
      case 'Z': return pauli(PauliAxis::z);
      default: return OperatorMatrix::identity(2);
    }
  };
  OperatorMatrix m = one(label[0]);
  for (std::size_t k = 1; k < label.size(); ++k) m = kron(m, one(label[k]));
  return m;
}

// The standard couplings assembled term by term from Pauli strings.
OperatorMatrix oracle_hamiltonian(double a, double b, double c) {
  const std::vector<std::pair<std::string, double>> t{
      {"XII", -a}, {"ZII", b},  {"IXI", c},  {"IIX", a},  {"IIZ", b},
      // mu12, mu13, mu23 entry by entry
      {"XXI", a},  {"XZI", a},  {"YYI", a},  {"ZXI", -a}, {"ZZI", c},
      {"XIZ", a},  {"ZIX", -a},
      {"IXX", a},  {"IXZ", -a}, {"IYY", a},  {"IZX", -a}, {"IZZ", -c},
  };
  OperatorMatrix h(8);
  for (const auto& [label, coef] : t) h += Complex(coef) * pauli_string(label);
  return h;
}

}  // namespace

TEST_CASE("Pauli matrices and site operators") {
  const auto x = pauli(PauliAxis::x), y = pauli(PauliAxis::y), z = pauli(PauliAxis::z);
  CHECK(max_abs_diff(x * y, Complex(0.0, 1.0) * z) < 1e-15);
  CHECK(max_abs_diff(x * x, OperatorMatrix::identity(2)) < 1e-15);
  CHECK(max_abs_diff(site_operator(0, PauliAxis::z), pauli_string("ZII")) == 0.0);
  CHECK(max_abs_diff(site_operator(0, PauliAxis::z, kBitReversed), pauli_string("IIZ")) == 0.0);
  CHECK_THROWS_AS(site_operator(3, PauliAxis::x), std::out_of_range);
  CHECK(to_string(kBitReversed) == "bit-reversed");
  CHECK(to_string(kBigEndian) == "big-endian");
}

TEST_CASE("Pauli decomposition inverts Pauli sums") {
  const auto h = Complex(0.75) * pauli_string("XYZ") - Complex(2.0) * pauli_string("IZI");
  const auto t = terms(h);
  CHECK(t.size() == 2);
  CHECK(t.at("XYZ") == doctest::Approx(0.75));
  CHECK(t.at("IZI") == doctest::Approx(-2.0));
  CHECK_THROWS_AS(pauli_decomposition(OperatorMatrix(3)), std::invalid_argument);
}

TEST_CASE("standard couplings carry the printed tensors") {
  const auto cfg = CouplingConfig::standard(1.0, 2.0, 7.0);
  CHECK(cfg.is_standard());
  CHECK(cfg.fields()[0] == Vec3{-1.0, 0.0, 2.0});
  CHECK(cfg.fields()[1] == Vec3{7.0, 0.0, 0.0});
  CHECK(cfg.fields()[2] == Vec3{1.0, 0.0, 2.0});
  REQUIRE(cfg.exchange().size() == 3);
  for (const auto& m : cfg.three_spin())
    for (const auto& row : m)
      for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("builder agrees with a term-by-term Pauli oracle") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = u(gen), b = u(gen), c = u(gen);
    CHECK(max_abs_diff(build_hamiltonian(CouplingConfig::standard(a, b, c)), oracle_hamiltonian(a, b, c)) < 1e-13);
  }
}

TEST_CASE("zero couplings give the zero matrix") {
  CHECK(build_hamiltonian(CouplingConfig::standard(0, 0, 0)).max_abs() == 0.0);
  CHECK(explicit_matrix(0, 0, 0).max_abs() == 0.0);
}

TEST_CASE("explicit matrix is Hermitian and traceless") {
  const auto m = explicit_matrix(1.3, -0.7, 2.1);
  CHECK(m.hermiticity_defect() == 0.0);
  CHECK(std::abs(m.trace()) < 1e-15);
  CHECK_THROWS_AS(explicit_matrix(std::nan(""), 0, 0), std::invalid_argument);
}

TEST_CASE("explicit matrix spectrum at (1,2,7)") {
  const auto s = hermitian_eigendecomposition(explicit_matrix(1, 2, 7).certified_hermitian());
  const std::vector<double> expected{-24, -16, -12, -4, 8, 12, 16, 20};
  const auto ev = s.eigenvalues();
  for (std::size_t k = 0; k < 8; ++k) CHECK(ev[k] == doctest::Approx(expected[k]).epsilon(1e-12));
  CHECK(s.degeneracy_clusters.size() == 8);
}

TEST_CASE("one-body coefficients fix the spin scale at 1") {
  const auto built = terms(build_hamiltonian(CouplingConfig::standard(1.3, -0.7, 2.1)));
  const auto printed = terms(explicit_matrix(1.3, -0.7, 2.1));
  for (const char* label : {"XII", "ZII", "IXI", "IIX", "IIZ", "XXI", "YYI", "ZZI", "IXX", "IYY", "IZZ"}) {
    CAPTURE(label);
    REQUIRE(printed.count(label) == 1);
    CHECK(built.at(label) / printed.at(label) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("builder and printed matrix differ in the 1-3 exchange and three-spin terms") {
  const double a = 1.3, b = -0.7, c = 2.1;
  const auto v = verify_builder(CouplingConfig::standard(a, b, c), explicit_matrix(a, b, c));
  CHECK_FALSE(v.matched);
  CHECK(v.tried.size() == 6);
  CHECK(v.residual > 1.0);

  const auto built = terms(build_hamiltonian(CouplingConfig::standard(a, b, c)));
  const auto printed = terms(explicit_matrix(a, b, c));
  CHECK(built.at("XIZ") == doctest::Approx(a));
  CHECK(printed.at("XIZ") == doctest::Approx(-a));
  CHECK(printed.at("ZIX") == doctest::Approx(a));
  std::size_t three_body = 0;
  for (const auto& [label, coef] : printed)
    if (std::count(label.begin(), label.end(), 'I') == 0) ++three_body;
  CHECK(three_body == 11);
  CHECK(printed.at("XYY") == doctest::Approx(-b));
}

TEST_CASE("verify_builder matches its own output") {
  const auto cfg = CouplingConfig::standard(0.4, 1.1, -2.0);
  const auto v = verify_builder(cfg, build_hamiltonian(cfg, kBitReversed));
  CHECK(v.matched);
  CHECK(v.best_order == kBitReversed);
  CHECK(v.residual <= kBuilderTolerance);
  CHECK(v.discrepancy.empty());
  CHECK_THROWS_AS(verify_builder(cfg, OperatorMatrix(4)), std::invalid_argument);
}

TEST_CASE("non-Hermitian terms are rejected by name") {
  auto cfg = CouplingConfig::standard(1, 2, 7);
  Mat3 mu{};
  mu[0][1] = 1.0;  // S_1^x S_1^y = i S_1^z
  cfg.override_exchange(0, 0, mu);
  CHECK_FALSE(cfg.is_standard());
  CHECK_THROWS_WITH_AS(build_hamiltonian(cfg), doctest::Contains("mu[1,1]"), std::domain_error);
  CHECK_THROWS_AS(cfg.override_field(3, Vec3{}), std::out_of_range);
}

TEST_CASE("linear forms print and normalize") {
  CHECK(LinearForm{1, 1, -1}.to_string() == "a+b-c");
  CHECK(LinearForm{3, 0, -1}.to_string() == "3a-c");
  CHECK(LinearForm{0, 0, 0}.to_string() == "0");
  CHECK(LinearForm{-4, -4, 4}.normalized() == LinearForm{1, 1, -1});
  CHECK(LinearForm{2, -1, 1}(1, 2, 3) == 3.0);
}

TEST_CASE("printed kets are exact eigenvectors of the printed matrix") {
  std::mt19937_64 gen(23);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  const auto& kets = printed_eigenvectors();
  CHECK(orthonormality_defect(kets) < 1e-15);
  CHECK(completeness_defect(kets) < 1e-15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = explicit_matrix(u(gen), u(gen), u(gen));
    for (const auto& e : kets) {
      const auto he = h.apply(e);
      const Complex lambda = inner_product(e, he);
      for (std::size_t k = 0; k < 8; ++k) CHECK(std::abs(he[k] - lambda * e[k]) < 1e-13);
    }
  }
}

TEST_CASE("matrix-derived forms differ from the printed ones only in E4") {
  const std::array<LinearForm, 8> derived_oracle{{
      {-2, 2, -2}, {6, 2, -2}, {2, -2, -2}, {-6, -2, -2},
      {2, 2, 2},   {-6, 2, 2}, {-2, -2, 2}, {6, -2, 2},
  }};
  CHECK(matrix_derived_forms() == derived_oracle);
  CHECK(printed_eigenvalue_forms()[3] == LinearForm{-6, -2, 2});
  const auto audit = audit_eigenvalue_forms();
  REQUIRE(audit.size() == 8);
  for (const auto& e : audit) CHECK(e.matches() == (e.index != 4));
}

TEST_CASE("analytic spectrum labels and ordering") {
  const auto s = analytic_spectrum(1, 2, 7, FormSource::matrix_derived);
  const auto ev = s.eigenvalues();
  CHECK(ev == std::vector<double>{-24, -16, -12, -4, 8, 12, 16, 20});
  const auto numeric = hermitian_eigendecomposition(explicit_matrix(1, 2, 7).certified_hermitian());
  CHECK(spectral_projector_residual(numeric, s) < 1e-10 * 24);

  const auto printed = analytic_spectrum(1, 2, 7);
  CHECK(spectral_projector_residual(numeric, printed) > 1e-3);
  std::vector<std::size_t> labels;
  for (const auto& p : printed.pairs) labels.push_back(p.label);
  std::sort(labels.begin(), labels.end());
  CHECK(labels == std::vector<std::size_t>{1, 2, 3, 4, 5, 6, 7, 8});
}

TEST_CASE("degeneracy report") {
  const auto at_123 = degeneracy_report(1, 2, 3);
  bool e1_e4 = false;
  for (const auto& col : at_123.collisions)
    if (col.i == 1 && col.j == 4) e1_e4 = col.form == LinearForm{1, 1, -1};
  CHECK(e1_e4);
  CHECK(degeneracy_report(1, 2, 7).collisions.empty());
  CHECK(degeneracy_report(1, 2, 7, FormSource::matrix_derived).collisions.empty());

  // The true spectrum at (1,2,3) still has E2 = E6 (3a = c).
  const auto derived = degeneracy_report(1, 2, 3, FormSource::matrix_derived);
  REQUIRE(derived.collisions.size() == 1);
  CHECK(derived.collisions[0].i == 2);
  CHECK(derived.collisions[0].j == 6);

  CHECK(degeneracy_report(0, 0, 0).collisions.size() == 28);
}
