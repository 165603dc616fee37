#include "tqd/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace tqd {

std::string to_string(const QubitOrder& order) {
  if (order == kBigEndian) return "big-endian";
  if (order == kBitReversed) return "bit-reversed";
  std::ostringstream os;
  os << "sites->slots(" << order[0] << "," << order[1] << "," << order[2] << ")";
  return os.str();
}

OperatorMatrix pauli(PauliAxis axis) {
  const Complex i{0.0, 1.0};
  switch (axis) {
    case PauliAxis::x:
      return OperatorMatrix(2, {0.0, 1.0, 1.0, 0.0}).certified_hermitian();
    case PauliAxis::y:
      return OperatorMatrix(2, {0.0, -i, i, 0.0}).certified_hermitian();
    case PauliAxis::z:
      return OperatorMatrix(2, {1.0, 0.0, 0.0, -1.0}).certified_hermitian();
  }
  throw std::invalid_argument("unknown Pauli axis");
}

OperatorMatrix site_operator(std::size_t site, PauliAxis axis, const QubitOrder& order) {
  if (site >= 3) throw std::out_of_range("site index must be 0, 1 or 2");
  std::array<OperatorMatrix, 3> slots{OperatorMatrix::identity(2), OperatorMatrix::identity(2),
                                      OperatorMatrix::identity(2)};
  slots[order.at(site)] = pauli(axis);
  return kron(kron(slots[0], slots[1]), slots[2]);
}

std::vector<PauliTerm> pauli_decomposition(const OperatorMatrix& h, double tol) {
  const std::size_t dim = h.dim();
  if (!is_power_of_two(dim)) throw std::invalid_argument("pauli_decomposition: dimension must be 2^n");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if (n > 6) throw std::invalid_argument("pauli_decomposition: at most 6 qubits");

  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<PauliTerm> terms;
  std::size_t strings = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < strings; ++code) {
    // Slot 0 (most significant qubit) is the leftmost letter.
    std::string label(n, 'I');
    std::size_t xmask = 0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t letter = (code >> (2 * (n - 1 - s))) & 3;
      label[s] = kLetters[letter];
      if (letter == 1 || letter == 2) xmask |= std::size_t{1} << (n - 1 - s);
    }
    // P|k> = phase(k) |k ^ xmask>, so Tr(P H) = sum_k phase(k) H(k, k ^ xmask).
    Complex tr = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      Complex phase = 1.0;
      for (std::size_t s = 0; s < n; ++s) {
        const bool bit = (k >> (n - 1 - s)) & 1;
        switch (label[s]) {
          case 'Y': phase *= bit ? Complex{0.0, -1.0} : Complex{0.0, 1.0}; break;
          case 'Z': if (bit) phase = -phase; break;
          default: break;
        }
      }
      tr += phase * h(k, k ^ xmask);
    }
    const double coeff = tr.real() / static_cast<double>(dim);
    if (std::abs(coeff) > tol) terms.push_back({label, coeff});
  }
  return terms;
}

// ---------------------------------------------------------------------------
// CouplingConfig

CouplingConfig CouplingConfig::standard(double a, double b, double c) {
  for (double v : {a, b, c}) checked_scalar(v);
  CouplingConfig cfg;
  cfg.a_ = a;
  cfg.b_ = b;
  cfg.c_ = c;
  cfg.fields_ = {Vec3{-a, 0.0, b}, Vec3{c, 0.0, 0.0}, Vec3{a, 0.0, b}};
  cfg.exchange_ = {
      {0, 1, Mat3{Vec3{a, 0.0, a}, Vec3{0.0, a, 0.0}, Vec3{-a, 0.0, c}}},
      {0, 2, Mat3{Vec3{0.0, 0.0, a}, Vec3{0.0, 0.0, 0.0}, Vec3{-a, 0.0, 0.0}}},
      {1, 2, Mat3{Vec3{a, 0.0, -a}, Vec3{0.0, a, 0.0}, Vec3{-a, 0.0, -c}}},
  };
  return cfg;
}

namespace {

void check_finite(const Mat3& m) {
  for (const auto& row : m)
    for (double v : row) checked_scalar(v);
}

}  // namespace

CouplingConfig& CouplingConfig::override_field(std::size_t site, const Vec3& field) {
  if (site >= 3) throw std::out_of_range("field site must be 0, 1 or 2");
  for (double v : field) checked_scalar(v);
  fields_[site] = field;
  overrides_.push_back("b" + std::to_string(site + 1));
  return *this;
}

CouplingConfig& CouplingConfig::override_exchange(std::size_t site_i, std::size_t site_j, const Mat3& mu) {
  if (site_i >= 3 || site_j >= 3) throw std::out_of_range("exchange sites must be 0, 1 or 2");
  check_finite(mu);
  auto it = std::find_if(exchange_.begin(), exchange_.end(), [&](const ExchangeTerm& t) {
    return t.site_i == site_i && t.site_j == site_j;
  });
  if (it != exchange_.end()) {
    it->mu = mu;
  } else {
    exchange_.push_back({site_i, site_j, mu});
  }
  overrides_.push_back("mu" + std::to_string(site_i + 1) + std::to_string(site_j + 1));
  return *this;
}

CouplingConfig& CouplingConfig::override_three_spin(const ThreeSpinTensor& gamma) {
  for (const auto& m : gamma) check_finite(m);
  gamma_ = gamma;
  overrides_.push_back("gamma");
  return *this;
}

// ---------------------------------------------------------------------------
// Builder

OperatorMatrix build_hamiltonian(const CouplingConfig& cfg, const QubitOrder& order) {
  std::array<std::array<OperatorMatrix, 3>, 3> s{{
      {site_operator(0, PauliAxis::x, order), site_operator(0, PauliAxis::y, order),
       site_operator(0, PauliAxis::z, order)},
      {site_operator(1, PauliAxis::x, order), site_operator(1, PauliAxis::y, order),
       site_operator(1, PauliAxis::z, order)},
      {site_operator(2, PauliAxis::x, order), site_operator(2, PauliAxis::y, order),
       site_operator(2, PauliAxis::z, order)},
  }};

  OperatorMatrix h(8);
  auto add_term = [&](OperatorMatrix term, const std::string& name) {
    const double defect = term.hermiticity_defect();
    if (defect > kHermitianTolerance) {
      std::ostringstream os;
      os << "non-Hermitian Hamiltonian term " << name << " (max|T - T^dagger| = " << defect << ")";
      throw std::domain_error(os.str());
    }
    h += term.certified_hermitian();
  };

  for (std::size_t i = 0; i < 3; ++i) {
    OperatorMatrix term(8);
    for (std::size_t k = 0; k < 3; ++k) term += cfg.fields()[i][k] * s[i][k];
    add_term(std::move(term), "b" + std::to_string(i + 1));
  }
  for (const auto& ex : cfg.exchange()) {
    OperatorMatrix term(8);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t l = 0; l < 3; ++l) {
        if (ex.mu[k][l] == 0.0) continue;
        term += ex.mu[k][l] * (s[ex.site_i][k] * s[ex.site_j][l]);
      }
    add_term(std::move(term), "mu[" + std::to_string(ex.site_i + 1) + "," + std::to_string(ex.site_j + 1) + "]");
  }
  {
    OperatorMatrix term(8);
    const auto& g = cfg.three_spin();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) {
          if (g[i][j][k] == 0.0) continue;
          term += g[i][j][k] * (s[0][i] * s[1][j] * s[2][k]);
        }
    add_term(std::move(term), "gamma");
  }
  h *= kSpinScale;
  return h.certified_hermitian();
}

OperatorMatrix explicit_matrix(double a, double b, double c) {
  for (double v : {a, b, c}) checked_scalar(v);
  // clang-format off
  const std::array<double, 64> m{
      b,     a,     c - a, -a,    -a,    0.0,  -a,    0.0,
      a,     c,     a,     0.0,   0.0,   a,    a - b, a,
      c - a, a,     b,     a,     a,     0.0,  -a,    0.0,
      -a,    0.0,   a,     -c,    a + b, a,    0.0,   -a,
      -a,    0.0,   a,     a + b, -c,    -a,   0.0,   a,
      0.0,   a,     0.0,   a,     -a,    -b,   a,     c + a,
      -a,    a - b, -a,    0.0,   0.0,   a,    c,     a,
      0.0,   a,     0.0,   -a,    a,     a + c, a,    -b,
  };
  // clang-format on
  std::array<double, 64> scaled{};
  std::transform(m.begin(), m.end(), scaled.begin(), [](double v) { return 2.0 * v; });
  return OperatorMatrix::real(8, scaled).certified_hermitian();
}

BuilderVerification verify_builder(const CouplingConfig& cfg, const OperatorMatrix& reference) {
  if (reference.dim() != 8) throw std::invalid_argument("verify_builder: reference must be 8x8");
  std::vector<QubitOrder> orders{kBigEndian, kBitReversed};
  QubitOrder perm{0, 1, 2};
  do {
    if (perm != kBigEndian && perm != kBitReversed) orders.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  BuilderVerification out{std::numeric_limits<double>::infinity(), kBigEndian, false, {}, {}};
  for (const auto& order : orders) {
    const double r = max_abs_diff(build_hamiltonian(cfg, order), reference);
    out.tried.push_back({order, r});
    if (r < out.residual) {
      out.residual = r;
      out.best_order = order;
    }
    if (r <= kBuilderTolerance) {
      out.matched = true;
      break;
    }
  }
  out.discrepancy = pauli_decomposition(reference - build_hamiltonian(cfg, out.best_order));
  return out;
}

BuilderVerification verify_builder(const CouplingConfig& cfg) {
  return verify_builder(cfg, explicit_matrix(cfg.a(), cfg.b(), cfg.c()));
}

// ---------------------------------------------------------------------------
// Closed-form spectrum

LinearForm LinearForm::normalized() const {
  long g = std::gcd(std::gcd(std::abs(ca), std::abs(cb)), std::abs(cc));
  if (g == 0) return *this;
  LinearForm f{ca / g, cb / g, cc / g};
  const long lead = f.ca != 0 ? f.ca : (f.cb != 0 ? f.cb : f.cc);
  if (lead < 0) f = {-f.ca, -f.cb, -f.cc};
  return f;
}

std::string LinearForm::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  auto emit = [&](long coeff, char var) {
    if (coeff == 0) return;
    if (coeff < 0) {
      out += '-';
    } else if (!out.empty()) {
      out += '+';
    }
    const long mag = std::abs(coeff);
    if (mag != 1) out += std::to_string(mag);
    out += var;
  };
  emit(ca, 'a');
  emit(cb, 'b');
  emit(cc, 'c');
  return out;
}

const std::array<LinearForm, 8>& printed_eigenvalue_forms() {
  static const std::array<LinearForm, 8> forms{{
      {-2, 2, -2},  // E1 = 2b - 2c - 2a
      {6, 2, -2},   // E2 = 2b - 2c + 6a
      {2, -2, -2},  // E3 = 2a - 2b - 2c
      {-6, -2, 2},  // E4 = 2c - 2b - 6a
      {2, 2, 2},    // E5 = 2a + 2b + 2c
      {-6, 2, 2},   // E6 = 2b - 6a + 2c
      {-2, -2, 2},  // E7 = 2c - 2a - 2b
      {6, -2, 2},   // E8 = 2c + 6a - 2b
  }};
  return forms;
}

namespace {

StateVector half_ket(std::initializer_list<std::pair<int, const char*>> terms) {
  std::vector<Complex> amps(8);
  for (const auto& [sign, bits] : terms) amps[std::stoul(bits, nullptr, 2)] += 0.5 * sign;
  return StateVector(std::move(amps));
}

}  // namespace

const std::array<StateVector, 8>& printed_eigenvectors() {
  static const std::array<StateVector, 8> kets{
      half_ket({{+1, "010"}, {-1, "000"}, {-1, "011"}, {-1, "100"}}),
      half_ket({{+1, "000"}, {-1, "010"}, {-1, "011"}, {-1, "100"}}),
      half_ket({{+1, "011"}, {-1, "100"}, {+1, "101"}, {-1, "111"}}),
      half_ket({{+1, "100"}, {-1, "011"}, {+1, "101"}, {-1, "111"}}),
      half_ket({{+1, "000"}, {+1, "001"}, {+1, "010"}, {-1, "110"}}),
      half_ket({{+1, "000"}, {-1, "001"}, {+1, "010"}, {+1, "110"}}),
      half_ket({{+1, "101"}, {-1, "001"}, {-1, "110"}, {+1, "111"}}),
      half_ket({{+1, "001"}, {+1, "101"}, {+1, "110"}, {+1, "111"}}),
  };
  return kets;
}

std::array<LinearForm, 8> matrix_derived_forms() {
  const std::array<OperatorMatrix, 3> unit{explicit_matrix(1, 0, 0), explicit_matrix(0, 1, 0),
                                           explicit_matrix(0, 0, 1)};
  std::array<LinearForm, 8> out{};
  const auto& kets = printed_eigenvectors();
  for (std::size_t i = 0; i < 8; ++i) {
    std::array<long, 3> coeff{};
    for (std::size_t v = 0; v < 3; ++v) {
      const double x = inner_product(kets[i], unit[v].apply(kets[i])).real();
      const double r = std::round(x);
      if (x != r) {
        throw std::logic_error("matrix_derived_forms: non-integer coefficient for E" + std::to_string(i + 1));
      }
      coeff[v] = static_cast<long>(r);
    }
    out[i] = {coeff[0], coeff[1], coeff[2]};
  }
  return out;
}

const std::array<LinearForm, 8>& eigenvalue_forms(FormSource source) {
  static const std::array<LinearForm, 8> derived = matrix_derived_forms();
  return source == FormSource::printed ? printed_eigenvalue_forms() : derived;
}

std::vector<FormAuditEntry> audit_eigenvalue_forms() {
  const auto& printed = printed_eigenvalue_forms();
  const auto& derived = eigenvalue_forms(FormSource::matrix_derived);
  std::vector<FormAuditEntry> out;
  for (std::size_t i = 0; i < 8; ++i) out.push_back({i + 1, printed[i], derived[i]});
  return out;
}

Spectrum analytic_spectrum(double a, double b, double c, FormSource source) {
  const auto& forms = eigenvalue_forms(source);
  const auto& kets = printed_eigenvectors();
  std::vector<EigenPair> pairs;
  for (std::size_t i = 0; i < 8; ++i) pairs.push_back({forms[i](a, b, c), kets[i], i + 1});
  return make_spectrum(std::move(pairs));
}

DegeneracyReport degeneracy_report(double a, double b, double c, FormSource source) {
  const auto& forms = eigenvalue_forms(source);
  std::array<double, 8> e{};
  double max_e = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    e[i] = forms[i](a, b, c);
    max_e = std::max(max_e, std::abs(e[i]));
  }
  DegeneracyReport report{source, kDegeneracyRelTol * max_e, {}};
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j)
      if (std::abs(e[i] - e[j]) <= report.threshold)
        report.collisions.push_back({i + 1, j + 1, (forms[i] - forms[j]).normalized()});
  return report;
}

}  // namespace tqd
