#include "tqd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace tqd {

Complex checked_scalar(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw std::invalid_argument("non-finite complex scalar");
  }
  return z;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
  if (!is_power_of_two(amps_.size()) || amps_.size() > kMaxDim) {
    throw std::invalid_argument("state dimension must be a power of two <= 1024, got " +
                                std::to_string(amps_.size()));
  }
  for (const auto& z : amps_) checked_scalar(z);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw std::out_of_range("basis index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

std::size_t StateVector::qubits() const {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim()) ++n;
  return n;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& z : amps_) s += std::norm(z);
  return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const {
  double s = 0.0;
  for (const auto& z : amps_) s += std::norm(z);
  return std::abs(s - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  std::vector<Complex> out(amps_);
  for (auto& z : out) z /= n;
  return StateVector(std::move(out));
}

StateVector tensor_product(std::span<const StateVector> xs) {
  if (xs.empty()) throw std::invalid_argument("empty tensor product");
  std::size_t dim = 1;
  for (const auto& x : xs) {
    if (!x.is_normalized()) throw std::invalid_argument("tensor_product: factor is not normalized");
    dim *= x.dim();
    if (dim > kMaxDim) throw std::invalid_argument("tensor_product: dimension exceeds 1024");
  }
  std::vector<Complex> acc(xs.front().amplitudes().begin(), xs.front().amplitudes().end());
  for (std::size_t f = 1; f < xs.size(); ++f) {
    const auto rhs = xs[f].amplitudes();
    std::vector<Complex> next;
    next.reserve(acc.size() * rhs.size());
    for (const auto& l : acc) {
      for (const auto& r : rhs) next.push_back(l * r);
    }
    acc = std::move(next);
  }
  return StateVector(std::move(acc));
}

StateVector tensor_product(std::initializer_list<StateVector> xs) {
  return tensor_product(std::span<const StateVector>(xs.begin(), xs.size()));
}

Complex inner_product(const StateVector& x, const StateVector& y) {
  if (x.dim() != y.dim()) {
    throw std::invalid_argument("inner_product: dimension mismatch (" + std::to_string(x.dim()) +
                                " vs " + std::to_string(y.dim()) + ")");
  }
  Complex s = 0.0;
  for (std::size_t k = 0; k < x.dim(); ++k) s += std::conj(x[k]) * y[k];
  return s;
}

// ---------------------------------------------------------------------------
// OperatorMatrix

OperatorMatrix::OperatorMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim), certified_(true) {
  if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("operator dimension out of range");
}

OperatorMatrix::OperatorMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
  if (dim == 0 || dim > kMaxDim) throw std::invalid_argument("operator dimension out of range");
  if (entries_.size() != dim * dim) throw std::invalid_argument("operator entry count mismatch");
  for (const auto& z : entries_) checked_scalar(z);
}

OperatorMatrix OperatorMatrix::identity(std::size_t dim) {
  OperatorMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1.0;
  m.certified_ = true;
  return m;
}

OperatorMatrix OperatorMatrix::diagonal(std::span<const double> values) {
  OperatorMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m.entries_[i * m.dim_ + i] = checked_scalar(values[i]);
  m.certified_ = true;
  return m;
}

OperatorMatrix OperatorMatrix::projector(const StateVector& v) {
  OperatorMatrix m(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    for (std::size_t j = 0; j < v.dim(); ++j) m.entries_[i * m.dim_ + j] = v[i] * std::conj(v[j]);
  }
  m.certified_ = true;
  return m;
}

OperatorMatrix OperatorMatrix::real(std::size_t dim, std::span<const double> row_major) {
  std::vector<Complex> entries(row_major.begin(), row_major.end());
  return OperatorMatrix(dim, std::move(entries));
}

Complex& OperatorMatrix::at(std::size_t i, std::size_t j) {
  if (i >= dim_ || j >= dim_) throw std::out_of_range("operator index out of range");
  certified_ = false;
  return entries_[i * dim_ + j];
}

double OperatorMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i; j < dim_; ++j) {
      d = std::max(d, std::abs(entries_[i * dim_ + j] - std::conj(entries_[j * dim_ + i])));
    }
  }
  return d;
}

OperatorMatrix OperatorMatrix::certified_hermitian(double tol) const {
  const double defect = hermiticity_defect();
  if (defect > tol) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max|A - A^dagger| = " << defect;
    throw std::domain_error(os.str());
  }
  OperatorMatrix m(*this);
  m.certified_ = true;
  return m;
}

OperatorMatrix OperatorMatrix::adjoint() const {
  OperatorMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m.entries_[j * dim_ + i] = std::conj(entries_[i * dim_ + j]);
  }
  m.certified_ = certified_;
  return m;
}

double OperatorMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double OperatorMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

Complex OperatorMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += entries_[i * dim_ + i];
  return t;
}

StateVector OperatorMatrix::apply(const StateVector& v) const {
  if (v.dim() != dim_) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<Complex> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) s += entries_[i * dim_ + j] * v[j];
    out[i] = s;
  }
  return StateVector(std::move(out));
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("operator sum: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  certified_ = certified_ && rhs.certified_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& rhs) {
  if (rhs.dim_ != dim_) throw std::invalid_argument("operator difference: dimension mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  certified_ = certified_ && rhs.certified_;
  return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex s) {
  checked_scalar(s);
  for (auto& z : entries_) z *= s;
  certified_ = certified_ && s.imag() == 0.0;
  return *this;
}

OperatorMatrix operator*(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw std::invalid_argument("operator product: dimension mismatch");
  const std::size_t n = lhs.dim_;
  OperatorMatrix out(n);
  out.certified_ = false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex l = lhs.entries_[i * n + k];
      if (l == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out.entries_[i * n + j] += l * rhs.entries_[k * n + j];
    }
  }
  return out;
}

OperatorMatrix kron(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  const std::size_t n = lhs.dim() * rhs.dim();
  if (n > kMaxDim) throw std::invalid_argument("kron: dimension exceeds 1024");
  std::vector<Complex> e(n * n);
  for (std::size_t i1 = 0; i1 < lhs.dim(); ++i1)
    for (std::size_t j1 = 0; j1 < lhs.dim(); ++j1) {
      const Complex l = lhs(i1, j1);
      for (std::size_t i2 = 0; i2 < rhs.dim(); ++i2)
        for (std::size_t j2 = 0; j2 < rhs.dim(); ++j2)
          e[(i1 * rhs.dim() + i2) * n + (j1 * rhs.dim() + j2)] = l * rhs(i2, j2);
    }
  OperatorMatrix out(n, std::move(e));
  if (lhs.hermitian_certified() && rhs.hermitian_certified()) out = out.certified_hermitian();
  return out;
}

double max_abs_diff(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < lhs.dim(); ++i)
    for (std::size_t j = 0; j < lhs.dim(); ++j) d = std::max(d, std::abs(lhs(i, j) - rhs(i, j)));
  return d;
}

// ---------------------------------------------------------------------------
// Spectrum

std::vector<double> Spectrum::eigenvalues() const {
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.value);
  return out;
}

double Spectrum::max_abs_eigenvalue() const {
  double m = 0.0;
  for (const auto& p : pairs) m = std::max(m, std::abs(p.value));
  return m;
}

Spectrum make_spectrum(std::vector<EigenPair> pairs, double rel_tol) {
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& l, const EigenPair& r) { return l.value < r.value; });
  Spectrum s{std::move(pairs), {}};
  const double tol = rel_tol * s.max_abs_eigenvalue();
  for (std::size_t i = 0; i < s.pairs.size(); ++i) {
    if (i > 0 && s.pairs[i].value - s.pairs[i - 1].value <= tol) {
      s.degeneracy_clusters.back().push_back(i);
    } else {
      s.degeneracy_clusters.push_back({i});
    }
  }
  return s;
}

namespace {

double off_diagonal_norm(const std::vector<Complex>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a[i * n + j]);
  return std::sqrt(s);
}

}  // namespace

Spectrum hermitian_eigendecomposition(const OperatorMatrix& h, JacobiOptions opts) {
  if (!h.hermitian_certified()) {
    throw std::domain_error("hermitian_eigendecomposition: input is not certified Hermitian");
  }
  const std::size_t n = h.dim();
  std::vector<Complex> a(n * n);
  std::vector<Complex> v(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = h(i, j);
    v[i * n + i] = 1.0;
  }
  const double scale = h.frobenius_norm();
  const double target = opts.rel_tol * scale;

  double off = off_diagonal_norm(a, n);
  int sweep = 0;
  while (off > target) {
    if (sweep++ >= opts.max_sweeps) {
      std::ostringstream os;
      os << "Jacobi iteration did not converge in " << opts.max_sweeps
         << " sweeps; off-diagonal norm " << off << " (target " << target << ")";
      throw ConvergenceError(os.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a[p * n + q];
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase the (p,q) block real, then apply a real Jacobi rotation.
        const Complex phase = std::conj(apq) / mag;
        const double app = a[p * n + p].real();
        const double aqq = a[q * n + q].real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex jpp = c, jpq = s, jqp = -s * phase, jqq = c * phase;

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = akp * jpp + akq * jqp;
          a[k * n + q] = akp * jpq + akq * jqq;
          const Complex vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = vkp * jpp + vkq * jqp;
          v[k * n + q] = vkp * jpq + vkq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a[q * n + k] = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
        a[p * n + p] = a[p * n + p].real();
        a[q * n + q] = a[q * n + q].real();
      }
    }
    off = off_diagonal_norm(a, n);
  }

  std::vector<EigenPair> pairs;
  pairs.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Complex> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[i * n + j];
    pairs.push_back({a[j * n + j].real(), StateVector(std::move(col))});
  }
  return make_spectrum(std::move(pairs));
}

std::vector<OperatorMatrix> spectral_projectors(const Spectrum& s) {
  std::vector<OperatorMatrix> out;
  for (const auto& cluster : s.degeneracy_clusters) {
    OperatorMatrix p(s.pairs[cluster.front()].vector.dim());
    for (auto idx : cluster) p += OperatorMatrix::projector(s.pairs[idx].vector);
    out.push_back(std::move(p));
  }
  return out;
}

double reconstruction_residual(const OperatorMatrix& h, const Spectrum& s) {
  OperatorMatrix sum(h.dim());
  for (const auto& p : s.pairs) sum += p.value * OperatorMatrix::projector(p.vector);
  return max_abs_diff(h, sum);
}

double spectral_projector_residual(const Spectrum& reference, const Spectrum& candidate,
                                   double rel_tol) {
  if (reference.pairs.empty()) throw std::invalid_argument("spectral_projector_residual: empty spectrum");
  const std::size_t dim = reference.pairs.front().vector.dim();
  const double tol = rel_tol * std::max(reference.max_abs_eigenvalue(), candidate.max_abs_eigenvalue());
  std::vector<bool> used(candidate.pairs.size(), false);
  double residual = 0.0;
  for (const auto& cluster : reference.degeneracy_clusters) {
    OperatorMatrix p_ref(dim), p_cand(dim);
    const double lo = reference.pairs[cluster.front()].value - tol;
    const double hi = reference.pairs[cluster.back()].value + tol;
    for (auto idx : cluster) p_ref += OperatorMatrix::projector(reference.pairs[idx].vector);
    for (std::size_t k = 0; k < candidate.pairs.size(); ++k) {
      const double e = candidate.pairs[k].value;
      if (!used[k] && e >= lo && e <= hi) {
        used[k] = true;
        p_cand += OperatorMatrix::projector(candidate.pairs[k].vector);
      }
    }
    residual = std::max(residual, max_abs_diff(p_ref, p_cand));
  }
  for (std::size_t k = 0; k < candidate.pairs.size(); ++k) {
    if (!used[k]) residual = std::max(residual, OperatorMatrix::projector(candidate.pairs[k].vector).max_abs());
  }
  return residual;
}

double eigenpair_residual(const OperatorMatrix& h, const Spectrum& s) {
  double r = 0.0;
  for (const auto& p : s.pairs) {
    const StateVector hv = h.apply(p.vector);
    for (std::size_t k = 0; k < hv.dim(); ++k) r = std::max(r, std::abs(hv[k] - p.value * p.vector[k]));
  }
  return r;
}

double orthonormality_defect(std::span<const StateVector> vs) {
  double d = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const Complex expected = i == j ? 1.0 : 0.0;
      d = std::max(d, std::abs(inner_product(vs[i], vs[j]) - expected));
    }
  return d;
}

double completeness_defect(std::span<const StateVector> vs) {
  if (vs.empty()) throw std::invalid_argument("completeness_defect: empty set");
  OperatorMatrix sum(vs.front().dim());
  for (const auto& v : vs) sum += OperatorMatrix::projector(v);
  return max_abs_diff(sum, OperatorMatrix::identity(sum.dim()));
}

}  // namespace tqd
