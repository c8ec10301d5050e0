#include "oracles/dense_sim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace hsim::testing {

namespace {
constexpr std::complex<double> kI(0.0, 1.0);

std::complex<double> unit_power(uint8_t k) {
  switch (k & 3) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}
}  // namespace

DenseState::DenseState(size_t n) : n_(n), a_(size_t{1} << n, 0.0) {
  a_[0] = 1.0;
}

DenseState DenseState::from_amplitudes(size_t n,
                                       std::vector<std::complex<double>> amps) {
  DenseState s(n);
  if (amps.size() != (size_t{1} << n)) {
    throw std::invalid_argument("from_amplitudes: wrong size");
  }
  s.a_ = std::move(amps);
  return s;
}

void DenseState::apply_gate(const Gate& g) {
  const size_t dim = a_.size();
  const size_t b0 = size_t{1} << g.q0;
  switch (g.kind) {
    case GateKind::H: {
      const double inv = 1.0 / std::sqrt(2.0);
      for (size_t i = 0; i < dim; ++i) {
        if (i & b0) continue;
        const auto lo = a_[i], hi = a_[i | b0];
        a_[i] = inv * (lo + hi);
        a_[i | b0] = inv * (lo - hi);
      }
      break;
    }
    case GateKind::S:
      for (size_t i = 0; i < dim; ++i) {
        if (i & b0) a_[i] *= kI;
      }
      break;
    case GateKind::Sdg:
      for (size_t i = 0; i < dim; ++i) {
        if (i & b0) a_[i] *= -kI;
      }
      break;
    case GateKind::X:
      for (size_t i = 0; i < dim; ++i) {
        if (!(i & b0)) std::swap(a_[i], a_[i | b0]);
      }
      break;
    case GateKind::Y:
      for (size_t i = 0; i < dim; ++i) {
        if (!(i & b0)) {
          const auto lo = a_[i], hi = a_[i | b0];
          a_[i] = -kI * hi;
          a_[i | b0] = kI * lo;
        }
      }
      break;
    case GateKind::Z:
      for (size_t i = 0; i < dim; ++i) {
        if (i & b0) a_[i] = -a_[i];
      }
      break;
    case GateKind::CNOT: {
      const size_t bt = size_t{1} << g.q1;
      for (size_t i = 0; i < dim; ++i) {
        if ((i & b0) && !(i & bt)) std::swap(a_[i], a_[i | bt]);
      }
      break;
    }
    case GateKind::CZ: {
      const size_t bt = size_t{1} << g.q1;
      for (size_t i = 0; i < dim; ++i) {
        if ((i & b0) && (i & bt)) a_[i] = -a_[i];
      }
      break;
    }
  }
}

void DenseState::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("apply_pauli: length mismatch");
  }
  size_t xmask = 0, zmask = 0;
  for (size_t q = 0; q < n_; ++q) {
    if (p.x_bit(q)) xmask |= size_t{1} << q;
    if (p.z_bit(q)) zmask |= size_t{1} << q;
  }
  const std::complex<double> ph = unit_power(p.phase_power());
  std::vector<std::complex<double>> out(a_.size());
  for (size_t i = 0; i < a_.size(); ++i) {
    const double zsign = (std::popcount(i & zmask) & 1) ? -1.0 : 1.0;
    out[i ^ xmask] = ph * zsign * a_[i];
  }
  a_ = std::move(out);
}

void DenseState::apply_exp_i_theta_pauli(double theta, const PauliString& p) {
  DenseState rotated = *this;
  rotated.apply_pauli(p);
  const double c = std::cos(theta), s = std::sin(theta);
  for (size_t i = 0; i < a_.size(); ++i) {
    a_[i] = c * a_[i] + kI * s * rotated.a_[i];
  }
}

double DenseState::expectation(const PauliString& p) const {
  DenseState applied = *this;
  applied.apply_pauli(p);
  const std::complex<double> v = inner(applied);
  if (std::abs(v.imag()) > 1e-9) {
    throw std::runtime_error("dense expectation has an imaginary part");
  }
  return v.real();
}

double DenseState::project(const PauliString& p, int sign) {
  DenseState applied = *this;
  applied.apply_pauli(p);
  double prob = 0.0;
  for (size_t i = 0; i < a_.size(); ++i) {
    a_[i] = 0.5 * (a_[i] + static_cast<double>(sign) * applied.a_[i]);
    prob += std::norm(a_[i]);
  }
  if (prob < 1e-12) {
    throw std::runtime_error("dense projection onto a zero-amplitude outcome");
  }
  const double inv = 1.0 / std::sqrt(prob);
  for (auto& amp : a_) amp *= inv;
  return prob;
}

int DenseState::measure_z(size_t q, double u, double* prob_plus) {
  const size_t bq = size_t{1} << q;
  double p0 = 0.0;
  for (size_t i = 0; i < a_.size(); ++i) {
    if (!(i & bq)) p0 += std::norm(a_[i]);
  }
  if (prob_plus) *prob_plus = p0;
  const int outcome = (u < p0) ? 1 : -1;
  const bool keep_one = outcome < 0;
  double prob = keep_one ? 1.0 - p0 : p0;
  if (prob < 1e-12) {
    throw std::runtime_error("dense measurement underflow");
  }
  const double inv = 1.0 / std::sqrt(prob);
  for (size_t i = 0; i < a_.size(); ++i) {
    if (((i & bq) != 0) != keep_one) {
      a_[i] = 0.0;
    } else {
      a_[i] *= inv;
    }
  }
  return outcome;
}

double DenseState::norm() const {
  double s = 0.0;
  for (const auto& amp : a_) s += std::norm(amp);
  return std::sqrt(s);
}

void DenseState::normalize() {
  const double inv = 1.0 / norm();
  for (auto& amp : a_) amp *= inv;
}

std::complex<double> DenseState::inner(const DenseState& other) const {
  std::complex<double> v = 0.0;
  for (size_t i = 0; i < a_.size(); ++i) {
    v += std::conj(a_[i]) * other.a_[i];
  }
  return v;
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  const size_t n = p.num_qubits();
  if (n > 12) {
    throw std::invalid_argument("pauli_matrix: too many qubits");
  }
  const size_t dim = size_t{1} << n;
  size_t xmask = 0, zmask = 0;
  for (size_t q = 0; q < n; ++q) {
    if (p.x_bit(q)) xmask |= size_t{1} << q;
    if (p.z_bit(q)) zmask |= size_t{1} << q;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const std::complex<double> ph = unit_power(p.phase_power());
  for (size_t col = 0; col < dim; ++col) {
    const double zsign = (std::popcount(col & zmask) & 1) ? -1.0 : 1.0;
    m(col ^ xmask, col) = ph * zsign;
  }
  return m;
}

Eigen::MatrixXcd gate_matrix(const Gate& g, size_t n) {
  const size_t dim = size_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (size_t col = 0; col < dim; ++col) {
    DenseState s(n);
    std::vector<std::complex<double>> amps(dim, 0.0);
    amps[col] = 1.0;
    s = DenseState::from_amplitudes(n, std::move(amps));
    s.apply_gate(g);
    for (size_t row = 0; row < dim; ++row) {
      m(row, col) = s.amps()[row];
    }
  }
  return m;
}

}  // namespace hsim::testing
