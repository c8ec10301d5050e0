#include "hsim/tableau.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace hsim {

std::string Gate::str() const {
  switch (kind) {
    case GateKind::H: return fmt::format("H {}", q0);
    case GateKind::S: return fmt::format("S {}", q0);
    case GateKind::Sdg: return fmt::format("SDG {}", q0);
    case GateKind::X: return fmt::format("X {}", q0);
    case GateKind::Y: return fmt::format("Y {}", q0);
    case GateKind::Z: return fmt::format("Z {}", q0);
    case GateKind::CNOT: return fmt::format("CNOT {} {}", q0, q1);
    case GateKind::CZ: return fmt::format("CZ {} {}", q0, q1);
  }
  return "?";
}

CliffordTableau::CliffordTableau(size_t n) : n_(n) {
  if (n == 0) {
    throw std::invalid_argument("CliffordTableau requires at least one qubit");
  }
  img_.reserve(2 * n);
  for (size_t q = 0; q < n; ++q) {
    img_.push_back(PauliString::single(n, q, 'X'));
    img_.push_back(PauliString::single(n, q, 'Z'));
  }
}

void CliffordTableau::prepend(const Gate& g) {
  if (g.q0 >= n_ || (g.is_two_qubit() && g.q1 >= n_)) {
    throw std::out_of_range("prepend: gate qubit out of range");
  }
  PauliString& xi = img_[2 * g.q0];
  PauliString& zi = img_[2 * g.q0 + 1];
  switch (g.kind) {
    case GateKind::H:
      std::swap(xi, zi);
      break;
    case GateKind::S: {
      // T'(X) = T(S^dag X S) = T(-Y) = -i * T(X) T(Z)
      PauliString p = xi * zi;
      p.set_phase_power((p.phase_power() + 3) & 3);
      xi = std::move(p);
      break;
    }
    case GateKind::Sdg: {
      // T'(X) = T(S X S^dag) = T(Y) = i * T(X) T(Z)
      PauliString p = xi * zi;
      p.set_phase_power((p.phase_power() + 1) & 3);
      xi = std::move(p);
      break;
    }
    case GateKind::X:
      zi.set_phase_power((zi.phase_power() + 2) & 3);
      break;
    case GateKind::Y:
      xi.set_phase_power((xi.phase_power() + 2) & 3);
      zi.set_phase_power((zi.phase_power() + 2) & 3);
      break;
    case GateKind::Z:
      xi.set_phase_power((xi.phase_power() + 2) & 3);
      break;
    case GateKind::CNOT: {
      // X_c -> X_c X_t, Z_t -> Z_c Z_t
      img_[2 * g.q0] *= img_[2 * g.q1];
      img_[2 * g.q1 + 1] *= img_[2 * g.q0 + 1];
      break;
    }
    case GateKind::CZ: {
      // X_a -> X_a Z_b, X_b -> Z_a X_b
      img_[2 * g.q0] *= img_[2 * g.q1 + 1];
      img_[2 * g.q1] *= img_[2 * g.q0 + 1];
      break;
    }
  }
}

namespace {

/// In-place G^dag P G for an elementary gate, exact phase included.
void conjugate_by_gate(PauliString& p, const Gate& g) {
  const bool x0 = p.x_bit(g.q0);
  const bool z0 = p.z_bit(g.q0);
  switch (g.kind) {
    case GateKind::H:
      p.set_x(g.q0, z0);
      p.set_z(g.q0, x0);
      if (x0 && z0) p.set_phase_power((p.phase_power() + 2) & 3);
      break;
    case GateKind::S:
      // X -> -Y (stored: z bit set, phase += 3); XZ -> -iX
      if (x0) {
        p.set_z(g.q0, !z0);
        p.set_phase_power((p.phase_power() + 3) & 3);
      }
      break;
    case GateKind::Sdg:
      if (x0) {
        p.set_z(g.q0, !z0);
        p.set_phase_power((p.phase_power() + 1) & 3);
      }
      break;
    case GateKind::X:
      if (z0) p.set_phase_power((p.phase_power() + 2) & 3);
      break;
    case GateKind::Y:
      if (x0 != z0) p.set_phase_power((p.phase_power() + 2) & 3);
      break;
    case GateKind::Z:
      if (x0) p.set_phase_power((p.phase_power() + 2) & 3);
      break;
    case GateKind::CNOT: {
      const bool x1 = p.x_bit(g.q1);
      const bool z1 = p.z_bit(g.q1);
      if (x0 && z1 && (x1 == z0)) {
        p.set_phase_power((p.phase_power() + 2) & 3);
      }
      p.set_x(g.q1, x1 != x0);
      p.set_z(g.q0, z0 != z1);
      break;
    }
    case GateKind::CZ: {
      const bool x1 = p.x_bit(g.q1);
      if (x0 && x1) p.set_phase_power((p.phase_power() + 2) & 3);
      p.set_z(g.q1, p.z_bit(g.q1) != x0);
      p.set_z(g.q0, z0 != x1);
      break;
    }
  }
}

}  // namespace

void CliffordTableau::append(const Gate& g) {
  if (g.q0 >= n_ || (g.is_two_qubit() && g.q1 >= n_)) {
    throw std::out_of_range("append: gate qubit out of range");
  }
  for (PauliString& img : img_) {
    conjugate_by_gate(img, g);
  }
}

PauliString CliffordTableau::conjugate(const PauliString& p) const {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("conjugate: length mismatch");
  }
  PauliString result(n_);
  result.set_phase_power(p.phase_power());
  // The factors X_q^{x_q}, Z_q^{z_q} for distinct q commute, so their images
  // commute too and any site order gives the same phase; within a site X
  // comes before Z.
  size_t lo = p.support_begin();
  if (lo == n_) return result;
  size_t hi = p.support_end();
  for (size_t q = lo; q <= hi; ++q) {
    if (p.x_bit(q)) result *= img_[2 * q];
    if (p.z_bit(q)) result *= img_[2 * q + 1];
  }
  return result;
}

bool CliffordTableau::is_valid() const {
  for (size_t q = 0; q < n_; ++q) {
    if (!img_[2 * q].is_hermitian() || !img_[2 * q + 1].is_hermitian()) {
      return false;
    }
    if (img_[2 * q].commutes_with(img_[2 * q + 1])) return false;
    for (size_t r = q + 1; r < n_; ++r) {
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          if (!img_[2 * q + a].commutes_with(img_[2 * r + b])) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace hsim
