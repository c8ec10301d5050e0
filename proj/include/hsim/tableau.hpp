#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hsim/pauli.hpp"

namespace hsim {

enum class GateKind : uint8_t { H, S, Sdg, X, Y, Z, CNOT, CZ };

struct Gate {
  GateKind kind;
  uint32_t q0 = 0;
  uint32_t q1 = 0;  // second qubit for CNOT (target) and CZ

  static Gate h(uint32_t q) { return {GateKind::H, q, q}; }
  static Gate s(uint32_t q) { return {GateKind::S, q, q}; }
  static Gate sdg(uint32_t q) { return {GateKind::Sdg, q, q}; }
  static Gate x(uint32_t q) { return {GateKind::X, q, q}; }
  static Gate y(uint32_t q) { return {GateKind::Y, q, q}; }
  static Gate z(uint32_t q) { return {GateKind::Z, q, q}; }
  static Gate cnot(uint32_t c, uint32_t t) { return {GateKind::CNOT, c, t}; }
  static Gate cz(uint32_t a, uint32_t b) { return {GateKind::CZ, a, b}; }

  bool is_two_qubit() const {
    return kind == GateKind::CNOT || kind == GateKind::CZ;
  }
  std::string str() const;
};

/// Clifford operator C stored as the inverse conjugation map: for every
/// generator P in {X_q, Z_q} we keep the image C^dag P C.  Storing this
/// direction makes conjugate() (the hot path: every non-Clifford operation
/// and every measurement) a direct lookup, while gates applied to the
/// circuit update via prepend().
class CliffordTableau {
 public:
  explicit CliffordTableau(size_t n);

  size_t num_qubits() const { return n_; }

  const PauliString& x_image(size_t q) const { return img_[2 * q]; }
  const PauliString& z_image(size_t q) const { return img_[2 * q + 1]; }

  /// C <- G * C  (gate applied after the existing circuit).
  void prepend(const Gate& g);
  /// C <- C * G  (used by measurement collapse; rewrites all images).
  void append(const Gate& g);

  /// Returns C^dag p C with exact phase tracking.
  PauliString conjugate(const PauliString& p) const;

  /// Checks the symplectic invariants: img(X_q) anticommutes with img(Z_q),
  /// every other generator pair commutes, and every image is Hermitian.
  bool is_valid() const;

 private:
  size_t n_;
  std::vector<PauliString> img_;  // [2q] = image of X_q, [2q+1] = image of Z_q
};

}  // namespace hsim
