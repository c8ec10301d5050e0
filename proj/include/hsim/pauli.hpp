#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace hsim {

/// Phased n-qubit Pauli operator in symplectic form.
///
/// The represented operator is i^k * prod_q X_q^{x_q} Z_q^{z_q} with the
/// convention Y = i*X*Z, so the Hermitian letter string "+XYZ" is stored
/// with k equal to the number of Y sites (mod 4).  Immutable-by-convention
/// value type; cheap to copy and safe to share across threads.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(size_t n);

  static PauliString identity(size_t n) { return PauliString(n); }
  /// kind is one of 'I', 'X', 'Y', 'Z'.
  static PauliString single(size_t n, size_t q, char kind);
  /// Parses "[+|-][i]LLL..." with letters I/X/Y/Z, e.g. "-iXYZI".
  static PauliString from_text(const std::string& text);
  /// Places `local` (on local.num_qubits() qubits) at the given qubit ids.
  static PauliString embedded(size_t n, const std::vector<uint32_t>& qubits,
                              const PauliString& local);

  size_t num_qubits() const { return n_; }

  bool x_bit(size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z_bit(size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
  void set_x(size_t q, bool v);
  void set_z(size_t q, bool v);
  /// Sets the Hermitian letter at site q, adjusting the phase so that the
  /// site contributes I, X, Y or Z (Y bumps the stored power by one).
  void set_site(size_t q, char kind);
  char site(size_t q) const;

  /// Stored phase exponent k of i^k (phase over the X^x Z^z product form).
  uint8_t phase_power() const { return phase_; }
  void set_phase_power(uint8_t k) { phase_ = k & 3; }
  std::complex<double> phase() const;

  /// Phase of the operator written over Hermitian letters I/X/Y/Z.
  /// The operator is Hermitian iff this is 0 (+1) or 2 (-1).
  uint8_t display_phase_power() const;
  bool is_hermitian() const;
  /// +1 or -1; requires is_hermitian().
  int sign() const;

  size_t weight() const;
  bool is_identity() const { return weight() == 0; }
  bool commutes_with(const PauliString& other) const;

  PauliString operator*(const PauliString& other) const;
  PauliString& operator*=(const PauliString& other);
  bool operator==(const PauliString& other) const;
  bool operator!=(const PauliString& other) const { return !(*this == other); }

  /// Rebuilds the string with qubit q mapped to position site_of[q].
  PauliString permuted(const std::vector<uint32_t>& site_of) const;

  /// First/last non-identity site, or n (resp. -1) when the string is
  /// the identity.
  size_t support_begin() const;
  size_t support_end() const;

  /// Rendering "+XYZI...", "-iY..." used by logs and golden files.
  std::string str() const;

  const std::vector<uint64_t>& x_words() const { return x_; }
  const std::vector<uint64_t>& z_words() const { return z_; }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> x_;
  std::vector<uint64_t> z_;
  uint8_t phase_ = 0;  // i^phase_
};

}  // namespace hsim
