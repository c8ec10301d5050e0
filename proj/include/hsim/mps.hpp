#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hsim/pauli.hpp"

namespace hsim {

/// Matrix product state over n sites of local dimension 2, kept in mixed
/// canonical form with an orthogonality center.  Bond dimensions are capped
/// at chi_max by discarding the smallest singular values; every truncation
/// renormalizes the state and adds the lost squared weight to a cumulative
/// ledger.
class MatrixProductState {
 public:
  MatrixProductState(size_t n, size_t chi_max);
  static MatrixProductState from_basis_state(const std::vector<uint8_t>& bits,
                                             size_t chi_max);

  size_t num_sites() const { return n_; }
  size_t chi_max() const { return chi_max_; }
  void set_chi_max(size_t chi_max);

  /// Dimension of the bond between sites cut and cut+1 (cut in [0, n-2]).
  size_t bond_dim(size_t cut) const;
  size_t max_bond_dim() const;
  /// Largest bond dimension observed over the object's lifetime.
  size_t peak_bond_dim() const { return peak_bond_; }
  double discarded_weight() const { return discarded_; }
  std::complex<double> global_phase() const { return phase_; }

  void apply_pauli(const PauliString& p);
  /// State becomes cos(theta)|M> + i sin(theta) p|M>, applied as a
  /// bond-dimension-2 product operator over the support interval of p,
  /// recompressed to chi_max.
  void apply_pauli_rotation(double theta, const PauliString& p);
  /// <M|p|M> for Hermitian p.  May move the orthogonality center (gauge
  /// only); the state is unchanged.
  double expectation_pauli(const PauliString& p);
  /// Projects onto (I + sign*p)/2, renormalizes, truncates; returns the
  /// pre-projection probability of the outcome.  Throws when that
  /// probability is below 1e-12.
  double project_pauli(const PauliString& p, int sign);
  /// Singular values at the given cut of the normalized state, descending.
  std::vector<double> schmidt_spectrum(size_t cut);
  void truncate(size_t chi_max);

  /// True while the state is an exact computational basis product state
  /// (tensor entries in {0, +-1, +-i}); enables exact fast paths.
  bool is_computational_basis() const { return basis_exact_; }
  std::vector<uint8_t> basis_bits() const;
  /// Collapses to the given basis state (used by the measurement fast path).
  void set_basis_state(const std::vector<uint8_t>& bits);

  /// Full amplitude vector; site s carries bit s of the index. n <= 20.
  std::vector<std::complex<double>> to_statevector() const;

  /// Verifies canonical-form isometries and bond caps (test support).
  bool check_invariants(double tol = 1e-10) const;

 private:
  struct Site {
    Eigen::MatrixXcd a[2];  // a[s] has shape (left bond) x (right bond)
    size_t left() const { return a[0].rows(); }
    size_t right() const { return a[0].cols(); }
  };

  MatrixProductState(const std::vector<uint8_t>& bits, size_t chi_max);

  void move_center_to(size_t t);
  void left_orthonormalize(size_t q);
  void right_orthonormalize(size_t q);
  /// Restores canonical form over [l, r] after an MPO application (center
  /// must have been at l), truncating every interior bond; ends with the
  /// center at r.
  void recompress_interval(size_t l, size_t r);
  void apply_local(size_t q, bool x, bool z);
  void note_bonds();

  size_t n_;
  size_t chi_max_;
  size_t center_ = 0;
  std::vector<Site> sites_;
  double discarded_ = 0.0;
  size_t peak_bond_ = 1;
  std::complex<double> phase_ = 1.0;
  bool basis_exact_ = true;
};

}  // namespace hsim
