#include "hsim/pauli.hpp"

#include <bit>
#include <stdexcept>

#include <fmt/format.h>

namespace hsim {

namespace {
size_t word_count(size_t n) { return (n + 63) / 64; }

size_t popcount_and(const std::vector<uint64_t>& a,
                    const std::vector<uint64_t>& b) {
  size_t c = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    c += std::popcount(a[i] & b[i]);
  }
  return c;
}
}  // namespace

PauliString::PauliString(size_t n)
    : n_(n), x_(word_count(n), 0), z_(word_count(n), 0) {
  if (n == 0) {
    throw std::invalid_argument("PauliString requires at least one qubit");
  }
}

PauliString PauliString::single(size_t n, size_t q, char kind) {
  PauliString p(n);
  p.set_site(q, kind);
  return p;
}

PauliString PauliString::from_text(const std::string& text) {
  size_t i = 0;
  uint8_t phase = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') phase = 2;
    ++i;
  }
  if (i < text.size() && text[i] == 'i') {
    phase = (phase + 1) & 3;
    ++i;
  }
  const std::string letters = text.substr(i);
  if (letters.empty()) {
    throw std::invalid_argument("PauliString text has no letters: " + text);
  }
  PauliString p(letters.size());
  for (size_t q = 0; q < letters.size(); ++q) {
    p.set_site(q, letters[q]);
  }
  p.phase_ = (p.phase_ + phase) & 3;
  return p;
}

PauliString PauliString::embedded(size_t n, const std::vector<uint32_t>& qubits,
                                  const PauliString& local) {
  if (qubits.size() != local.num_qubits()) {
    throw std::invalid_argument("embedded: qubit list size mismatch");
  }
  PauliString p(n);
  for (size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] >= n) {
      throw std::out_of_range("embedded: qubit index out of range");
    }
    p.set_x(qubits[i], local.x_bit(i));
    p.set_z(qubits[i], local.z_bit(i));
  }
  p.phase_ = local.phase_;
  return p;
}

void PauliString::set_x(size_t q, bool v) {
  const uint64_t mask = uint64_t{1} << (q & 63);
  if (v) {
    x_[q >> 6] |= mask;
  } else {
    x_[q >> 6] &= ~mask;
  }
}

void PauliString::set_z(size_t q, bool v) {
  const uint64_t mask = uint64_t{1} << (q & 63);
  if (v) {
    z_[q >> 6] |= mask;
  } else {
    z_[q >> 6] &= ~mask;
  }
}

void PauliString::set_site(size_t q, char kind) {
  if (q >= n_) {
    throw std::out_of_range("PauliString site out of range");
  }
  // Undo a previous Y at this site so set_site is idempotent.
  if (x_bit(q) && z_bit(q)) {
    phase_ = (phase_ + 3) & 3;
  }
  switch (kind) {
    case 'I': set_x(q, false); set_z(q, false); break;
    case 'X': set_x(q, true); set_z(q, false); break;
    case 'Z': set_x(q, false); set_z(q, true); break;
    case 'Y': set_x(q, true); set_z(q, true); phase_ = (phase_ + 1) & 3; break;
    default:
      throw std::invalid_argument(fmt::format("bad Pauli letter '{}'", kind));
  }
}

char PauliString::site(size_t q) const {
  const bool x = x_bit(q);
  const bool z = z_bit(q);
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::complex<double> PauliString::phase() const {
  static const std::complex<double> units[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return units[phase_];
}

uint8_t PauliString::display_phase_power() const {
  const size_t y = popcount_and(x_, z_);
  return static_cast<uint8_t>((phase_ + 3 * (y & 3)) & 3);
}

bool PauliString::is_hermitian() const {
  return (display_phase_power() & 1) == 0;
}

int PauliString::sign() const {
  const uint8_t d = display_phase_power();
  if (d & 1) {
    throw std::logic_error("sign() on a non-Hermitian Pauli string");
  }
  return d == 0 ? 1 : -1;
}

size_t PauliString::weight() const {
  size_t w = 0;
  for (size_t i = 0; i < x_.size(); ++i) {
    w += std::popcount(x_[i] | z_[i]);
  }
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_ != other.n_) {
    throw std::invalid_argument("commutes_with: length mismatch");
  }
  const size_t anti =
      popcount_and(x_, other.z_) + popcount_and(z_, other.x_);
  return (anti & 1) == 0;
}

PauliString PauliString::operator*(const PauliString& other) const {
  PauliString r = *this;
  r *= other;
  return r;
}

PauliString& PauliString::operator*=(const PauliString& other) {
  if (n_ != other.n_) {
    throw std::invalid_argument("PauliString multiply: length mismatch");
  }
  // (i^a X^{x1}Z^{z1})(i^b X^{x2}Z^{z2}) picks up (-1)^{z1.x2} moving X^{x2}
  // left through Z^{z1}.
  const size_t cross = popcount_and(z_, other.x_);
  phase_ = static_cast<uint8_t>((phase_ + other.phase_ + 2 * (cross & 1)) & 3);
  for (size_t i = 0; i < x_.size(); ++i) {
    x_[i] ^= other.x_[i];
    z_[i] ^= other.z_[i];
  }
  return *this;
}

bool PauliString::operator==(const PauliString& other) const {
  return n_ == other.n_ && phase_ == other.phase_ && x_ == other.x_ &&
         z_ == other.z_;
}

PauliString PauliString::permuted(const std::vector<uint32_t>& site_of) const {
  if (site_of.size() != n_) {
    throw std::invalid_argument("permuted: permutation size mismatch");
  }
  PauliString p(n_);
  for (size_t q = 0; q < n_; ++q) {
    p.set_x(site_of[q], x_bit(q));
    p.set_z(site_of[q], z_bit(q));
  }
  p.phase_ = phase_;
  return p;
}

size_t PauliString::support_begin() const {
  for (size_t i = 0; i < x_.size(); ++i) {
    const uint64_t w = x_[i] | z_[i];
    if (w) return i * 64 + std::countr_zero(w);
  }
  return n_;
}

size_t PauliString::support_end() const {
  for (size_t i = x_.size(); i-- > 0;) {
    const uint64_t w = x_[i] | z_[i];
    if (w) return i * 64 + 63 - std::countl_zero(w);
  }
  return static_cast<size_t>(-1);
}

std::string PauliString::str() const {
  static const char* prefixes[4] = {"+", "+i", "-", "-i"};
  std::string s = prefixes[display_phase_power()];
  s.reserve(s.size() + n_);
  for (size_t q = 0; q < n_; ++q) {
    s.push_back(site(q));
  }
  return s;
}

}  // namespace hsim
