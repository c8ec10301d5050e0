#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hsim/pauli.hpp"
#include "hsim/rng.hpp"
#include "oracles/dense_sim.hpp"
#include "test_util.hpp"

using namespace hsim;
using namespace hsim::testing;

TEST_CASE("X times Z is -iY") {
  const auto x = PauliString::from_text("X");
  const auto z = PauliString::from_text("Z");
  const auto p = x * z;
  CHECK(p.str() == "-iY");
  CHECK(p.x_bit(0));
  CHECK(p.z_bit(0));
  CHECK(!p.is_hermitian());
  CHECK(p == PauliString::from_text("-iY"));
}

TEST_CASE("identity is a two-sided unit") {
  RngStream rng(11);
  for (int t = 0; t < 100; ++t) {
    const size_t n = 1 + rng.below(8);
    const auto p = random_pauli(n, rng);
    const auto id = PauliString::identity(n);
    CHECK(id * p == p);
    CHECK(p * id == p);
  }
}

TEST_CASE("multiplication matches dense matrices up to n=4") {
  RngStream rng(12);
  for (int t = 0; t < 200; ++t) {
    const size_t n = 1 + rng.below(4);
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    const Eigen::MatrixXcd expect = pauli_matrix(a) * pauli_matrix(b);
    const Eigen::MatrixXcd got = pauli_matrix(a * b);
    CHECK((expect - got).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("multiplication is associative and phase-exact (dense action, n<=8)") {
  RngStream rng(13);
  for (int t = 0; t < 1000; ++t) {
    const size_t n = 1 + rng.below(8);
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    const auto c = random_pauli(n, rng);
    const auto ab_c = (a * b) * c;
    const auto a_bc = a * (b * c);
    CHECK(ab_c == a_bc);

    // dense oracle: apply factors one at a time to a random state
    DenseState v = random_dense_state(n, rng);
    DenseState step = v;
    step.apply_pauli(c);
    step.apply_pauli(b);
    step.apply_pauli(a);
    DenseState merged = v;
    merged.apply_pauli(ab_c);
    CHECK(max_amp_diff(step, merged) < 1e-12);
  }
}

TEST_CASE("commutes: basic cases") {
  CHECK(PauliString::from_text("XI").commutes_with(PauliString::from_text("XX")));
  CHECK(!PauliString::from_text("X").commutes_with(PauliString::from_text("Z")));
  CHECK_THROWS_AS(PauliString::from_text("X").commutes_with(
                      PauliString::from_text("XX")),
                  std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_text("X") * PauliString::from_text("XX"),
                  std::invalid_argument);
}

TEST_CASE("commutes agrees with dense commutator, n<=6") {
  RngStream rng(14);
  for (int t = 0; t < 1000; ++t) {
    const size_t n = 1 + rng.below(6);
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    DenseState v = random_dense_state(n, rng);
    DenseState ab = v;
    ab.apply_pauli(b);
    ab.apply_pauli(a);
    DenseState ba = v;
    ba.apply_pauli(a);
    ba.apply_pauli(b);
    bool equal = max_amp_diff(ab, ba) < 1e-12;
    CHECK(equal == a.commutes_with(b));
    if (!equal) {
      // Pauli pairs either commute or anticommute.
      for (auto& amp : const_cast<std::vector<std::complex<double>>&>(
               ba.amps())) {
        amp = -amp;
      }
      CHECK(max_amp_diff(ab, ba) < 1e-12);
    }
  }
}

TEST_CASE("commutes is symmetric; identity and self always commute") {
  RngStream rng(15);
  for (int t = 0; t < 300; ++t) {
    const size_t n = 1 + rng.below(8);
    const auto a = random_pauli(n, rng);
    const auto b = random_pauli(n, rng);
    CHECK(a.commutes_with(b) == b.commutes_with(a));
    CHECK(a.commutes_with(a));
    CHECK(a.commutes_with(PauliString::identity(n)));
  }
}

TEST_CASE("weight") {
  CHECK(PauliString::from_text("III").weight() == 0);
  CHECK(PauliString::from_text("ZZ").weight() == 2);
  RngStream rng(16);
  for (int t = 0; t < 100; ++t) {
    const size_t n = 1 + rng.below(10);
    const auto p = random_pauli(n, rng);
    CHECK(p.weight() == (p * PauliString::identity(n)).weight());
  }
}

TEST_CASE("hermitian strings square to +I") {
  RngStream rng(17);
  for (int t = 0; t < 300; ++t) {
    const size_t n = 1 + rng.below(8);
    const auto p = random_pauli(n, rng, /*hermitian=*/true);
    REQUIRE(p.is_hermitian());
    const auto sq = p * p;
    CHECK(sq.weight() == 0);
    CHECK(sq.phase() == std::complex<double>(1, 0));
  }
}

TEST_CASE("square sign matches the self symplectic overlap") {
  // p^2 = (-1)^{|z & x|} i^{2k} I for stored form i^k X^x Z^z.
  RngStream rng(18);
  for (int t = 0; t < 300; ++t) {
    const size_t n = 1 + rng.below(8);
    const auto p = random_pauli(n, rng);
    size_t overlap = 0;
    for (size_t q = 0; q < n; ++q) {
      overlap += p.x_bit(q) && p.z_bit(q);
    }
    const int expect = ((overlap + p.phase_power()) % 2) ? -1 : 1;
    const auto sq = p * p;
    CHECK(sq.weight() == 0);
    CHECK(sq.phase().real() == static_cast<double>(expect));
  }
}

TEST_CASE("text rendering round-trips") {
  RngStream rng(19);
  for (int t = 0; t < 200; ++t) {
    const size_t n = 1 + rng.below(12);
    const auto p = random_pauli(n, rng);
    CHECK(PauliString::from_text(p.str()) == p);
  }
  CHECK(PauliString::from_text("+XYZI").str() == "+XYZI");
  CHECK(PauliString::from_text("Y").phase_power() == 1);
  CHECK(PauliString::from_text("Y").is_hermitian());
  CHECK(PauliString::from_text("Y").sign() == 1);
  CHECK(PauliString::from_text("-Y").sign() == -1);
}

TEST_CASE("embedded and permuted") {
  const auto zz = PauliString::from_text("ZZ");
  const auto p = PauliString::embedded(5, {1, 3}, zz);
  CHECK(p.str() == "+IZIZI");
  std::vector<uint32_t> site_of = {4, 3, 2, 1, 0};
  CHECK(p.permuted(site_of).str() == "+IZIZI");
  std::vector<uint32_t> shift = {1, 2, 3, 4, 0};
  CHECK(p.permuted(shift).str() == "+IIZIZ");
  CHECK(p.support_begin() == 1);
  CHECK(p.support_end() == 3);
}
