#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spinpart/states.hpp"

using namespace spinpart;

TEST_CASE("GHZ amplitudes") {
  const double theta = 0.3;
  const auto g = ghz(3, theta);
  CHECK(g.amplitudes()(0).real() == doctest::Approx(std::cos(theta)));
  CHECK(g.amplitudes()(7).real() == doctest::Approx(std::sin(theta)));
  CHECK(g.amplitudes().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(ghz(1, theta), std::invalid_argument);
}

TEST_CASE("W state has one excitation") {
  const auto w = w_state(4);
  for (Eigen::Index i = 0; i < 16; ++i) {
    const double expected = (i == 1 || i == 2 || i == 4 || i == 8) ? 0.5 : 0.0;
    CHECK(w.amplitudes()(i).real() == doctest::Approx(expected));
  }
}

TEST_CASE("example3 amplitudes") {
  const auto e = example3();
  CHECK(e.n_qubits() == 3);
  CHECK(std::abs(e.amplitudes()(1)) == doctest::Approx(std::sqrt(0.5)));
  CHECK(std::abs(e.amplitudes()(2)) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("basis states put qubit 1 in the most significant bit") {
  const auto b = basis_state(3, 4);
  CHECK(b.amplitudes()(4) == Complex(1.0));
  CHECK_THROWS_AS(basis_state(3, 8), std::invalid_argument);
}

TEST_CASE("Werner state") {
  const auto pure = density_from_pure(ghz(3, std::numbers::pi / 4));
  CHECK((werner(3, 1.0).entries() - pure.entries()).norm() < 1e-14);
  CHECK((werner(3, 0.0).entries() - DensityMatrix::maximally_mixed(3).entries()).norm() < 1e-14);
  const auto half = werner(3, 0.5);
  CHECK(half.entries()(0, 7).real() == doctest::Approx(0.25));
  CHECK(half.entries()(1, 1).real() == doctest::Approx(0.0625));
  CHECK_THROWS_AS(werner(3, 1.5), std::invalid_argument);
}

TEST_CASE("random families are reproducible") {
  CHECK(random_pure(3, 42).amplitudes() == random_pure(3, 42).amplitudes());
  CHECK(random_pure(3, 42).amplitudes() != random_pure(3, 43).amplitudes());
  CHECK(random_separable(3, 4, 7).entries() == random_separable(3, 4, 7).entries());
  StateRng a(5), b(5);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform() == b.uniform());
  StateRng c(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("random separable states are valid density matrices") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_separable(3, 3, seed);
    CHECK(std::abs(rho.entries().trace() - Complex(1.0)) < 1e-12);
    CHECK(min_eigenvalue(rho.entries()) > -1e-12);
  }
}

TEST_CASE("random product states factorise") {
  const auto psi = density_from_pure(random_product_pure(3, 17));
  const std::vector<int> first{1}, rest{2, 3};
  const auto product = tensor(partial_trace(psi, first), partial_trace(psi, rest));
  CHECK((product.entries() - psi.entries()).norm() < 1e-12);
}

TEST_CASE("state spec validation") {
  StateSpec s;
  s.family = StateFamily::ghz;
  s.n_qubits = 3;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);
  s.theta = 0.5;
  CHECK_NOTHROW(validate(s));
  s.p = 0.5;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);

  StateSpec w;
  w.family = StateFamily::werner;
  w.n_qubits = 4;
  w.p = 0.3;
  CHECK(make_state(w).n_qubits() == 4);

  StateSpec e;
  e.family = StateFamily::example3;
  e.n_qubits = 4;
  CHECK_THROWS_AS(validate(e), std::invalid_argument);

  CHECK(parse_state_family("separable_random") == StateFamily::separable_random);
  CHECK_THROWS_AS(parse_state_family("bell"), std::invalid_argument);
  for (auto f : {StateFamily::ghz, StateFamily::w, StateFamily::werner, StateFamily::example3, StateFamily::basis,
                 StateFamily::product_random, StateFamily::separable_random, StateFamily::pure_random}) {
    CHECK(parse_state_family(to_string(f)) == f);
  }
}

TEST_CASE("state spec JSON round trip") {
  StateSpec s;
  s.family = StateFamily::separable_random;
  s.n_qubits = 3;
  s.seed = 12;
  s.terms = 2;
  const std::string text = state_spec_to_json(s);
  const StateSpec back = state_spec_from_json(text);
  CHECK(state_spec_to_json(back) == text);
  CHECK_THROWS_AS(state_spec_from_json(R"({"family":"w","n":3,"colour":1})"), std::invalid_argument);
  CHECK_THROWS_AS(state_spec_from_json("{not json"), std::invalid_argument);
  CHECK(state_spec_from_json(R"({"family":"example3"})").n_qubits == 3);
}
