#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "spinpart/criteria.hpp"
#include "spinpart/momentmat.hpp"
#include "spinpart/states.hpp"

using namespace spinpart;

namespace {

std::vector<int> to_vec(std::span<const int> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("GHZ and W values on (12,3)") {
  const Bipartition part(3, {1, 2});
  const auto g = density_from_pure(ghz(3, std::numbers::pi / 4));
  CHECK(class1_p(g, part) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(class2_p(g, part) == doctest::Approx(-1.0).epsilon(1e-12));
  const auto w = density_from_pure(w_state(3));
  CHECK(class2_p(w, part) == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
  CHECK(class1_p(w, part) < 0.0);
}

TEST_CASE("criteria agree with the Kronecker reference") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& part : all_bipartitions(n)) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto rho = random_separable(n, 2, seed);
        const auto pure = density_from_pure(random_pure(n, seed + 100));
        const auto a = to_vec(part.a_indices()), b = to_vec(part.b_indices());
        for (const auto* r : {&rho, &pure}) {
          CHECK(class1_p(*r, part) == doctest::Approx(oracle::class1(r->entries(), n, a, b)).epsilon(1e-10));
          CHECK(class2_p(*r, part) == doctest::Approx(oracle::class2(r->entries(), n, a, b)).epsilon(1e-10));
          CHECK(ppt_min_eigenvalue(*r, part) ==
                doctest::Approx(oracle::min_eig(oracle::partial_transpose(r->entries(), n, b))).epsilon(1e-10));
        }
      }
    }
  }
}

TEST_CASE("GHZ and W closed forms") {
  for (int n = 2; n <= 6; ++n) {
    for (int na = 1; na < n; ++na) {
      const Bipartition part = Bipartition::leading(n, na);
      for (double theta : {0.2, 0.7, 1.1}) {
        const double s = std::sin(theta), c = std::cos(theta);
        const double expected = s * s * c * c * std::pow(oracle::factorial(na) * oracle::factorial(n - na), 2);
        CHECK(class1_p(density_from_pure(ghz(n, theta)), part) == doctest::Approx(expected).epsilon(1e-10));
      }
      const double w_expected = std::pow(double(na) * (n - na) / n, 2);
      CHECK(class2_p(density_from_pure(w_state(n)), part) == doctest::Approx(w_expected).epsilon(1e-10));
    }
  }
}

TEST_CASE("Example 3 values in both orientations") {
  const auto e = density_from_pure(example3());
  const Bipartition p12(3, {1, 2});
  CHECK(class1_p(e, p12) == doctest::Approx(-0.5));
  CHECK(class2_p(e, p12) == doctest::Approx(0.25));
  const Bipartition p23(3, {2, 3});
  CHECK(std::abs(class1_p(e, p23)) < 1e-12);
  CHECK(std::abs(class2_p(e, p23)) < 1e-12);
  // Class I is not symmetric under A <-> B
  CHECK(class1_p(e, Bipartition(3, {1})) == doctest::Approx(-4.0));
}

TEST_CASE("criterion words and sub-minor consistency") {
  const auto [u, l] = class1_words(Bipartition(5, {1, 2, 3}));
  CHECK(u == OperatorWord{0, 2, 1, 0});
  CHECK(l == OperatorWord{1, 0, 0, 1});
  const auto [u2, l2] = class2_words();
  CHECK(u2.empty());
  CHECK(l2 == OperatorWord{0, 1, 0, 1});

  for (int n = 2; n <= 5; ++n) {
    const int degree = std::max(n - 2, 2);
    for (const auto& part : all_bipartitions(n)) {
      const auto rho = density_from_pure(random_pure(n, 300 + n));
      const auto mm = build_moment_matrix(rho, part, degree, 200);
      auto index_of = [&](const OperatorWord& w) {
        return static_cast<std::size_t>(std::find(mm.words.begin(), mm.words.end(), w) - mm.words.begin());
      };
      const auto [w1, w2] = class1_words(part);
      const std::vector<std::size_t> i1{index_of(w1), index_of(w2)};
      CHECK(-principal_minor(mm.entries, i1) == doctest::Approx(class1_p(rho, part)).epsilon(1e-10));
      const auto [v1, v2] = class2_words();
      const std::vector<std::size_t> i2{index_of(v1), index_of(v2)};
      CHECK(-principal_minor(mm.entries, i2) == doctest::Approx(class2_p(rho, part)).epsilon(1e-10));
    }
  }
}

TEST_CASE("bipartition enumeration") {
  const auto three = all_bipartitions(3);
  REQUIRE(three.size() == 3);
  CHECK(three[0].label() == "(23,1)");
  CHECK(three[1].label() == "(13,2)");
  CHECK(three[2].label() == "(12,3)");
  for (int n = 2; n <= 6; ++n) {
    const auto parts = all_bipartitions(n);
    CHECK(parts.size() == (std::size_t{1} << (n - 1)) - 1);
    for (const auto& p : parts) CHECK(p.n_a() >= p.n_b());
  }
  const auto sym = symmetric_bipartitions(5);
  REQUIRE(sym.size() == 2);
  CHECK(sym[0] == Bipartition(5, {1, 2, 3, 4}));
  CHECK(sym[1] == Bipartition(5, {1, 2, 3}));
}

TEST_CASE("summaries") {
  const auto g = density_from_pure(ghz(3, std::numbers::pi / 4));
  CHECK(analyze_all(g).summary == Summary::fully_inseparable_class1);
  const auto w = density_from_pure(w_state(3));
  CHECK(analyze_all(w).summary == Summary::fully_inseparable_class2);
  const auto e = analyze_all(density_from_pure(example3()));
  CHECK(e.summary == Summary::partially_separable);
  CHECK(e.class2_count() == 2);
  CHECK(analyze_all(DensityMatrix::maximally_mixed(3)).summary == Summary::undetected);
  CHECK(to_string(Summary::fully_inseparable_class1) == "fully inseparable Class I");
  for (const auto& r : e.reports) CHECK(r.consistent_with_oracle());
}

TEST_CASE("Cartesian identities") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto chk = cartesian_identity_check(density_from_pure(random_pure(2, seed)));
    CHECK(chk.lhs.first == doctest::Approx(chk.rhs.first).epsilon(1e-12));
    CHECK(chk.lhs.second == doctest::Approx(chk.rhs.second).epsilon(1e-12));
  }
  CHECK_THROWS_AS(cartesian_identity_check(DensityMatrix::maximally_mixed(3)), std::invalid_argument);
}

TEST_CASE("non-Hermitian input is a numerical failure") {
  Matrix m = Matrix::Identity(8, 8) / 8.0;
  m(4, 1) = Complex(0.0, 0.1);
  m(1, 4) = Complex(0.2, 0.0);
  const auto crit = DeterminantCriterion::class2(Bipartition(3, {1, 2}));
  CHECK_THROWS_AS((void)crit.evaluate(m), NumericalError);
}
