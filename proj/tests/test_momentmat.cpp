#include <doctest.h>

#include "oracle.hpp"
#include "spinpart/momentmat.hpp"
#include "spinpart/states.hpp"

using namespace spinpart;

TEST_CASE("word enumeration") {
  CHECK(word_count(0) == 1);
  CHECK(word_count(1) == 5);
  CHECK(word_count(2) == 15);
  CHECK(word_count(3) == 35);
  const auto words = enumerate_words(3);
  REQUIRE(words.size() == 35);
  CHECK(words.front().empty());
  for (std::size_t i = 1; i < words.size(); ++i) {
    CHECK(words[i - 1].degree() <= words[i].degree());
    for (std::size_t j = 0; j < i; ++j) CHECK(!(words[i] == words[j]));
  }
}

TEST_CASE("moment matrix entries match the partially transposed expectation") {
  const int n = 3;
  const Bipartition part(n, {1, 2});
  const std::vector<int> a{1, 2}, b{3};
  const auto rho = density_from_pure(random_pure(n, 21));
  const Matrix pt = oracle::partial_transpose(rho.entries(), n, b);
  const auto mm = build_moment_matrix(rho, part, 2);
  REQUIRE(mm.entries.rows() == 15);
  for (std::size_t i = 0; i < mm.words.size(); ++i) {
    for (std::size_t j = 0; j < mm.words.size(); ++j) {
      const auto& r = mm.words[i];
      const auto& c = mm.words[j];
      const Matrix op = oracle::word(n, a, b, r.a_plus, r.a_minus, r.b_plus, r.b_minus).adjoint() *
                        oracle::word(n, a, b, c.a_plus, c.a_minus, c.b_plus, c.b_minus);
      const Complex expected = oracle::expect(pt, op);
      CHECK(std::abs(mm.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - expected) < 1e-12);
    }
  }
  CHECK(std::abs(mm.entries(0, 0) - Complex(1.0)) < 1e-14);
}

TEST_CASE("word cap") {
  const auto rho = DensityMatrix::maximally_mixed(2);
  CHECK_THROWS_AS(build_moment_matrix(rho, Bipartition(2, {1}), 3, 20), std::invalid_argument);
  CHECK_NOTHROW(build_moment_matrix(rho, Bipartition(2, {1}), 3, 35));
}

TEST_CASE("principal minors") {
  Matrix m(3, 3);
  m << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  const std::vector<std::size_t> all{0, 1, 2};
  const std::vector<std::size_t> pair{0, 1};
  CHECK(principal_minor(m, all) == doctest::Approx(4.0));
  CHECK(principal_minor(m, pair) == doctest::Approx(3.0));
  CHECK(smallest_principal_minor(m, 3) == doctest::Approx(2.0));

  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK(smallest_principal_minor(indefinite, 2) == doctest::Approx(-3.0));
}

TEST_CASE("Bell state is certified by a negative minor") {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = std::sqrt(0.5);
  const auto rho = density_from_pure(PureState(2, v));
  const auto mm = build_moment_matrix(rho, Bipartition(2, {1}), 2);
  const auto certs = scan_principal_minors(mm, 3);
  REQUIRE(!certs.empty());
  for (std::size_t i = 1; i < certs.size(); ++i) CHECK(certs[i - 1].determinant <= certs[i].determinant);
  for (const auto& c : certs) {
    CHECK(c.determinant < -kCertificateTol);
    CHECK(c.words.size() == c.row_indices.size());
    CHECK(principal_minor(mm.entries, c.row_indices) == doctest::Approx(c.determinant));
  }
  CHECK_THROWS_AS(scan_principal_minors(mm, 0), std::invalid_argument);
  CHECK_THROWS_AS(scan_principal_minors(mm, 16), std::invalid_argument);
}

TEST_CASE("maximally mixed state has no certificate") {
  const auto mm = build_moment_matrix(DensityMatrix::maximally_mixed(3), Bipartition(3, {1}), 2);
  CHECK(scan_principal_minors(mm, 3).empty());
}
