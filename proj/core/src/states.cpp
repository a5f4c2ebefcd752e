#include "spinpart/states.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace spinpart {

namespace {

void require_at_least_two(int n, const char* what) {
  if (n < 2) throw std::invalid_argument(std::string(what) + ": needs n >= 2, got " + std::to_string(n));
  dimension_for(n);
}

std::array<Complex, 2> haar_qubit(StateRng& rng) {
  const double re0 = rng.gaussian();
  const double im0 = rng.gaussian();
  const double re1 = rng.gaussian();
  const double im1 = rng.gaussian();
  const double norm = std::sqrt(re0 * re0 + im0 * im0 + re1 * re1 + im1 * im1);
  return {Complex{re0 / norm, im0 / norm}, Complex{re1 / norm, im1 / norm}};
}

PureState product_from(int n, StateRng& rng) {
  Vector amps = Vector::Ones(1);
  for (int q = 0; q < n; ++q) {
    const auto qubit = haar_qubit(rng);
    Vector next(amps.size() * 2);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      next(2 * i) = amps(i) * qubit[0];
      next(2 * i + 1) = amps(i) * qubit[1];
    }
    amps = std::move(next);
  }
  amps.normalize();
  return PureState(n, std::move(amps));
}

}  // namespace

StateRng::StateRng(std::uint64_t seed) : engine_(seed) {}

double StateRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double StateRng::gaussian() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

PureState ghz(int n, double theta) {
  require_at_least_two(n, "ghz");
  if (!std::isfinite(theta)) throw std::invalid_argument("ghz: theta must be finite");
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dimension_for(n)));
  amps(0) = std::cos(theta);
  amps(amps.size() - 1) = std::sin(theta);
  return PureState(n, std::move(amps));
}

PureState w_state(int n) {
  require_at_least_two(n, "w");
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dimension_for(n)));
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int q = 0; q < n; ++q) amps(Eigen::Index{1} << q) = a;
  return PureState(n, std::move(amps));
}

DensityMatrix werner(int n, double p) {
  require_at_least_two(n, "werner");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("werner: p must lie in [0, 1], got " + std::to_string(p));
  }
  const DensityMatrix target = density_from_pure(ghz(n, std::numbers::pi / 4.0));
  const DensityMatrix noise = DensityMatrix::maximally_mixed(n);
  const MixtureTerm terms[] = {{p, &target}, {1.0 - p, &noise}};
  return mix(terms);
}

PureState example3() {
  Vector amps = Vector::Zero(8);
  amps(1) = 1.0 / std::numbers::sqrt2;  // |001>
  amps(2) = 1.0 / std::numbers::sqrt2;  // |010>
  return PureState(3, std::move(amps));
}

PureState basis_state(int n, std::uint64_t index) {
  const auto d = dimension_for(n);
  if (index >= d) {
    throw std::invalid_argument("basis_state: index " + std::to_string(index) + " out of range for " +
                                std::to_string(n) + " qubits");
  }
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(d));
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(n, std::move(amps));
}

PureState random_product_pure(int n, std::uint64_t seed) {
  dimension_for(n);
  StateRng rng(seed);
  return product_from(n, rng);
}

PureState random_pure(int n, std::uint64_t seed) {
  const auto d = static_cast<Eigen::Index>(dimension_for(n));
  StateRng rng(seed);
  Vector amps(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = rng.gaussian();
    const double im = rng.gaussian();
    amps(i) = Complex{re, im};
  }
  amps.normalize();
  return PureState(n, std::move(amps));
}

DensityMatrix random_separable(int n, int n_terms, std::uint64_t seed) {
  if (n_terms < 1) throw std::invalid_argument("random_separable: n_terms must be >= 1");
  dimension_for(n);
  StateRng rng(seed);
  std::vector<DensityMatrix> components;
  std::vector<double> weights;
  components.reserve(static_cast<std::size_t>(n_terms));
  for (int t = 0; t < n_terms; ++t) components.push_back(density_from_pure(product_from(n, rng)));
  double total = 0.0;
  for (int t = 0; t < n_terms; ++t) {
    weights.push_back(-std::log(1.0 - rng.uniform()));
    total += weights.back();
  }
  std::vector<MixtureTerm> terms;
  double assigned = 0.0;
  for (int t = 0; t < n_terms; ++t) {
    // Last weight absorbs rounding so the sum is exactly representable as 1.
    const double w = t + 1 == n_terms ? std::max(0.0, 1.0 - assigned) : weights[static_cast<std::size_t>(t)] / total;
    assigned += w;
    terms.push_back({w, &components[static_cast<std::size_t>(t)]});
  }
  return mix(terms);
}

std::string to_string(StateFamily family) {
  switch (family) {
    case StateFamily::ghz: return "ghz";
    case StateFamily::w: return "w";
    case StateFamily::werner: return "werner";
    case StateFamily::example3: return "example3";
    case StateFamily::basis: return "basis";
    case StateFamily::product_random: return "product_random";
    case StateFamily::separable_random: return "separable_random";
    case StateFamily::pure_random: return "pure_random";
  }
  return "?";
}

StateFamily parse_state_family(std::string_view name) {
  for (auto f : {StateFamily::ghz, StateFamily::w, StateFamily::werner, StateFamily::example3,
                 StateFamily::basis, StateFamily::product_random, StateFamily::separable_random,
                 StateFamily::pure_random}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown state family '" + std::string(name) + "'");
}

void validate(const StateSpec& spec) {
  const auto family = to_string(spec.family);
  auto forbid = [&](bool present, const char* field) {
    if (present) throw std::invalid_argument("state '" + family + "' does not take " + field);
  };
  auto require = [&](bool present, const char* field) {
    if (!present) throw std::invalid_argument("state '" + family + "' requires " + field);
  };
  const bool is_random = spec.family == StateFamily::product_random ||
                         spec.family == StateFamily::separable_random ||
                         spec.family == StateFamily::pure_random;
  require(spec.family == StateFamily::ghz ? spec.theta.has_value() : true, "theta");
  forbid(spec.family != StateFamily::ghz && spec.theta.has_value(), "theta");
  require(spec.family == StateFamily::werner ? spec.p.has_value() : true, "p");
  forbid(spec.family != StateFamily::werner && spec.p.has_value(), "p");
  require(is_random ? spec.seed.has_value() : true, "seed");
  forbid(!is_random && spec.seed.has_value(), "seed");
  require(spec.family == StateFamily::basis ? spec.index.has_value() : true, "index");
  forbid(spec.family != StateFamily::basis && spec.index.has_value(), "index");
  forbid(spec.family != StateFamily::separable_random && spec.terms.has_value(), "terms");

  if (spec.family == StateFamily::example3) {
    if (spec.n_qubits != 0 && spec.n_qubits != 3) {
      throw std::invalid_argument("state 'example3' is fixed to 3 qubits");
    }
  } else {
    dimension_for(spec.n_qubits);
  }
  if (spec.family == StateFamily::werner && !(*spec.p >= 0.0 && *spec.p <= 1.0)) {
    throw std::invalid_argument("werner: p must lie in [0, 1]");
  }
  if (spec.terms && *spec.terms < 1) throw std::invalid_argument("terms must be >= 1");
}

DensityMatrix make_state(const StateSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case StateFamily::ghz: return density_from_pure(ghz(spec.n_qubits, *spec.theta));
    case StateFamily::w: return density_from_pure(w_state(spec.n_qubits));
    case StateFamily::werner: return werner(spec.n_qubits, *spec.p);
    case StateFamily::example3: return density_from_pure(example3());
    case StateFamily::basis: return density_from_pure(basis_state(spec.n_qubits, *spec.index));
    case StateFamily::product_random:
      return density_from_pure(random_product_pure(spec.n_qubits, *spec.seed));
    case StateFamily::separable_random:
      return random_separable(spec.n_qubits, spec.terms.value_or(4), *spec.seed);
    case StateFamily::pure_random: return density_from_pure(random_pure(spec.n_qubits, *spec.seed));
  }
  throw std::logic_error("make_state: unhandled family");
}

}  // namespace spinpart
