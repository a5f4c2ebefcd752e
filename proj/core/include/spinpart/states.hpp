#pragma once

// State families: GHZ(theta), W, GHZ-Werner mixtures, the three-qubit
// non-symmetric example, basis states, and seeded random families.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "spinpart/qstate.hpp"

namespace spinpart {

/// Deterministic generator shared by the random families.
///
/// Contract (fixed across platforms and standard libraries):
///   * engine: std::mt19937_64 seeded with the 64-bit seed;
///   * uniform(): top 53 bits of one engine draw scaled by 2^-53, in [0, 1);
///   * gaussian(): Box-Muller on two uniforms, u1 mapped to (0, 1] as 1 - u,
///     returning sqrt(-2 ln u1) cos(2 pi u2);
///   * Haar qubit: four gaussians (re0, im0, re1, im1), normalised;
///   * flat Dirichlet weights: -ln(1 - u) per term, normalised.
class StateRng {
 public:
  explicit StateRng(std::uint64_t seed);
  double uniform();
  double gaussian();

 private:
  std::mt19937_64 engine_;
};

/// cos(theta)|0...0> + sin(theta)|1...1>, n >= 2.
PureState ghz(int n, double theta);

/// Equal superposition of the n single-excitation basis states, n >= 2.
PureState w_state(int n);

/// p |GHZ><GHZ| + (1 - p) I / 2^n with GHZ = ghz(n, pi/4), p in [0, 1].
DensityMatrix werner(int n, double p);

/// (|010> + |001>) / sqrt(2).
PureState example3();

PureState basis_state(int n, std::uint64_t index);

/// Product of n independent Haar-random qubits.
PureState random_product_pure(int n, std::uint64_t seed);

/// Haar-random pure state on n qubits.
PureState random_pure(int n, std::uint64_t seed);

/// Convex mixture of `n_terms` random pure product states with flat Dirichlet weights.
DensityMatrix random_separable(int n, int n_terms, std::uint64_t seed);

enum class StateFamily {
  ghz,
  w,
  werner,
  example3,
  basis,
  product_random,
  separable_random,
  pure_random,
};

std::string to_string(StateFamily family);
/// Throws std::invalid_argument for an unknown name.
StateFamily parse_state_family(std::string_view name);

struct StateSpec {
  StateFamily family = StateFamily::ghz;
  int n_qubits = 0;
  std::optional<double> theta;          // ghz
  std::optional<double> p;              // werner
  std::optional<std::uint64_t> seed;    // random families
  std::optional<std::uint64_t> index;   // basis
  std::optional<int> terms;             // separable_random, default 4
};

/// Enforces family-specific parameter presence and ranges.
void validate(const StateSpec& spec);

/// Builds the density matrix described by `spec` (validated first).
DensityMatrix make_state(const StateSpec& spec);

/// Parses {"family": "ghz", "n": 3, "theta": 0.785...} style documents.
StateSpec state_spec_from_json(std::string_view json_text);
std::string state_spec_to_json(const StateSpec& spec);

}  // namespace spinpart
