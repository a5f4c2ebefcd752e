#pragma once

// Dense N-qubit states, bipartitions and the partial transpose.
//
// Conventions used throughout spinpart:
//   * qubit 1 is the most significant bit of a basis index, so |001> is index 1;
//   * |0> is the s_z = -1/2 state and |1> the s_z = +1/2 state.

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spinpart {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Raised when a numerical invariant that should hold by construction is
/// breached (non-Hermitian residue, imaginary part of a real quantity, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxQubits = 16;

/// Basis dimension 2^n. Throws for n outside [1, kMaxQubits].
std::size_t dimension_for(int n_qubits);

class PureState {
 public:
  /// Rejects amplitude vectors whose length is not 2^n or whose norm deviates
  /// from 1 by more than 1e-9; the stored vector is renormalised exactly.
  PureState(int n_qubits, Vector amplitudes);

  int n_qubits() const noexcept { return n_qubits_; }
  const Vector& amplitudes() const noexcept { return amplitudes_; }

 private:
  int n_qubits_;
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity (min eigenvalue >= -1e-10).
  static DensityMatrix from_matrix(int n_qubits, Matrix entries);

  /// Checks Hermiticity and trace only. For matrices that are positive
  /// semidefinite by construction (outer products, convex mixtures).
  static DensityMatrix from_psd_matrix(int n_qubits, Matrix entries);

  static DensityMatrix maximally_mixed(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Matrix& entries() const noexcept { return entries_; }

 private:
  DensityMatrix(int n_qubits, Matrix entries);
  int n_qubits_;
  Matrix entries_;
};

/// A split of qubits {1..n} into A (explicit, 1-based, strictly increasing)
/// and its complement B. Both sides are nonempty.
class Bipartition {
 public:
  Bipartition(int n_qubits, std::vector<int> a_indices);

  /// A = {1..n_a}.
  static Bipartition leading(int n_qubits, int n_a);

  int n_qubits() const noexcept { return n_qubits_; }
  int n_a() const noexcept { return static_cast<int>(a_.size()); }
  int n_b() const noexcept { return static_cast<int>(b_.size()); }
  std::span<const int> a_indices() const noexcept { return a_; }
  std::span<const int> b_indices() const noexcept { return b_; }

  /// Bit masks over basis indices selecting the A and B qubits.
  std::uint32_t a_mask() const noexcept { return a_mask_; }
  std::uint32_t b_mask() const noexcept { return b_mask_; }

  /// Swaps the roles of A and B.
  Bipartition complement() const;

  /// "(12,3)" style label: A digits, then B digits, separated by a comma.
  /// Indices above 9 are separated by dots, e.g. "(1.2.10,3)".
  std::string label() const;

  friend bool operator==(const Bipartition& x, const Bipartition& y) {
    return x.n_qubits_ == y.n_qubits_ && x.a_ == y.a_;
  }

 private:
  int n_qubits_;
  std::vector<int> a_;
  std::vector<int> b_;
  std::uint32_t a_mask_ = 0;
  std::uint32_t b_mask_ = 0;
};

/// Bit of basis index corresponding to 1-based qubit `qubit` among `n_qubits`.
constexpr std::uint32_t qubit_bit(int n_qubits, int qubit) noexcept {
  return std::uint32_t{1} << (n_qubits - qubit);
}

DensityMatrix density_from_pure(const PureState& psi);

struct MixtureTerm {
  double weight;
  const DensityMatrix* state;
};

/// Convex combination. Weights must be nonnegative and sum to 1 within 1e-12.
DensityMatrix mix(std::span<const MixtureTerm> terms);

/// Transposes the B-subsystem indices in the computational product basis.
/// The result is Hermitian with the same trace but need not be PSD.
Matrix partial_transpose(const Matrix& rho, const Bipartition& part);
Matrix partial_transpose(const DensityMatrix& rho, const Bipartition& part);

/// Largest entry-wise deviation |m - m^dagger|.
double hermitian_residual(const Matrix& m);

/// Smallest eigenvalue of a Hermitian matrix. Throws NumericalError when the
/// Hermitian residual exceeds 1e-10 * max(1, ||m||_max).
double min_eigenvalue(const Matrix& m);

/// Tensor product of two pure states, `left` occupying the leading qubits.
PureState tensor(const PureState& left, const PureState& right);

/// Tensor product of density matrices, `left` occupying the leading qubits.
DensityMatrix tensor(const DensityMatrix& left, const DensityMatrix& right);

/// Traces out every qubit not in `keep` (1-based, strictly increasing).
/// The kept qubits retain their relative order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

}  // namespace spinpart
