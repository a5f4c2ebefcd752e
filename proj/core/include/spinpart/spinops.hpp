#pragma once

// Collective spin operators of a qubit subset embedded in the full 2^N space.
//
// Single-spin ladder operators are s+ = |1><0| and s- = |0><1| with no extra
// normalisation; s_x = (s+ + s-)/2, s_y = (s+ - s-)/(2i), s_z = diag(-1/2, +1/2).
// Operators are stored sparse: collective ladder words have few nonzeros per
// column, which keeps moment evaluation linear in the density-matrix size.

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "spinpart/qstate.hpp"

namespace spinpart {

using SparseOperator = Eigen::SparseMatrix<Complex>;

enum class SpinKind { plus, minus, x, y, z };

std::string to_string(SpinKind kind);

class CollectiveOperator {
 public:
  CollectiveOperator(int n_qubits, std::vector<int> support, SpinKind kind,
                     std::shared_ptr<const SparseOperator> op)
      : n_qubits_(n_qubits), support_(std::move(support)), kind_(kind), op_(std::move(op)) {}

  int n_qubits() const noexcept { return n_qubits_; }
  std::span<const int> support() const noexcept { return support_; }
  SpinKind kind() const noexcept { return kind_; }
  const SparseOperator& sparse() const noexcept { return *op_; }
  Matrix dense() const { return Matrix(*op_); }

 private:
  int n_qubits_;
  std::vector<int> support_;
  SpinKind kind_;
  std::shared_ptr<const SparseOperator> op_;
};

/// Sum over `support` of the chosen single-spin operator on each qubit.
/// Results are cached per (n_qubits, support, kind); the cache is safe for
/// concurrent readers and writers.
CollectiveOperator collective_operator(int n_qubits, std::span<const int> support, SpinKind kind);

/// S+ or S- only; other kinds are rejected.
CollectiveOperator collective_ladder(int n_qubits, std::span<const int> support, SpinKind kind);

/// `power`-th power of a collective operator; power 0 gives the identity.
SparseOperator operator_power(int n_qubits, std::span<const int> support, SpinKind kind,
                              int power);

SparseOperator identity_operator(int n_qubits);

/// Exponent tuple (k, l, m, n) for S+^{A^k} S-^{A^l} S+^{B^m} S-^{B^n}.
struct OperatorWord {
  int a_plus = 0;
  int a_minus = 0;
  int b_plus = 0;
  int b_minus = 0;

  int degree() const noexcept { return a_plus + a_minus + b_plus + b_minus; }
  bool empty() const noexcept { return degree() == 0; }

  /// Word of the adjoint operator: (l, k, n, m).
  OperatorWord adjoint() const noexcept { return {a_minus, a_plus, b_minus, b_plus}; }

  /// "A+^k A-^l B+^m B-^n", omitting zero exponents; "1" for the empty word.
  std::string to_string() const;

  friend auto operator<=>(const OperatorWord&, const OperatorWord&) = default;
};

/// Throws std::invalid_argument for a negative exponent.
void validate(const OperatorWord& word);

SparseOperator word_operator(const OperatorWord& word, const Bipartition& part);
Matrix word_matrix(const OperatorWord& word, const Bipartition& part);

/// Tr(rho X).
Complex expectation(const DensityMatrix& rho, const SparseOperator& op);
Complex expectation(const Matrix& rho, const SparseOperator& op);

// ---------------------------------------------------------------------------
// Anti-normal to normal reordering.
//
// For an S_z eigenstate with eigenvalue m the reordering identity reads
//   S-^j S+^k  ->  sum_r  j! k! (-2m)^r / (r! (j-r)! (k-r)!)  S+^{k-r} S-^{j-r}.
// It is kept as data so it can be checked against explicit matrices; moment
// evaluation never depends on it.

struct NormalOrderTerm {
  int r = 0;
  double coefficient = 0.0;
  int raise_power = 0;  // power of S+
  int lower_power = 0;  // power of S-
};

/// Terms r = 0..min(j, k). `m` must be a half-integer (2m integral).
std::vector<NormalOrderTerm> normal_order_coefficients(int j, int k, double m);

/// Which operator string multiplies each coefficient.
enum class NormalOrderForm {
  raise_then_lower,  // S+^{k-r} S-^{j-r}
  as_printed,        // S+^{j-r} S-^{k-r}
};

/// S-^j S+^k on `support`.
SparseOperator anti_normal_product(int n_qubits, std::span<const int> support, int j, int k);

/// Right-hand side of the reordering identity for fixed m, assembled as an operator.
SparseOperator normal_order_rhs(int n_qubits, std::span<const int> support, int j, int k,
                                double m, NormalOrderForm form = NormalOrderForm::raise_then_lower);

}  // namespace spinpart
