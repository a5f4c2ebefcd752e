#pragma once

// Partially transposed moment matrices over collective-spin operator words.
//
// For row word (p, q, r, s) and column word (k, l, m, n) the entry is
//   < (S+^q S-^p S+^k S-^l)_A (S+^n S-^m S+^r S-^s)_B >_rho.
// The B-exponents appear swapped relative to the A-exponents because the
// B factor is the transpose of the corresponding product. A separable state
// gives a positive semidefinite matrix, so a negative principal minor
// certifies entanglement across the partition.

#include <cstddef>
#include <vector>

#include "spinpart/qstate.hpp"
#include "spinpart/spinops.hpp"

namespace spinpart {

inline constexpr std::size_t kDefaultWordCap = 64;
inline constexpr int kDefaultMaxMinorOrder = 3;
inline constexpr double kCertificateTol = 1e-10;

struct MomentMatrix {
  Bipartition part;
  int max_degree = 0;
  std::vector<OperatorWord> words;
  Matrix entries;
};

struct MinorCertificate {
  std::vector<std::size_t> row_indices;
  double determinant = 0.0;
  std::vector<OperatorWord> words;
};

/// All words with degree <= max_degree, ordered by degree then
/// lexicographically on (k, l, m, n). The empty word comes first.
std::vector<OperatorWord> enumerate_words(int max_degree);

/// Number of words enumerate_words(max_degree) returns.
std::size_t word_count(int max_degree);

/// The operator whose expectation is the (row, col) moment.
SparseOperator moment_operator(const Bipartition& part, const OperatorWord& row,
                               const OperatorWord& col);

Complex moment(const DensityMatrix& rho, const Bipartition& part, const OperatorWord& row,
               const OperatorWord& col);

/// Throws std::invalid_argument when the word count exceeds `word_cap`, and
/// NumericalError when the assembled matrix is not Hermitian to 1e-10.
MomentMatrix build_moment_matrix(const DensityMatrix& rho, const Bipartition& part, int max_degree,
                                 std::size_t word_cap = kDefaultWordCap);

/// Real determinant of the principal submatrix on `indices`. Throws
/// NumericalError when the imaginary residue is not negligible.
double principal_minor(const Matrix& m, std::span<const std::size_t> indices);

/// Every principal minor of order <= max_order with determinant below
/// -tol, most negative first. An empty result is not a separability proof.
std::vector<MinorCertificate> scan_principal_minors(const MomentMatrix& mm,
                                                    int max_order = kDefaultMaxMinorOrder,
                                                    double tol = kCertificateTol);

/// Smallest principal minor of order <= max_order over the whole matrix
/// (including nonnegative ones). Used by property checks.
double smallest_principal_minor(const Matrix& m, int max_order);

}  // namespace spinpart
