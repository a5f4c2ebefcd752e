#pragma once

// GHZ-type (Class I) and W-type (Class II) determinant criteria.
//
// Both quantities are minus a 2x2 principal minor of the partially transposed
// moment matrix, so P > 0 certifies entanglement across the partition:
//
//   P_I  = <A+^{nA} B+^{nB}> <A-^{nA} B-^{nB}>
//          - <A+^{nA-1} A-^{nA-1} B-^{nB-1} B+^{nB-1}> <A- A+ B+ B->
//   P_II = <A- B+> <A+ B-> - <A+ A- B+ B->
//
// where A+- / B+- are the collective ladder operators of each side.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "spinpart/momentmat.hpp"
#include "spinpart/qstate.hpp"
#include "spinpart/spinops.hpp"

namespace spinpart {

inline constexpr double kDetectionTol = 1e-8;

/// The four expectation values behind one 2x2 determinant criterion. Built
/// once per partition and reusable across states of the same size.
class DeterminantCriterion {
 public:
  static DeterminantCriterion class1(const Bipartition& part);
  static DeterminantCriterion class2(const Bipartition& part);

  /// off_diag_upper * off_diag_lower - diag_upper * diag_lower. Throws
  /// NumericalError if the imaginary residue exceeds 1e-8 (relative to the
  /// magnitude of the two products).
  double evaluate(const Matrix& rho) const;
  double evaluate(const DensityMatrix& rho) const { return evaluate(rho.entries()); }

  const Bipartition& part() const noexcept { return part_; }

 private:
  DeterminantCriterion(Bipartition part, SparseOperator upper_diag, SparseOperator lower_diag,
                       SparseOperator upper_off, SparseOperator lower_off);

  Bipartition part_;
  SparseOperator upper_diag_;
  SparseOperator lower_diag_;
  SparseOperator upper_off_;
  SparseOperator lower_off_;
};

/// Words whose 2x2 principal minor in the moment matrix is -P_I and -P_II.
std::pair<OperatorWord, OperatorWord> class1_words(const Bipartition& part);
std::pair<OperatorWord, OperatorWord> class2_words();

double class1_p(const DensityMatrix& rho, const Bipartition& part);
double class2_p(const DensityMatrix& rho, const Bipartition& part);

/// Minimum eigenvalue of the B-partial transpose (the exact PPT oracle).
double ppt_min_eigenvalue(const DensityMatrix& rho, const Bipartition& part);

struct CriterionReport {
  Bipartition part;
  double p1 = 0.0;
  double p2 = 0.0;
  double ppt_min_eig = 0.0;
  bool class1_entangled = false;
  bool class2_entangled = false;
  bool ppt_entangled = false;

  /// A class detection without a negative PPT eigenvalue would be a bug.
  bool consistent_with_oracle() const noexcept {
    return !(class1_entangled || class2_entangled) || ppt_entangled;
  }
};

enum class Summary {
  fully_inseparable_class1,
  fully_inseparable_class2,
  partially_separable,
  undetected,
};

/// "fully inseparable Class I", "fully inseparable Class II",
/// "partially separable", "undetected".
std::string to_string(Summary summary);

struct AggregateReport {
  std::vector<CriterionReport> reports;
  Summary summary = Summary::undetected;
  double tolerance = kDetectionTol;

  int class1_count() const;
  int class2_count() const;
  int ppt_count() const;
};

CriterionReport evaluate(const DensityMatrix& rho, const Bipartition& part,
                         double tol = kDetectionTol);

/// Every unordered split once. Each split is oriented with n_A >= n_B; for
/// equal halves A holds qubit 1. Ordered by n_B, then B lexicographically.
/// For three qubits this yields (23,1), (13,2), (12,3).
std::vector<Bipartition> all_bipartitions(int n_qubits);

/// One split per size for permutation-symmetric states: A = {1..n-n_B} for
/// n_B = 1..floor(n/2).
std::vector<Bipartition> symmetric_bipartitions(int n_qubits);

/// Class I wins if every partition is Class I detected, then Class II;
/// otherwise "partially separable" if anything is detected, else "undetected".
Summary summarize(std::span<const CriterionReport> reports);

/// Evaluates each partition independently (in parallel when threads allow).
AggregateReport analyze(const DensityMatrix& rho, std::span<const Bipartition> parts,
                        double tol = kDetectionTol);

AggregateReport analyze_all(const DensityMatrix& rho, bool symmetric = false,
                            double tol = kDetectionTol);

/// Two-qubit identities between ladder moments and Cartesian correlators,
/// written with Pauli operators (sigma = 2 s):
///   <A+B+><A-B-> = [(<XX> - <YY>)^2 + (<XY> + <YX>)^2] / 16
///   <A-A+B+B->   = <1 - Z_A + Z_B - Z_A Z_B> / 4
struct CartesianCheck {
  std::pair<double, double> lhs;  // ladder side of each identity
  std::pair<double, double> rhs;  // Cartesian side of each identity
};

/// Requires a 2-qubit state; A = {1}, B = {2}.
CartesianCheck cartesian_identity_check(const DensityMatrix& rho);

}  // namespace spinpart
