#pragma once

// Smallest Werner mixing weight detected by the Class I criterion and by the
// exact PPT oracle, for the partition A = {1..n_a}.

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace spinpart {

inline constexpr int kBisectionMaxIterations = 80;
inline constexpr double kBracketLow = 1e-6;
inline constexpr double kDefaultBisectionTol = 1e-10;
inline constexpr int kDefaultScanMaxQubits = 12;

/// Bisection for the detection threshold of a margin function (margin > 0
/// means "detected"). Assumes a single sign change in (lo, hi]. Returns the
/// smallest p known to be detected, or nullopt if margin(hi) <= 0. If even
/// margin(lo) > 0, returns lo. Throws NumericalError when the sign pattern is
/// not monotone just outside the final bracket.
std::optional<double> bisect_threshold(const std::function<double(double)>& margin, double lo,
                                       double hi, double tol,
                                       int max_iterations = kBisectionMaxIterations);

/// p_min for Class I on werner(n, p) with A = {1..n_a}; nullopt when the
/// criterion never fires on (0, 1].
std::optional<double> pmin_class1(int n, int n_a, double tol = kDefaultBisectionTol);

/// p_min for the PPT oracle on the same family and partition.
std::optional<double> pmin_ppt(int n, int n_a, double tol = kDefaultBisectionTol);

/// 1 / (2^{(n-2)/2} + 1): Class I threshold for balanced-enough partitions.
double closed_form_class1_pmin(int n);

/// 1 / (2^{n-1} + 1): PPT threshold for the GHZ-Werner family.
double closed_form_ppt_pmin(int n);

struct ScanPoint {
  int n = 0;
  int n_a = 0;
  std::optional<double> p_min_class1;
  std::optional<double> p_min_ppt;
  std::string method = "bisection";
};

struct ScanOptions {
  double tol = 1e-9;
  int max_qubits = kDefaultScanMaxQubits;
  bool with_ppt = true;
};

/// For each n in [n_min, n_max]: a point at n_a = 1 and, when floor(n/2) > 1,
/// one at n_a = floor(n/2). Sorted by (n, n_a).
std::vector<ScanPoint> scan(int n_min, int n_max, const ScanOptions& options = {});

}  // namespace spinpart
