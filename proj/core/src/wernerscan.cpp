#include "spinpart/wernerscan.hpp"

#include <cmath>

#include "spinpart/criteria.hpp"
#include "spinpart/states.hpp"

namespace spinpart {

namespace {

void check_scan_args(int n, int n_a, double tol) {
  if (n < 2) throw std::invalid_argument("werner threshold: n must be >= 2");
  dimension_for(n);
  if (n_a < 1 || n_a > n - 1) {
    throw std::invalid_argument("werner threshold: n_a must lie in [1, n-1]");
  }
  if (!(tol >= 1e-12)) throw std::invalid_argument("werner threshold: tol must be >= 1e-12");
}

}  // namespace

std::optional<double> bisect_threshold(const std::function<double(double)>& margin, double lo,
                                       double hi, double tol, int max_iterations) {
  if (!(lo < hi)) throw std::invalid_argument("bisect_threshold: empty bracket");
  if (margin(hi) <= 0.0) return std::nullopt;
  if (margin(lo) > 0.0) return lo;
  for (int it = 0; it < max_iterations && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (margin(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double step = 4.0 * std::max(tol, hi - lo);
  const double below = lo - step;
  const double above = hi + step;
  const bool below_ok = below <= 0.0 || margin(below) <= 0.0;
  const bool above_ok = above > 1.0 || margin(above) > 0.0;
  if (!below_ok || !above_ok) {
    throw NumericalError("bisect_threshold: detection margin is not monotone near p = " +
                         std::to_string(hi));
  }
  return hi;
}

std::optional<double> pmin_class1(int n, int n_a, double tol) {
  check_scan_args(n, n_a, tol);
  const auto criterion = DeterminantCriterion::class1(Bipartition::leading(n, n_a));
  return bisect_threshold([&](double p) { return criterion.evaluate(werner(n, p)); }, kBracketLow, 1.0,
                          tol);
}

std::optional<double> pmin_ppt(int n, int n_a, double tol) {
  check_scan_args(n, n_a, tol);
  const auto part = Bipartition::leading(n, n_a);
  return bisect_threshold([&](double p) { return -ppt_min_eigenvalue(werner(n, p), part); }, kBracketLow,
                          1.0, tol);
}

double closed_form_class1_pmin(int n) { return 1.0 / (std::pow(2.0, (n - 2) / 2.0) + 1.0); }

double closed_form_ppt_pmin(int n) { return 1.0 / (std::pow(2.0, n - 1) + 1.0); }

std::vector<ScanPoint> scan(int n_min, int n_max, const ScanOptions& options) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("scan: need 2 <= n_min <= n_max");
  if (n_max > options.max_qubits) {
    throw std::invalid_argument("scan: n_max " + std::to_string(n_max) + " exceeds the configured limit " +
                                std::to_string(options.max_qubits));
  }
  std::vector<ScanPoint> points;
  for (int n = n_min; n <= n_max; ++n) {
    std::vector<int> sizes{1};
    if (n / 2 > 1) sizes.push_back(n / 2);
    for (int n_a : sizes) {
      ScanPoint pt;
      pt.n = n;
      pt.n_a = n_a;
      pt.p_min_class1 = pmin_class1(n, n_a, options.tol);
      if (options.with_ppt) {
        pt.p_min_ppt = pmin_ppt(n, n_a, options.tol);
        if (pt.p_min_class1 && pt.p_min_ppt && *pt.p_min_ppt > *pt.p_min_class1 + 1e-6) {
          throw NumericalError("scan: Class I threshold below the PPT threshold at n = " +
                               std::to_string(n) + ", n_a = " + std::to_string(n_a));
        }
      }
      points.push_back(std::move(pt));
    }
  }
  return points;
}

}  // namespace spinpart
