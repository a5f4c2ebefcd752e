#include "spinpart/momentmat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace spinpart {

namespace {

struct Factor {
  SpinKind kind;
  int power;
};

// Product of powers on one support, written left to right.
SparseOperator ordered_product(int n_qubits, std::span<const int> support,
                               std::initializer_list<Factor> factors) {
  SparseOperator out = identity_operator(n_qubits);
  std::vector<Factor> seq(factors);
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    if (it->power == 0) continue;
    const auto step = collective_ladder(n_qubits, support, it->kind);
    for (int i = 0; i < it->power; ++i) out = (step.sparse() * out).pruned();
  }
  return out;
}

// Visits every strictly increasing index tuple of length `order` in [0, dim).
void for_each_subset(std::size_t dim, int order,
                     const std::function<void(std::span<const std::size_t>)>& visit) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) idx[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
  const auto k = static_cast<std::size_t>(order);
  if (k > dim) return;
  while (true) {
    visit(idx);
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == dim - k + pos - 1) --pos;
    if (pos == 0) return;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

std::vector<OperatorWord> enumerate_words(int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("enumerate_words: negative degree");
  std::vector<OperatorWord> words;
  for (int deg = 0; deg <= max_degree; ++deg) {
    for (int k = deg; k >= 0; --k) {
      for (int l = deg - k; l >= 0; --l) {
        for (int m = deg - k - l; m >= 0; --m) {
          words.push_back({k, l, m, deg - k - l - m});
        }
      }
    }
  }
  // Lexicographic ascending within each degree.
  std::stable_sort(words.begin(), words.end(), [](const OperatorWord& x, const OperatorWord& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return x < y;
  });
  return words;
}

std::size_t word_count(int max_degree) {
  if (max_degree < 0) return 0;
  const auto d = static_cast<std::size_t>(max_degree);
  return (d + 1) * (d + 2) * (d + 3) * (d + 4) / 24;
}

SparseOperator moment_operator(const Bipartition& part, const OperatorWord& row,
                               const OperatorWord& col) {
  validate(row);
  validate(col);
  const int n = part.n_qubits();
  // Row word (p, q, r, s), column word (k, l, m, n).
  const SparseOperator a = ordered_product(n, part.a_indices(),
                                           {{SpinKind::plus, row.a_minus},
                                            {SpinKind::minus, row.a_plus},
                                            {SpinKind::plus, col.a_plus},
                                            {SpinKind::minus, col.a_minus}});
  const SparseOperator b = ordered_product(n, part.b_indices(),
                                           {{SpinKind::plus, col.b_minus},
                                            {SpinKind::minus, col.b_plus},
                                            {SpinKind::plus, row.b_plus},
                                            {SpinKind::minus, row.b_minus}});
  return (a * b).pruned();
}

Complex moment(const DensityMatrix& rho, const Bipartition& part, const OperatorWord& row,
               const OperatorWord& col) {
  if (rho.n_qubits() != part.n_qubits()) throw std::invalid_argument("moment: qubit count mismatch");
  return expectation(rho, moment_operator(part, row, col));
}

MomentMatrix build_moment_matrix(const DensityMatrix& rho, const Bipartition& part, int max_degree,
                                 std::size_t word_cap) {
  if (max_degree < 0) throw std::invalid_argument("build_moment_matrix: negative degree");
  if (word_count(max_degree) > word_cap) {
    throw std::invalid_argument("build_moment_matrix: degree " + std::to_string(max_degree) +
                                " needs " + std::to_string(word_count(max_degree)) +
                                " words, above the cap of " + std::to_string(word_cap));
  }
  if (rho.n_qubits() != part.n_qubits()) {
    throw std::invalid_argument("build_moment_matrix: qubit count mismatch");
  }
  MomentMatrix mm{part, max_degree, enumerate_words(max_degree), {}};
  const auto dim = static_cast<Eigen::Index>(mm.words.size());
  mm.entries.resize(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      mm.entries(i, j) = moment(rho, part, mm.words[static_cast<std::size_t>(i)],
                                mm.words[static_cast<std::size_t>(j)]);
    }
  }
  const double scale = std::max(1.0, mm.entries.cwiseAbs().maxCoeff());
  const double herm = hermitian_residual(mm.entries);
  if (herm > 1e-10 * scale) {
    throw NumericalError("moment matrix is not Hermitian (residual " + std::to_string(herm) + ")");
  }
  return mm;
}

double principal_minor(const Matrix& m, std::span<const std::size_t> indices) {
  const auto k = static_cast<Eigen::Index>(indices.size());
  if (k == 0) return 1.0;
  Matrix sub(k, k);
  double largest = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      sub(i, j) = m(static_cast<Eigen::Index>(indices[static_cast<std::size_t>(i)]),
                    static_cast<Eigen::Index>(indices[static_cast<std::size_t>(j)]));
      largest = std::max(largest, std::abs(sub(i, j)));
    }
  }
  const Complex det = sub.determinant();
  const double scale = std::max(1.0, std::pow(largest, static_cast<double>(k)));
  if (std::abs(det.imag()) > 1e-10 * scale) {
    throw NumericalError("principal minor has imaginary residue " + std::to_string(det.imag()));
  }
  return det.real();
}

std::vector<MinorCertificate> scan_principal_minors(const MomentMatrix& mm, int max_order,
                                                    double tol) {
  const auto dim = static_cast<std::size_t>(mm.entries.rows());
  if (max_order < 1 || static_cast<std::size_t>(max_order) > dim) {
    throw std::invalid_argument("scan_principal_minors: max_order must be in [1, " +
                                std::to_string(dim) + "]");
  }
  std::vector<MinorCertificate> found;
  for (int order = 1; order <= max_order; ++order) {
    for_each_subset(dim, order, [&](std::span<const std::size_t> idx) {
      const double det = principal_minor(mm.entries, idx);
      if (det < -tol) {
        MinorCertificate cert{{idx.begin(), idx.end()}, det, {}};
        for (auto i : idx) {
          if (i < mm.words.size()) cert.words.push_back(mm.words[i]);
        }
        found.push_back(std::move(cert));
      }
    });
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    return x.determinant < y.determinant;
  });
  return found;
}

double smallest_principal_minor(const Matrix& m, int max_order) {
  const auto dim = static_cast<std::size_t>(m.rows());
  double smallest = std::numeric_limits<double>::infinity();
  for (int order = 1; order <= max_order && static_cast<std::size_t>(order) <= dim; ++order) {
    for_each_subset(dim, order, [&](std::span<const std::size_t> idx) {
      smallest = std::min(smallest, principal_minor(m, idx));
    });
  }
  return smallest;
}

}  // namespace spinpart
