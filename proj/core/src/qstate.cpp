#include "spinpart/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace spinpart {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kNormTol = 1e-9;

void check_dimension(int n_qubits, Eigen::Index rows, Eigen::Index cols) {
  const auto d = static_cast<Eigen::Index>(dimension_for(n_qubits));
  if (rows != d || cols != d) {
    std::ostringstream msg;
    msg << "density matrix for " << n_qubits << " qubits must be " << d << "x" << d
        << ", got " << rows << "x" << cols;
    throw std::invalid_argument(msg.str());
  }
}

void check_hermitian_unit_trace(const Matrix& m) {
  const double herm = hermitian_residual(m);
  if (herm > kHermitianTol) {
    throw std::invalid_argument("density matrix is not Hermitian (residual " +
                                std::to_string(herm) + ")");
  }
  const Complex tr = m.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    throw std::invalid_argument("density matrix trace is not 1 (trace " +
                                std::to_string(tr.real()) + ")");
  }
}

}  // namespace

std::size_t dimension_for(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(n_qubits));
  }
  return std::size_t{1} << n_qubits;
}

PureState::PureState(int n_qubits, Vector amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  const auto d = static_cast<Eigen::Index>(dimension_for(n_qubits));
  if (amplitudes_.size() != d) {
    throw std::invalid_argument("pure state of " + std::to_string(n_qubits) +
                                " qubits needs " + std::to_string(d) + " amplitudes");
  }
  const double norm = amplitudes_.norm();
  if (!std::isfinite(norm) || std::abs(norm - 1.0) > kNormTol) {
    throw std::invalid_argument("pure state is not normalised (norm " + std::to_string(norm) +
                                ")");
  }
  amplitudes_ /= norm;
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {}

DensityMatrix DensityMatrix::from_matrix(int n_qubits, Matrix entries) {
  check_dimension(n_qubits, entries.rows(), entries.cols());
  check_hermitian_unit_trace(entries);
  const double lmin = min_eigenvalue(entries);
  if (lmin < -kPsdTol) {
    throw std::invalid_argument("density matrix is not positive semidefinite (min eigenvalue " +
                                std::to_string(lmin) + ")");
  }
  return DensityMatrix(n_qubits, std::move(entries));
}

DensityMatrix DensityMatrix::from_psd_matrix(int n_qubits, Matrix entries) {
  check_dimension(n_qubits, entries.rows(), entries.cols());
  check_hermitian_unit_trace(entries);
  return DensityMatrix(n_qubits, std::move(entries));
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const auto d = static_cast<Eigen::Index>(dimension_for(n_qubits));
  Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
  return DensityMatrix(n_qubits, std::move(m));
}

Bipartition::Bipartition(int n_qubits, std::vector<int> a_indices)
    : n_qubits_(n_qubits), a_(std::move(a_indices)) {
  dimension_for(n_qubits);
  if (a_.empty()) throw std::invalid_argument("bipartition: A must be nonempty");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i] < 1 || a_[i] > n_qubits) {
      throw std::invalid_argument("bipartition: qubit index " + std::to_string(a_[i]) +
                                  " out of range 1.." + std::to_string(n_qubits));
    }
    if (i > 0 && a_[i] <= a_[i - 1]) {
      throw std::invalid_argument("bipartition: A indices must be strictly increasing");
    }
  }
  if (static_cast<int>(a_.size()) >= n_qubits) {
    throw std::invalid_argument("bipartition: B must be nonempty");
  }
  for (int q = 1; q <= n_qubits; ++q) {
    if (std::binary_search(a_.begin(), a_.end(), q)) {
      a_mask_ |= qubit_bit(n_qubits, q);
    } else {
      b_.push_back(q);
      b_mask_ |= qubit_bit(n_qubits, q);
    }
  }
}

Bipartition Bipartition::leading(int n_qubits, int n_a) {
  std::vector<int> a(static_cast<std::size_t>(std::max(n_a, 0)));
  for (int i = 0; i < n_a; ++i) a[static_cast<std::size_t>(i)] = i + 1;
  return Bipartition(n_qubits, std::move(a));
}

Bipartition Bipartition::complement() const { return Bipartition(n_qubits_, b_); }

std::string Bipartition::label() const {
  const bool dotted = n_qubits_ > 9;
  auto join = [dotted](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (dotted && i > 0) s += '.';
      s += std::to_string(v[i]);
    }
    return s;
  };
  return "(" + join(a_) + "," + join(b_) + ")";
}

DensityMatrix density_from_pure(const PureState& psi) {
  Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
  return DensityMatrix::from_psd_matrix(psi.n_qubits(), std::move(m));
}

DensityMatrix mix(std::span<const MixtureTerm> terms) {
  if (terms.empty()) throw std::invalid_argument("mix: no terms");
  const int n = terms.front().state->n_qubits();
  double total = 0.0;
  for (const auto& t : terms) {
    if (t.state == nullptr) throw std::invalid_argument("mix: null state");
    if (t.state->n_qubits() != n) throw std::invalid_argument("mix: dimension mismatch");
    if (!(t.weight >= 0.0)) throw std::invalid_argument("mix: negative weight");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("mix: weights sum to " + std::to_string(total) + ", not 1");
  }
  Matrix m = Matrix::Zero(terms.front().state->entries().rows(),
                          terms.front().state->entries().cols());
  for (const auto& t : terms) {
    if (t.weight != 0.0) m += t.weight * t.state->entries();
  }
  return DensityMatrix::from_psd_matrix(n, std::move(m));
}

Matrix partial_transpose(const Matrix& rho, const Bipartition& part) {
  const auto d = static_cast<Eigen::Index>(dimension_for(part.n_qubits()));
  if (rho.rows() != d || rho.cols() != d) {
    throw std::invalid_argument("partial_transpose: matrix dimension does not match partition");
  }
  const std::uint32_t b = part.b_mask();
  const std::uint32_t keep = ~b;
  Matrix out(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const auto cu = static_cast<std::uint32_t>(c);
    for (Eigen::Index r = 0; r < d; ++r) {
      const auto ru = static_cast<std::uint32_t>(r);
      const std::uint32_t r2 = (ru & keep) | (cu & b);
      const std::uint32_t c2 = (cu & keep) | (ru & b);
      out(r2, c2) = rho(r, c);
    }
  }
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho, const Bipartition& part) {
  if (rho.n_qubits() != part.n_qubits()) {
    throw std::invalid_argument("partial_transpose: qubit count mismatch");
  }
  return partial_transpose(rho.entries(), part);
}

double hermitian_residual(const Matrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

double min_eigenvalue(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw std::invalid_argument("min_eigenvalue: matrix must be square and nonempty");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double herm = hermitian_residual(m);
  if (herm > 1e-10 * scale) {
    throw NumericalError("min_eigenvalue: matrix is not Hermitian (residual " +
                         std::to_string(herm) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("min_eigenvalue: eigensolver did not converge");
  }
  return solver.eigenvalues()(0);
}

PureState tensor(const PureState& left, const PureState& right) {
  const Vector& l = left.amplitudes();
  const Vector& r = right.amplitudes();
  Vector out(l.size() * r.size());
  for (Eigen::Index i = 0; i < l.size(); ++i) out.segment(i * r.size(), r.size()) = l(i) * r;
  return PureState(left.n_qubits() + right.n_qubits(), std::move(out));
}

DensityMatrix tensor(const DensityMatrix& left, const DensityMatrix& right) {
  const Matrix& l = left.entries();
  const Matrix& r = right.entries();
  const Eigen::Index rd = r.rows();
  Matrix out(l.rows() * rd, l.cols() * rd);
  for (Eigen::Index j = 0; j < l.cols(); ++j) {
    for (Eigen::Index i = 0; i < l.rows(); ++i) out.block(i * rd, j * rd, rd, rd) = l(i, j) * r;
  }
  return DensityMatrix::from_psd_matrix(left.n_qubits() + right.n_qubits(), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  const int n = rho.n_qubits();
  if (keep.empty()) throw std::invalid_argument("partial_trace: nothing kept");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 1 || keep[i] > n || (i > 0 && keep[i] <= keep[i - 1])) {
      throw std::invalid_argument("partial_trace: keep indices must be strictly increasing in 1..n");
    }
  }
  const int k = static_cast<int>(keep.size());
  std::vector<std::uint32_t> traced_bits;
  for (int q = 1; q <= n; ++q) {
    if (std::find(keep.begin(), keep.end(), q) == keep.end()) traced_bits.push_back(qubit_bit(n, q));
  }
  // Scatter a reduced index onto the kept bit positions of the full index.
  auto expand = [&](std::uint32_t reduced) {
    std::uint32_t full = 0;
    for (int i = 0; i < k; ++i) {
      if (reduced & (std::uint32_t{1} << (k - 1 - i))) full |= qubit_bit(n, keep[static_cast<std::size_t>(i)]);
    }
    return full;
  };
  const auto dk = static_cast<Eigen::Index>(std::size_t{1} << k);
  const std::size_t n_env = std::size_t{1} << traced_bits.size();
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index c = 0; c < dk; ++c) {
    const std::uint32_t cf = expand(static_cast<std::uint32_t>(c));
    for (Eigen::Index r = 0; r < dk; ++r) {
      const std::uint32_t rf = expand(static_cast<std::uint32_t>(r));
      Complex acc{0.0, 0.0};
      for (std::size_t e = 0; e < n_env; ++e) {
        std::uint32_t env = 0;
        for (std::size_t t = 0; t < traced_bits.size(); ++t) {
          if (e & (std::size_t{1} << t)) env |= traced_bits[t];
        }
        acc += rho.entries()(rf | env, cf | env);
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix::from_psd_matrix(k, std::move(out));
}

}  // namespace spinpart
