#include "spinpart/spinops.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

namespace spinpart {

namespace {

struct CacheKey {
  int n_qubits;
  std::uint32_t support_mask;
  SpinKind kind;
  friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
};

class OperatorCache {
 public:
  std::shared_ptr<const SparseOperator> find(const CacheKey& key) const {
    std::shared_lock lock(mutex_);
    auto it = ops_.find(key);
    return it == ops_.end() ? nullptr : it->second;
  }

  std::shared_ptr<const SparseOperator> insert(const CacheKey& key,
                                               std::shared_ptr<const SparseOperator> op) {
    std::unique_lock lock(mutex_);
    // First writer wins; later builders get the stored instance.
    auto [it, inserted] = ops_.emplace(key, std::move(op));
    return it->second;
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<CacheKey, std::shared_ptr<const SparseOperator>> ops_;
};

OperatorCache& cache() {
  static OperatorCache instance;
  return instance;
}

std::uint32_t support_mask(int n_qubits, std::span<const int> support) {
  if (support.empty()) throw std::invalid_argument("collective operator: empty support");
  std::uint32_t mask = 0;
  for (int q : support) {
    if (q < 1 || q > n_qubits) {
      throw std::invalid_argument("collective operator: qubit " + std::to_string(q) +
                                  " out of range 1.." + std::to_string(n_qubits));
    }
    const std::uint32_t bit = qubit_bit(n_qubits, q);
    if (mask & bit) throw std::invalid_argument("collective operator: duplicate qubit in support");
    mask |= bit;
  }
  return mask;
}

SparseOperator build(int n_qubits, std::uint32_t mask, SpinKind kind) {
  const auto d = static_cast<Eigen::Index>(dimension_for(n_qubits));
  std::vector<std::uint32_t> bits;
  for (int q = 1; q <= n_qubits; ++q) {
    if (mask & qubit_bit(n_qubits, q)) bits.push_back(qubit_bit(n_qubits, q));
  }
  const Complex half{0.5, 0.0};
  const Complex minus_half_i{0.0, -0.5};
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(d) * bits.size());
  for (Eigen::Index col = 0; col < d; ++col) {
    const auto x = static_cast<std::uint32_t>(col);
    if (kind == SpinKind::z) {
      double diag = 0.0;
      for (auto b : bits) diag += (x & b) ? 0.5 : -0.5;
      if (diag != 0.0) triplets.emplace_back(col, col, Complex{diag, 0.0});
      continue;
    }
    for (auto b : bits) {
      const bool up = (x & b) != 0;
      // s+ |0> = |1>, s- |1> = |0>
      const Eigen::Index flipped = static_cast<Eigen::Index>(x ^ b);
      switch (kind) {
        case SpinKind::plus:
          if (!up) triplets.emplace_back(flipped, col, Complex{1.0, 0.0});
          break;
        case SpinKind::minus:
          if (up) triplets.emplace_back(flipped, col, Complex{1.0, 0.0});
          break;
        case SpinKind::x:
          triplets.emplace_back(flipped, col, half);
          break;
        case SpinKind::y:
          // s_y = -i/2 (s+ - s-)
          triplets.emplace_back(flipped, col, up ? -minus_half_i : minus_half_i);
          break;
        case SpinKind::z:
          break;
      }
    }
  }
  SparseOperator op(d, d);
  op.setFromTriplets(triplets.begin(), triplets.end());
  op.makeCompressed();
  return op;
}

std::vector<int> sorted_support(std::span<const int> support) {
  std::vector<int> s(support.begin(), support.end());
  std::sort(s.begin(), s.end());
  return s;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::string to_string(SpinKind kind) {
  switch (kind) {
    case SpinKind::plus: return "plus";
    case SpinKind::minus: return "minus";
    case SpinKind::x: return "x";
    case SpinKind::y: return "y";
    case SpinKind::z: return "z";
  }
  return "?";
}

CollectiveOperator collective_operator(int n_qubits, std::span<const int> support, SpinKind kind) {
  const std::uint32_t mask = support_mask(n_qubits, support);
  const CacheKey key{n_qubits, mask, kind};
  auto op = cache().find(key);
  if (!op) op = cache().insert(key, std::make_shared<const SparseOperator>(build(n_qubits, mask, kind)));
  return CollectiveOperator(n_qubits, sorted_support(support), kind, std::move(op));
}

CollectiveOperator collective_ladder(int n_qubits, std::span<const int> support, SpinKind kind) {
  if (kind != SpinKind::plus && kind != SpinKind::minus) {
    throw std::invalid_argument("collective_ladder: kind must be plus or minus");
  }
  return collective_operator(n_qubits, support, kind);
}

SparseOperator identity_operator(int n_qubits) {
  const auto d = static_cast<Eigen::Index>(dimension_for(n_qubits));
  SparseOperator id(d, d);
  id.setIdentity();
  return id;
}

SparseOperator operator_power(int n_qubits, std::span<const int> support, SpinKind kind,
                              int power) {
  if (power < 0) throw std::invalid_argument("operator_power: negative power");
  if (power == 0) return identity_operator(n_qubits);
  const auto base = collective_operator(n_qubits, support, kind);
  SparseOperator out = base.sparse();
  for (int i = 1; i < power; ++i) out = (base.sparse() * out).pruned();
  return out;
}

std::string OperatorWord::to_string() const {
  std::string s;
  auto term = [&s](const char* name, int e) {
    if (e == 0) return;
    if (!s.empty()) s += ' ';
    s += name;
    if (e > 1) s += '^' + std::to_string(e);
  };
  term("A+", a_plus);
  term("A-", a_minus);
  term("B+", b_plus);
  term("B-", b_minus);
  return s.empty() ? "1" : s;
}

void validate(const OperatorWord& word) {
  if (word.a_plus < 0 || word.a_minus < 0 || word.b_plus < 0 || word.b_minus < 0) {
    throw std::invalid_argument("operator word exponents must be nonnegative");
  }
}

SparseOperator word_operator(const OperatorWord& word, const Bipartition& part) {
  validate(word);
  const int n = part.n_qubits();
  const auto a = part.a_indices();
  const auto b = part.b_indices();
  SparseOperator out = identity_operator(n);
  // Right-most factor first.
  auto apply = [&](std::span<const int> support, SpinKind kind, int power) {
    if (power == 0) return;
    const auto step = collective_operator(n, support, kind);
    for (int i = 0; i < power; ++i) out = (step.sparse() * out).pruned();
  };
  apply(b, SpinKind::minus, word.b_minus);
  apply(b, SpinKind::plus, word.b_plus);
  apply(a, SpinKind::minus, word.a_minus);
  apply(a, SpinKind::plus, word.a_plus);
  return out;
}

Matrix word_matrix(const OperatorWord& word, const Bipartition& part) {
  return Matrix(word_operator(word, part));
}

Complex expectation(const Matrix& rho, const SparseOperator& op) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  Complex acc{0.0, 0.0};
  for (Eigen::Index c = 0; c < op.outerSize(); ++c) {
    for (SparseOperator::InnerIterator it(op, c); it; ++it) acc += it.value() * rho(c, it.row());
  }
  return acc;
}

Complex expectation(const DensityMatrix& rho, const SparseOperator& op) {
  return expectation(rho.entries(), op);
}

std::vector<NormalOrderTerm> normal_order_coefficients(int j, int k, double m) {
  if (j < 0 || k < 0) throw std::invalid_argument("normal_order_coefficients: negative exponent");
  const double twice_m = 2.0 * m;
  if (!std::isfinite(m) || std::abs(twice_m - std::round(twice_m)) > 1e-12) {
    throw std::invalid_argument("normal_order_coefficients: m must be a half-integer");
  }
  std::vector<NormalOrderTerm> terms;
  const int r_max = std::min(j, k);
  for (int r = 0; r <= r_max; ++r) {
    const double c = factorial(j) * factorial(k) * std::pow(-twice_m, r) /
                     (factorial(r) * factorial(j - r) * factorial(k - r));
    terms.push_back({r, c, k - r, j - r});
  }
  return terms;
}

SparseOperator anti_normal_product(int n_qubits, std::span<const int> support, int j, int k) {
  SparseOperator lower = operator_power(n_qubits, support, SpinKind::minus, j);
  SparseOperator raise = operator_power(n_qubits, support, SpinKind::plus, k);
  return (lower * raise).pruned();
}

SparseOperator normal_order_rhs(int n_qubits, std::span<const int> support, int j, int k,
                                double m, NormalOrderForm form) {
  const auto d = static_cast<Eigen::Index>(dimension_for(n_qubits));
  SparseOperator out(d, d);
  for (const auto& term : normal_order_coefficients(j, k, m)) {
    const int raise = form == NormalOrderForm::raise_then_lower ? term.raise_power : j - term.r;
    const int lower = form == NormalOrderForm::raise_then_lower ? term.lower_power : k - term.r;
    SparseOperator product = operator_power(n_qubits, support, SpinKind::plus, raise) *
                             operator_power(n_qubits, support, SpinKind::minus, lower);
    out += term.coefficient * product;
  }
  out.prune(Complex{0.0, 0.0});
  return out;
}

}  // namespace spinpart
