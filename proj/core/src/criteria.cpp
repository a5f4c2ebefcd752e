#include "spinpart/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <thread>

namespace spinpart {

namespace {

SparseOperator chain(std::initializer_list<const SparseOperator*> factors, int n_qubits) {
  SparseOperator out = identity_operator(n_qubits);
  for (const auto* f : factors) out = (out * (*f)).pruned();
  return out;
}

double real_part_checked(Complex value, double scale, const char* what) {
  if (std::abs(value.imag()) > 1e-8 * std::max(1.0, scale)) {
    throw NumericalError(std::string(what) + ": imaginary residue " + std::to_string(value.imag()) +
                         " on a quantity that must be real");
  }
  return value.real();
}

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    visit(idx);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos + 1) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
}

}  // namespace

DeterminantCriterion::DeterminantCriterion(Bipartition part, SparseOperator upper_diag,
                                           SparseOperator lower_diag, SparseOperator upper_off,
                                           SparseOperator lower_off)
    : part_(std::move(part)),
      upper_diag_(std::move(upper_diag)),
      lower_diag_(std::move(lower_diag)),
      upper_off_(std::move(upper_off)),
      lower_off_(std::move(lower_off)) {}

DeterminantCriterion DeterminantCriterion::class1(const Bipartition& part) {
  const int n = part.n_qubits();
  const auto a = part.a_indices();
  const auto b = part.b_indices();
  const int na = part.n_a();
  const int nb = part.n_b();

  const SparseOperator a_up_full = operator_power(n, a, SpinKind::plus, na);
  const SparseOperator a_dn_full = operator_power(n, a, SpinKind::minus, na);
  const SparseOperator b_up_full = operator_power(n, b, SpinKind::plus, nb);
  const SparseOperator b_dn_full = operator_power(n, b, SpinKind::minus, nb);
  const SparseOperator a_up = operator_power(n, a, SpinKind::plus, na - 1);
  const SparseOperator a_dn = operator_power(n, a, SpinKind::minus, na - 1);
  const SparseOperator b_up = operator_power(n, b, SpinKind::plus, nb - 1);
  const SparseOperator b_dn = operator_power(n, b, SpinKind::minus, nb - 1);
  const SparseOperator ap = collective_ladder(n, a, SpinKind::plus).sparse();
  const SparseOperator am = collective_ladder(n, a, SpinKind::minus).sparse();
  const SparseOperator bp = collective_ladder(n, b, SpinKind::plus).sparse();
  const SparseOperator bm = collective_ladder(n, b, SpinKind::minus).sparse();

  return DeterminantCriterion(part,
                              chain({&a_up, &a_dn, &b_dn, &b_up}, n),  // A+^{nA-1} A-^{nA-1} B-^{nB-1} B+^{nB-1}
                              chain({&am, &ap, &bp, &bm}, n),          // A- A+ B+ B-
                              chain({&a_up_full, &b_up_full}, n),      // A+^{nA} B+^{nB}
                              chain({&a_dn_full, &b_dn_full}, n));     // A-^{nA} B-^{nB}
}

DeterminantCriterion DeterminantCriterion::class2(const Bipartition& part) {
  const int n = part.n_qubits();
  const auto a = part.a_indices();
  const auto b = part.b_indices();
  const SparseOperator ap = collective_ladder(n, a, SpinKind::plus).sparse();
  const SparseOperator am = collective_ladder(n, a, SpinKind::minus).sparse();
  const SparseOperator bp = collective_ladder(n, b, SpinKind::plus).sparse();
  const SparseOperator bm = collective_ladder(n, b, SpinKind::minus).sparse();
  const SparseOperator id = identity_operator(n);
  return DeterminantCriterion(part, id,
                              chain({&ap, &am, &bp, &bm}, n),  // A+ A- B+ B-
                              chain({&am, &bp}, n),            // A- B+
                              chain({&ap, &bm}, n));           // A+ B-
}

double DeterminantCriterion::evaluate(const Matrix& rho) const {
  const Complex off = expectation(rho, upper_off_) * expectation(rho, lower_off_);
  const Complex diag = expectation(rho, upper_diag_) * expectation(rho, lower_diag_);
  return real_part_checked(off - diag, std::abs(off) + std::abs(diag), "determinant criterion");
}

std::pair<OperatorWord, OperatorWord> class1_words(const Bipartition& part) {
  return {OperatorWord{0, part.n_a() - 1, part.n_b() - 1, 0}, OperatorWord{1, 0, 0, 1}};
}

std::pair<OperatorWord, OperatorWord> class2_words() {
  return {OperatorWord{}, OperatorWord{0, 1, 0, 1}};
}

double class1_p(const DensityMatrix& rho, const Bipartition& part) {
  if (rho.n_qubits() != part.n_qubits()) throw std::invalid_argument("class1_p: qubit count mismatch");
  return DeterminantCriterion::class1(part).evaluate(rho);
}

double class2_p(const DensityMatrix& rho, const Bipartition& part) {
  if (rho.n_qubits() != part.n_qubits()) throw std::invalid_argument("class2_p: qubit count mismatch");
  return DeterminantCriterion::class2(part).evaluate(rho);
}

double ppt_min_eigenvalue(const DensityMatrix& rho, const Bipartition& part) {
  return min_eigenvalue(partial_transpose(rho, part));
}

std::string to_string(Summary summary) {
  switch (summary) {
    case Summary::fully_inseparable_class1: return "fully inseparable Class I";
    case Summary::fully_inseparable_class2: return "fully inseparable Class II";
    case Summary::partially_separable: return "partially separable";
    case Summary::undetected: return "undetected";
  }
  return "?";
}

int AggregateReport::class1_count() const {
  return static_cast<int>(std::count_if(reports.begin(), reports.end(),
                                        [](const auto& r) { return r.class1_entangled; }));
}

int AggregateReport::class2_count() const {
  return static_cast<int>(std::count_if(reports.begin(), reports.end(),
                                        [](const auto& r) { return r.class2_entangled; }));
}

int AggregateReport::ppt_count() const {
  return static_cast<int>(std::count_if(reports.begin(), reports.end(),
                                        [](const auto& r) { return r.ppt_entangled; }));
}

CriterionReport evaluate(const DensityMatrix& rho, const Bipartition& part, double tol) {
  CriterionReport r{part};
  r.p1 = class1_p(rho, part);
  r.p2 = class2_p(rho, part);
  r.ppt_min_eig = ppt_min_eigenvalue(rho, part);
  r.class1_entangled = r.p1 > tol;
  r.class2_entangled = r.p2 > tol;
  r.ppt_entangled = r.ppt_min_eig < -tol;
  return r;
}

std::vector<Bipartition> all_bipartitions(int n_qubits) {
  dimension_for(n_qubits);
  if (n_qubits < 2) throw std::invalid_argument("all_bipartitions: need at least 2 qubits");
  std::vector<Bipartition> parts;
  for (int nb = 1; nb <= n_qubits / 2; ++nb) {
    for_each_combination(n_qubits, nb, [&](const std::vector<int>& b) {
      if (2 * nb == n_qubits && b.front() == 1) return;
      std::vector<int> a;
      for (int q = 1; q <= n_qubits; ++q) {
        if (!std::binary_search(b.begin(), b.end(), q)) a.push_back(q);
      }
      parts.emplace_back(n_qubits, std::move(a));
    });
  }
  return parts;
}

std::vector<Bipartition> symmetric_bipartitions(int n_qubits) {
  dimension_for(n_qubits);
  if (n_qubits < 2) throw std::invalid_argument("symmetric_bipartitions: need at least 2 qubits");
  std::vector<Bipartition> parts;
  for (int nb = 1; nb <= n_qubits / 2; ++nb) parts.push_back(Bipartition::leading(n_qubits, n_qubits - nb));
  return parts;
}

Summary summarize(std::span<const CriterionReport> reports) {
  if (reports.empty()) return Summary::undetected;
  auto all = [&](auto pred) { return std::all_of(reports.begin(), reports.end(), pred); };
  auto any = [&](auto pred) { return std::any_of(reports.begin(), reports.end(), pred); };
  if (all([](const auto& r) { return r.class1_entangled; })) return Summary::fully_inseparable_class1;
  if (all([](const auto& r) { return r.class2_entangled; })) return Summary::fully_inseparable_class2;
  if (any([](const auto& r) { return r.class1_entangled || r.class2_entangled; })) {
    return Summary::partially_separable;
  }
  return Summary::undetected;
}

AggregateReport analyze(const DensityMatrix& rho, std::span<const Bipartition> parts, double tol) {
  if (parts.empty()) throw std::invalid_argument("analyze: empty partition list");
  for (const auto& p : parts) {
    if (p.n_qubits() != rho.n_qubits()) throw std::invalid_argument("analyze: qubit count mismatch");
  }
  AggregateReport out;
  out.tolerance = tol;
  out.reports.reserve(parts.size());
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1 || parts.size() == 1) {
    for (const auto& p : parts) out.reports.push_back(evaluate(rho, p, tol));
  } else {
    std::vector<std::future<CriterionReport>> pending;
    pending.reserve(parts.size());
    for (const auto& p : parts) {
      pending.push_back(std::async(std::launch::async, [&rho, &p, tol] { return evaluate(rho, p, tol); }));
    }
    for (auto& f : pending) out.reports.push_back(f.get());
  }
  out.summary = summarize(out.reports);
  return out;
}

AggregateReport analyze_all(const DensityMatrix& rho, bool symmetric, double tol) {
  const auto parts = symmetric ? symmetric_bipartitions(rho.n_qubits()) : all_bipartitions(rho.n_qubits());
  return analyze(rho, parts, tol);
}

CartesianCheck cartesian_identity_check(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) {
    throw std::invalid_argument("cartesian_identity_check: needs a 2-qubit state, got " +
                                std::to_string(rho.n_qubits()));
  }
  const int n = 2;
  const int a[] = {1};
  const int b[] = {2};
  auto op = [&](std::span<const int> s, SpinKind k) { return collective_operator(n, s, k).sparse(); };
  auto ev = [&](const SparseOperator& x) { return expectation(rho, x); };

  const SparseOperator ap = op(a, SpinKind::plus), am = op(a, SpinKind::minus);
  const SparseOperator bp = op(b, SpinKind::plus), bm = op(b, SpinKind::minus);
  // Pauli operators.
  const SparseOperator xa = 2.0 * op(a, SpinKind::x), ya = 2.0 * op(a, SpinKind::y), za = 2.0 * op(a, SpinKind::z);
  const SparseOperator xb = 2.0 * op(b, SpinKind::x), yb = 2.0 * op(b, SpinKind::y), zb = 2.0 * op(b, SpinKind::z);
  const SparseOperator id = identity_operator(n);

  const Complex raise = ev(chain({&ap, &bp}, n));
  const Complex lower = ev(chain({&am, &bm}, n));
  const Complex product = raise * lower;
  const double ladder_product = real_part_checked(product, std::abs(product), "cartesian check");
  const Complex four = ev(chain({&am, &ap, &bp, &bm}, n));
  const double ladder_four = real_part_checked(four, std::abs(four), "cartesian check");

  auto corr = [&](const SparseOperator& x, const SparseOperator& y) {
    const Complex c = ev(chain({&x, &y}, n));
    return real_part_checked(c, std::abs(c), "cartesian check");
  };
  const double xx = corr(xa, xb), yy = corr(ya, yb), xy = corr(xa, yb), yx = corr(ya, xb);
  const double cart_product = ((xx - yy) * (xx - yy) + (xy + yx) * (xy + yx)) / 16.0;
  const double one = ev(id).real();
  const double z_a = ev(za).real();
  const double z_b = ev(zb).real();
  const double zz = corr(za, zb);
  const double cart_four = (one - z_a + z_b - zz) / 4.0;

  return {{ladder_product, ladder_four}, {cart_product, cart_four}};
}

}  // namespace spinpart
