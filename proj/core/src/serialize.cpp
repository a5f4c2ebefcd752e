#include "spinpart/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace spinpart {

namespace {

using nlohmann::json;

json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_significant(x);
}

json number(const std::optional<double>& x) { return x ? number(*x) : json(nullptr); }

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json word_json(const OperatorWord& w) {
  return json{{"exponents", {w.a_plus, w.a_minus, w.b_plus, w.b_minus}}, {"label", w.to_string()}};
}

json partition_json(const Bipartition& part) {
  return json{{"a", std::vector<int>(part.a_indices().begin(), part.a_indices().end())},
              {"b", std::vector<int>(part.b_indices().begin(), part.b_indices().end())},
              {"label", part.label()},
              {"n_a", part.n_a()},
              {"n_b", part.n_b()}};
}

json state_json(const StateSpec& spec) {
  json j{{"family", to_string(spec.family)},
         {"n", spec.family == StateFamily::example3 ? 3 : spec.n_qubits}};
  if (spec.theta) j["theta"] = number(*spec.theta);
  if (spec.p) j["p"] = number(*spec.p);
  if (spec.seed) j["seed"] = *spec.seed;
  if (spec.index) j["index"] = *spec.index;
  if (spec.terms) j["terms"] = *spec.terms;
  return j;
}

void attach_state(json& doc, const std::optional<StateSpec>& state) {
  if (state) doc["state"] = state_json(*state);
}

}  // namespace

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
  return std::strtod(buf, nullptr);
}

std::string report_to_json(const AggregateReport& report, const std::optional<StateSpec>& state) {
  json rows = json::array();
  int n_qubits = 0;
  for (const auto& r : report.reports) {
    n_qubits = r.part.n_qubits();
    rows.push_back(json{{"partition", partition_json(r.part)},
                        {"p1", number(r.p1)},
                        {"p2", number(r.p2)},
                        {"ppt_min_eig", number(r.ppt_min_eig)},
                        {"verdicts",
                         {{"class1_entangled", r.class1_entangled},
                          {"class2_entangled", r.class2_entangled},
                          {"ppt_entangled", r.ppt_entangled}}}});
  }
  json doc{{"command", "analyze"},
           {"n_qubits", n_qubits},
           {"reports", rows},
           {"summary", to_string(report.summary)},
           {"tolerance", number(report.tolerance)},
           {"counts",
            {{"class1", report.class1_count()},
             {"class2", report.class2_count()},
             {"ppt", report.ppt_count()},
             {"total", report.reports.size()}}}};
  attach_state(doc, state);
  return dump(doc);
}

std::string moment_matrix_to_json(const MomentMatrix& mm, const std::optional<StateSpec>& state) {
  json words = json::array();
  for (const auto& w : mm.words) words.push_back(word_json(w));
  json entries = json::array();
  for (Eigen::Index i = 0; i < mm.entries.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < mm.entries.cols(); ++j) {
      row.push_back({number(mm.entries(i, j).real()), number(mm.entries(i, j).imag())});
    }
    entries.push_back(std::move(row));
  }
  json doc{{"command", "moment-matrix"},
           {"partition", partition_json(mm.part)},
           {"max_degree", mm.max_degree},
           {"dimension", mm.words.size()},
           {"words", words},
           {"entries", entries}};
  attach_state(doc, state);
  return dump(doc);
}

std::string minors_to_json(const MomentMatrix& mm, std::span<const MinorCertificate> certificates,
                           int max_order, const std::optional<StateSpec>& state) {
  json certs = json::array();
  for (const auto& c : certificates) {
    json words = json::array();
    for (const auto& w : c.words) words.push_back(word_json(w));
    certs.push_back(json{{"rows", c.row_indices}, {"determinant", number(c.determinant)}, {"words", words}});
  }
  json doc{{"command", "minors"},
           {"partition", partition_json(mm.part)},
           {"max_degree", mm.max_degree},
           {"max_order", max_order},
           {"dimension", mm.words.size()},
           {"negative_minors", certs},
           {"certified", !certificates.empty()}};
  attach_state(doc, state);
  return dump(doc);
}

std::string cartesian_to_json(const CartesianCheck& check, const std::optional<StateSpec>& state) {
  json doc{{"command", "cartesian-check"},
           {"ladder_product", {{"ladder", number(check.lhs.first)}, {"cartesian", number(check.rhs.first)}}},
           {"ladder_four_moment",
            {{"ladder", number(check.lhs.second)}, {"cartesian", number(check.rhs.second)}}},
           {"max_abs_difference",
            number(std::max(std::abs(check.lhs.first - check.rhs.first),
                            std::abs(check.lhs.second - check.rhs.second)))}};
  attach_state(doc, state);
  return dump(doc);
}

std::string scan_to_json(std::span<const ScanPoint> points, double tol) {
  json rows = json::array();
  for (const auto& p : points) {
    rows.push_back(json{{"n", p.n},
                        {"n_a", p.n_a},
                        {"p_min_class1", number(p.p_min_class1)},
                        {"p_min_ppt", number(p.p_min_ppt)},
                        {"method", p.method}});
  }
  json doc{{"command", "scan-werner"}, {"tolerance", number(tol)}, {"points", rows}};
  return dump(doc);
}

std::string scan_to_csv(std::span<const ScanPoint> points) {
  std::ostringstream out;
  auto field = [&out](const std::optional<double>& v) {
    if (v && std::isfinite(*v)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", *v);
      out << buf;
    }
  };
  out << "n,n_a,p_min_class1,p_min_ppt\n";
  for (const auto& p : points) {
    out << p.n << ',' << p.n_a << ',';
    field(p.p_min_class1);
    out << ',';
    field(p.p_min_ppt);
    out << '\n';
  }
  return out.str();
}

std::string canonical_json(std::string_view json_text) {
  return dump(json::parse(json_text.begin(), json_text.end()));
}

StateSpec state_spec_from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("state spec: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("state spec: expected a JSON object");
  StateSpec spec;
  try {
    if (!doc.contains("family")) throw std::invalid_argument("state spec: missing 'family'");
    spec.family = parse_state_family(doc.at("family").get<std::string>());
    if (doc.contains("n")) spec.n_qubits = doc.at("n").get<int>();
    if (doc.contains("theta")) spec.theta = doc.at("theta").get<double>();
    if (doc.contains("p")) spec.p = doc.at("p").get<double>();
    if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("index")) spec.index = doc.at("index").get<std::uint64_t>();
    if (doc.contains("terms")) spec.terms = doc.at("terms").get<int>();
    for (const auto& [key, value] : doc.items()) {
      static const char* known[] = {"family", "n", "theta", "p", "seed", "index", "terms"};
      if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
        throw std::invalid_argument("state spec: unknown field '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("state spec: ") + e.what());
  }
  if (spec.family == StateFamily::example3 && spec.n_qubits == 0) spec.n_qubits = 3;
  validate(spec);
  return spec;
}

std::string state_spec_to_json(const StateSpec& spec) { return dump(state_json(spec)); }

}  // namespace spinpart
