#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spinpart/criteria.hpp"
#include "spinpart/momentmat.hpp"
#include "spinpart/serialize.hpp"

namespace spinpart::cli {

namespace {

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw ConfigError("empty qubit index in '" + text + "'");
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("bad qubit index '" + item + "'");
    }
    if (used != item.size()) throw ConfigError("bad qubit index '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty partition '" + text + "'");
  return out;
}

PartitionSelector parse_partitions(const std::string& text) {
  PartitionSelector sel;
  sel.user_specified = true;
  if (text == "all") return sel;
  sel.mode = PartitionSelector::Mode::explicit_sets;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';')) sel.sets.push_back(parse_index_list(group));
  if (sel.sets.empty()) throw ConfigError("no partitions given");
  return sel;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Bipartition> resolve_partitions(const RunConfig& cfg, int n_qubits) {
  const auto& sel = cfg.partitions;
  switch (sel.mode) {
    case PartitionSelector::Mode::all:
      return cfg.symmetric ? symmetric_bipartitions(n_qubits) : all_bipartitions(n_qubits);
    case PartitionSelector::Mode::leading:
      return {Bipartition::leading(n_qubits, sel.n_a)};
    case PartitionSelector::Mode::explicit_sets: {
      std::vector<Bipartition> parts;
      for (const auto& a : sel.sets) parts.emplace_back(n_qubits, a);
      return parts;
    }
  }
  return {};
}

// Single partition for matrix-level commands; defaults to A = {1..ceil(n/2)}.
Bipartition single_partition(const RunConfig& cfg, int n_qubits) {
  if (!cfg.partitions.user_specified) return Bipartition::leading(n_qubits, (n_qubits + 1) / 2);
  auto parts = resolve_partitions(cfg, n_qubits);
  if (parts.size() != 1) throw ConfigError("this command needs exactly one partition");
  return parts.front();
}

std::string analyze_human(const AggregateReport& report, const StateSpec& spec) {
  std::ostringstream out;
  out << "state: " << to_string(spec.family) << " n=" << (spec.family == StateFamily::example3 ? 3 : spec.n_qubits);
  if (spec.theta) out << " theta=" << fmt(*spec.theta);
  if (spec.p) out << " p=" << fmt(*spec.p);
  if (spec.seed) out << " seed=" << *spec.seed;
  if (spec.index) out << " index=" << *spec.index;
  out << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %4s %4s %18s %18s %18s  %s\n", "partition", "n_A", "n_B", "P_I", "P_II",
                "PPT min eig", "detected by");
  out << line;
  for (const auto& r : report.reports) {
    std::string by;
    if (r.class1_entangled) by += "Class I ";
    if (r.class2_entangled) by += "Class II ";
    if (r.ppt_entangled) by += "PPT";
    if (by.empty()) by = "-";
    std::snprintf(line, sizeof line, "%-14s %4d %4d %18s %18s %18s  %s\n", r.part.label().c_str(), r.part.n_a(),
                  r.part.n_b(), fmt(r.p1).c_str(), fmt(r.p2).c_str(), fmt(r.ppt_min_eig).c_str(), by.c_str());
    out << line;
  }
  const auto total = report.reports.size();
  out << "Class I detected on " << report.class1_count() << "/" << total << " partitions\n";
  out << "Class II detected on " << report.class2_count() << "/" << total << " partitions\n";
  out << "PPT oracle entangled on " << report.ppt_count() << "/" << total << " partitions\n";
  out << "summary: " << to_string(report.summary) << "\n";
  return out.str();
}

std::string analyze_csv(const AggregateReport& report) {
  std::ostringstream out;
  out << "partition,n_a,n_b,p1,p2,ppt_min_eig,class1_entangled,class2_entangled,ppt_entangled\n";
  for (const auto& r : report.reports) {
    out << '"' << r.part.label() << '"' << ',' << r.part.n_a() << ',' << r.part.n_b() << ',' << fmt(r.p1) << ','
        << fmt(r.p2) << ',' << fmt(r.ppt_min_eig) << ',' << r.class1_entangled << ',' << r.class2_entangled << ','
        << r.ppt_entangled << '\n';
  }
  return out.str();
}

std::string scan_human(const std::vector<ScanPoint>& points) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%4s %4s %18s %18s\n", "n", "n_a", "p_min Class I", "p_min PPT");
  out << line;
  auto show = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string("undetected"); };
  for (const auto& p : points) {
    std::snprintf(line, sizeof line, "%4d %4d %18s %18s\n", p.n, p.n_a, show(p.p_min_class1).c_str(),
                  show(p.p_min_ppt).c_str());
    out << line;
  }
  return out.str();
}

std::string moment_human(const MomentMatrix& mm) {
  std::ostringstream out;
  out << "moment matrix for partition " << mm.part.label() << ", max degree " << mm.max_degree << ", "
      << mm.words.size() << " words\n";
  for (std::size_t i = 0; i < mm.words.size(); ++i) out << "  [" << i << "] " << mm.words[i].to_string() << "\n";
  for (Eigen::Index i = 0; i < mm.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < mm.entries.cols(); ++j) {
      const Complex z = mm.entries(i, j);
      out << (j ? " " : "") << fmt(z.real());
      if (z.imag() != 0.0) out << (z.imag() < 0 ? "" : "+") << fmt(z.imag()) << "i";
    }
    out << "\n";
  }
  return out.str();
}

std::string moment_csv(const MomentMatrix& mm) {
  std::ostringstream out;
  out << "row,col,row_word,col_word,re,im\n";
  for (Eigen::Index i = 0; i < mm.entries.rows(); ++i) {
    for (Eigen::Index j = 0; j < mm.entries.cols(); ++j) {
      out << i << ',' << j << ",\"" << mm.words[static_cast<std::size_t>(i)].to_string() << "\",\""
          << mm.words[static_cast<std::size_t>(j)].to_string() << "\"," << fmt(mm.entries(i, j).real()) << ','
          << fmt(mm.entries(i, j).imag()) << '\n';
    }
  }
  return out.str();
}

std::string minors_text(const MomentMatrix& mm, const std::vector<MinorCertificate>& certs, bool csv) {
  std::ostringstream out;
  if (csv) {
    out << "rank,determinant,rows,words\n";
  } else {
    out << "partition " << mm.part.label() << ": " << certs.size() << " negative principal minor(s)\n";
  }
  for (std::size_t c = 0; c < certs.size(); ++c) {
    std::string rows, words;
    for (std::size_t i = 0; i < certs[c].row_indices.size(); ++i) {
      rows += (i ? " " : "") + std::to_string(certs[c].row_indices[i]);
      words += (i ? " | " : "") + certs[c].words[i].to_string();
    }
    if (csv) {
      out << c << ',' << fmt(certs[c].determinant) << ",\"" << rows << "\",\"" << words << "\"\n";
    } else {
      out << "  det " << fmt(certs[c].determinant) << "  rows {" << rows << "}  words {" << words << "}\n";
    }
  }
  if (!csv && certs.empty()) out << "no certificate at this truncation (not a separability proof)\n";
  return out.str();
}

std::string cartesian_text(const CartesianCheck& chk, bool csv) {
  std::ostringstream out;
  if (csv) {
    out << "identity,ladder,cartesian\n";
    out << "ladder_product," << fmt(chk.lhs.first) << ',' << fmt(chk.rhs.first) << '\n';
    out << "ladder_four_moment," << fmt(chk.lhs.second) << ',' << fmt(chk.rhs.second) << '\n';
  } else {
    out << "<A+B+><A-B->  ladder " << fmt(chk.lhs.first) << "  cartesian " << fmt(chk.rhs.first) << "\n";
    out << "<A-A+B+B->    ladder " << fmt(chk.lhs.second) << "  cartesian " << fmt(chk.rhs.second) << "\n";
  }
  return out.str();
}

std::string execute(const RunConfig& cfg) {
  if (cfg.command == Command::scan_werner) {
    ScanOptions opts;
    opts.tol = cfg.bisect_tol;
    opts.max_qubits = cfg.scan_max_qubits;
    opts.with_ppt = cfg.with_ppt;
    const auto points = scan(cfg.n_min, cfg.n_max, opts);
    switch (cfg.format) {
      case OutputFormat::csv: return scan_to_csv(points);
      case OutputFormat::json: return scan_to_json(points, cfg.bisect_tol);
      case OutputFormat::human: return scan_human(points);
    }
  }

  if (!cfg.state) throw ConfigError("--state or --state-file is required for this command");
  const StateSpec& spec = *cfg.state;
  const DensityMatrix rho = make_state(spec);
  const int n = rho.n_qubits();

  switch (cfg.command) {
    case Command::analyze: {
      const auto parts = resolve_partitions(cfg, n);
      const auto report = analyze(rho, parts, cfg.tol);
      switch (cfg.format) {
        case OutputFormat::json: return report_to_json(report, spec);
        case OutputFormat::csv: return analyze_csv(report);
        case OutputFormat::human: return analyze_human(report, spec);
      }
      break;
    }
    case Command::moment_matrix: {
      const auto mm = build_moment_matrix(rho, single_partition(cfg, n), cfg.max_degree, cfg.word_cap);
      switch (cfg.format) {
        case OutputFormat::json: return moment_matrix_to_json(mm, spec);
        case OutputFormat::csv: return moment_csv(mm);
        case OutputFormat::human: return moment_human(mm);
      }
      break;
    }
    case Command::minors: {
      const auto mm = build_moment_matrix(rho, single_partition(cfg, n), cfg.max_degree, cfg.word_cap);
      const int order = std::min<int>(cfg.max_order, static_cast<int>(mm.words.size()));
      const auto certs = scan_principal_minors(mm, order, cfg.minor_tol);
      if (cfg.format == OutputFormat::json) return minors_to_json(mm, certs, order, spec);
      return minors_text(mm, certs, cfg.format == OutputFormat::csv);
    }
    case Command::cartesian_check: {
      const auto chk = cartesian_identity_check(rho);
      if (cfg.format == OutputFormat::json) return cartesian_to_json(chk, spec);
      return cartesian_text(chk, cfg.format == OutputFormat::csv);
    }
    case Command::scan_werner: break;
  }
  throw std::logic_error("unhandled command");
}

}  // namespace

ParseOutcome parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Bipartite entanglement detection with collective-spin moment criteria", "spinpart"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string state_name, state_file, partitions, format;
  int n = 0, n_a = 0, terms = 0;
  double theta = 0.0, p = 0.0;
  std::uint64_t seed = 0, index = 0;

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", state_name, "State family: ghz, w, werner, example3, basis, product_random, "
                                           "separable_random, pure_random");
    sub->add_option("--state-file", state_file, "JSON state spec, e.g. {\"family\":\"ghz\",\"n\":3,\"theta\":0.78}");
    sub->add_option("--n", n, "Number of qubits");
    sub->add_option("--theta", theta, "GHZ angle in radians");
    sub->add_option("--p", p, "Werner mixing weight in [0, 1]");
    sub->add_option("--seed", seed, "Seed for random families");
    sub->add_option("--index", index, "Basis-state index (qubit 1 is the most significant bit)");
    sub->add_option("--terms", terms, "Number of product terms for separable_random");
    sub->add_option("--format", format, "Output format: json, csv or human");
    sub->add_option("--output,-o", cfg.output_path, "Write output to this file instead of stdout");
  };
  auto add_partition = [&](CLI::App* sub) {
    sub->add_option("--partitions", partitions, "'all' or A-index lists such as '1,2' or '1,2;3'");
    sub->add_option("--n-a", n_a, "Use A = {1..n_a}");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "Class I / Class II criteria and PPT oracle per bipartition");
  add_state(analyze_cmd);
  add_partition(analyze_cmd);
  analyze_cmd->add_flag("--symmetric", cfg.symmetric, "One partition per size (permutation-symmetric states)");
  analyze_cmd->add_option("--tol", cfg.tol, "Detection tolerance for P values and PPT eigenvalues");

  auto* scan_cmd = app.add_subcommand("scan-werner", "Werner-state p_min for Class I and the PPT oracle");
  scan_cmd->add_option("--n-min", cfg.n_min, "Smallest qubit count");
  scan_cmd->add_option("--n-max", cfg.n_max, "Largest qubit count");
  scan_cmd->add_option("--bisect-tol", cfg.bisect_tol, "Bisection bracket width");
  scan_cmd->add_option("--max-n", cfg.scan_max_qubits, "Upper limit accepted for --n-max");
  scan_cmd->add_flag("!--no-ppt", cfg.with_ppt, "Skip the PPT threshold column");
  scan_cmd->add_option("--format", format, "Output format: csv (default), json or human");
  scan_cmd->add_option("--output,-o", cfg.output_path, "Write output to this file instead of stdout");

  auto* mm_cmd = app.add_subcommand("moment-matrix", "Dump the partially transposed moment matrix");
  add_state(mm_cmd);
  add_partition(mm_cmd);
  mm_cmd->add_option("--max-degree", cfg.max_degree, "Largest operator-word degree");
  mm_cmd->add_option("--word-cap", cfg.word_cap, "Refuse matrices with more words than this");

  auto* minors_cmd = app.add_subcommand("minors", "Negative principal minors of the moment matrix");
  add_state(minors_cmd);
  add_partition(minors_cmd);
  minors_cmd->add_option("--max-degree", cfg.max_degree, "Largest operator-word degree");
  minors_cmd->add_option("--max-order", cfg.max_order, "Largest minor order");
  minors_cmd->add_option("--word-cap", cfg.word_cap, "Refuse matrices with more words than this");
  minors_cmd->add_option("--minor-tol", cfg.minor_tol, "Report minors below -minor_tol");

  auto* cart_cmd = app.add_subcommand("cartesian-check", "Two-qubit ladder vs Cartesian correlator identities");
  add_state(cart_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  ParseOutcome outcome;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.exit_code = kOk;
    outcome.message = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = kInvalidConfig;
    outcome.message = e.what();
    return outcome;
  }

  try {
    CLI::App* used = app.get_subcommands().front();
    if (used == analyze_cmd) cfg.command = Command::analyze;
    if (used == scan_cmd) cfg.command = Command::scan_werner;
    if (used == mm_cmd) cfg.command = Command::moment_matrix;
    if (used == minors_cmd) cfg.command = Command::minors;
    if (used == cart_cmd) cfg.command = Command::cartesian_check;

    cfg.format = cfg.command == Command::scan_werner ? OutputFormat::csv : OutputFormat::json;
    if (!format.empty()) {
      if (format == "json") cfg.format = OutputFormat::json;
      else if (format == "csv") cfg.format = OutputFormat::csv;
      else if (format == "human") cfg.format = OutputFormat::human;
      else throw ConfigError("unknown --format '" + format + "'");
    }

    if (cfg.command != Command::scan_werner) {
      const bool has_name = used->count("--state") > 0;
      const bool has_file = used->count("--state-file") > 0;
      if (has_name == has_file) throw ConfigError("give exactly one of --state or --state-file");
      if (has_file) {
        cfg.state = state_spec_from_json(read_file(state_file));
      } else {
        StateSpec spec;
        spec.family = parse_state_family(state_name);
        spec.n_qubits = used->count("--n") ? n : (spec.family == StateFamily::example3 ? 3 : 0);
        if (used->count("--theta")) spec.theta = theta;
        if (used->count("--p")) spec.p = p;
        if (used->count("--seed")) spec.seed = seed;
        if (used->count("--index")) spec.index = index;
        if (used->count("--terms")) spec.terms = terms;
        validate(spec);
        cfg.state = spec;
      }
    }

    if (cfg.command == Command::analyze || cfg.command == Command::moment_matrix ||
        cfg.command == Command::minors) {
      const bool has_parts = used->count("--partitions") > 0;
      const bool has_na = used->count("--n-a") > 0;
      if (has_parts && has_na) throw ConfigError("--partitions and --n-a are mutually exclusive");
      if (has_parts) cfg.partitions = parse_partitions(partitions);
      if (has_na) {
        cfg.partitions.mode = PartitionSelector::Mode::leading;
        cfg.partitions.n_a = n_a;
        cfg.partitions.user_specified = true;
      }
      if (cfg.symmetric && cfg.partitions.mode != PartitionSelector::Mode::all) {
        throw ConfigError("--symmetric only applies to --partitions all");
      }
    }
    if (cfg.tol < 0 || cfg.minor_tol < 0 || !(cfg.bisect_tol >= 1e-12)) {
      throw ConfigError("tolerances must be nonnegative (bisection tolerance >= 1e-12)");
    }
    if (cfg.max_degree < 0 || cfg.max_order < 1) throw ConfigError("--max-degree >= 0 and --max-order >= 1 required");
  } catch (const IoError& e) {
    outcome.exit_code = kIoFailure;
    outcome.message = e.what();
    return outcome;
  } catch (const std::invalid_argument& e) {
    outcome.exit_code = kInvalidConfig;
    outcome.message = e.what();
    return outcome;
  }
  outcome.config = std::move(cfg);
  return outcome;
}

RunResult run(const RunConfig& config) {
  RunResult result;
  try {
    result.output = execute(config);
    if (config.output_path) {
      std::ofstream out(*config.output_path, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot open '" + *config.output_path + "' for writing");
      out << result.output;
      out.flush();
      if (!out) throw IoError("failed writing '" + *config.output_path + "'");
    }
  } catch (const NumericalError& e) {
    result.exit_code = kNumericalFailure;
    result.error = e.what();
  } catch (const IoError& e) {
    result.exit_code = kIoFailure;
    result.error = e.what();
  } catch (const std::invalid_argument& e) {
    result.exit_code = kInvalidConfig;
    result.error = e.what();
  }
  return result;
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  const auto parsed = parse_args(args);
  if (!parsed.config) {
    (parsed.exit_code == kOk ? std::cout : std::cerr) << parsed.message << (parsed.exit_code == kOk ? "" : "\n");
    return parsed.exit_code;
  }
  const auto result = run(*parsed.config);
  if (result.exit_code != kOk) {
    std::cerr << "error: " << result.error << "\n";
    return result.exit_code;
  }
  if (!parsed.config->output_path) std::cout << result.output;
  return kOk;
}

}  // namespace spinpart::cli
