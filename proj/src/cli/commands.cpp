#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lens/cli.hpp"
#include "lens/oracle.hpp"
#include "lens/spectrum.hpp"
#include "lens/verify.hpp"

namespace lens::cli {

namespace {

using nlohmann::ordered_json;

LensSpace build(const SpaceArgs& args) { return make_lens_space(args.p, args.q); }

ordered_json space_json(const LensSpace& space) {
  ordered_json j;
  j["p"] = space.order();
  j["q"] = std::vector<std::int64_t>(space.weights().begin(), space.weights().end());
  j["d"] = space.dimension();
  return j;
}

std::string quoted(const std::string& field) { return '"' + field + '"'; }

void write_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

int run_spectrum(const RunConfig& config, std::ostream& out) {
  const auto table = spectrum(build(config.space), config.i_max);
  if (config.format == Format::kCsv) {
    out << "i,eigenvalue,multiplicity\n";
    for (const auto& e : table.entries) {
      out << e.degree << ',' << e.eigenvalue << ',' << e.mult.str() << '\n';
    }
    return kExitOk;
  }
  ordered_json j = space_json(table.space);
  j["entries"] = ordered_json::array();
  for (const auto& e : table.entries) {
    j["entries"].push_back({{"i", e.degree}, {"lambda", e.eigenvalue}, {"mult", e.mult.str()}});
  }
  write_json(out, j);
  return kExitOk;
}

int run_nl(const RunConfig& config, std::ostream& out) {
  const LensSpace space = build(config.space);
  const GammaTable table(space);
  const std::int64_t lo = config.h.value_or(0);
  const std::int64_t hi = config.h.value_or(config.h_max);
  if (lo < 0 || hi < 0) throw std::invalid_argument("h must be non-negative");

  ordered_json j = space_json(space);
  j["values"] = ordered_json::array();
  if (config.format == Format::kCsv) out << "h,n_lattice\n";
  for (std::int64_t h = lo; h <= hi; ++h) {
    const Count n = n_lattice_formula(space, table, h);
    if (config.format == Format::kCsv) {
      out << h << ',' << n.str() << '\n';
    } else {
      j["values"].push_back({{"h", h}, {"n_lattice", n.str()}});
    }
  }
  if (config.format == Format::kJson) write_json(out, j);
  return kExitOk;
}

int run_gamma(const RunConfig& config, std::ostream& out) {
  const LensSpace space = build(config.space);
  const int m = space.num_weights();
  std::vector<SubsetMask> subsets;
  if (config.subset) {
    SubsetMask mask;
    for (auto index : *config.subset) {
      if (index < 1 || index > m) {
        throw std::invalid_argument("subset index " + std::to_string(index) + " outside 1.." +
                                    std::to_string(m));
      }
      mask = mask.with(static_cast<int>(index - 1));
    }
    subsets.push_back(mask);
  } else {
    for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << m); ++bits) {
      subsets.emplace_back(bits);
    }
  }
  if (config.s && *config.s < 0) throw std::invalid_argument("s must be non-negative");

  const GammaTable table(space);
  ordered_json j = space_json(space);
  j["entries"] = ordered_json::array();
  if (config.format == Format::kCsv) out << "subset,s,gamma\n";
  for (const auto& subset : subsets) {
    const std::int64_t lo = config.s.value_or(0);
    const std::int64_t hi = config.s.value_or(subset.size() * (space.order() - 1));
    for (std::int64_t s = lo; s <= hi; ++s) {
      const Count& g = table.at(subset, s);
      if (config.format == Format::kCsv) {
        out << quoted(subset.to_string()) << ',' << s << ',' << g.str() << '\n';
      } else {
        std::vector<std::int64_t> members;
        for (int i : subset.indices()) members.push_back(i + 1);
        j["entries"].push_back({{"subset", members}, {"s", s}, {"gamma", g.str()}});
      }
    }
  }
  if (config.format == Format::kJson) write_json(out, j);
  return kExitOk;
}

ordered_json case_json(const CaseResult& c) {
  return {{"space", c.space.to_string()},
          {"p", c.space.order()},
          {"q", std::vector<std::int64_t>(c.space.weights().begin(), c.space.weights().end())},
          {"h", c.h},
          {"formula", c.formula.str()},
          {"oracle", c.oracle.str()},
          {"status", c.agrees() ? "ok" : "mismatch"}};
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<LensSpace> spaces;
  VerifyOptions options;
  options.deep = config.deep;
  std::string grid;
  if (config.single_case) {
    spaces.push_back(build(config.space));
    options.h_min = config.h.value_or(0);
    options.h_max = config.h.value_or(config.h_max);
    options.record_all = true;
    grid = spaces.front().to_string() + ", h=" + std::to_string(options.h_min) + ".." +
           std::to_string(options.h_max);
  } else {
    if (config.p_min < 1 || config.p_max < config.p_min) {
      throw std::invalid_argument("need 1 <= p-min <= p-max");
    }
    for (int m : config.ms) {
      if (m < 2) throw std::invalid_argument("m must be at least 2");
    }
    spaces = canonical_grid(config.p_min, config.p_max, config.ms);
    options.h_max = config.h_max;
    std::string ms;
    for (std::size_t i = 0; i < config.ms.size(); ++i) {
      ms += (i ? "," : "") + std::to_string(config.ms[i]);
    }
    grid = "p=" + std::to_string(config.p_min) + ".." + std::to_string(config.p_max) + ", m={" +
           ms + "}, h=0.." + std::to_string(config.h_max) + ", canonical q";
  }
  if (options.h_min < 0 || options.h_max < options.h_min) {
    throw std::invalid_argument("h bounds must satisfy 0 <= h-min <= h-max");
  }

  auto budget = oracle::CandidateBudget::from_env();
  VerifyReport report = verify_spaces(spaces, options, budget);
  report.grid = grid;
  const auto& rows = config.single_case ? report.results : report.mismatches;

  if (config.format == Format::kCsv) {
    out << "space,h,formula,oracle,status\n";
    for (const auto& c : rows) {
      out << quoted(c.space.to_string()) << ',' << c.h << ',' << c.formula.str() << ','
          << c.oracle.str() << ',' << (c.agrees() ? "ok" : "mismatch") << '\n';
    }
    for (const auto& f : report.law_failures) {
      out << quoted(f.space.to_string()) << ',' << f.h << ",,," << f.law << "-law\n";
    }
  } else {
    ordered_json j;
    j["grid"] = report.grid;
    j["spaces"] = report.spaces;
    j["cases"] = report.cases;
    j["law_checks"] = report.law_checks;
    j["ok"] = report.ok();
    j["mismatches"] = ordered_json::array();
    for (const auto& c : report.mismatches) j["mismatches"].push_back(case_json(c));
    if (config.single_case) {
      j["results"] = ordered_json::array();
      for (const auto& c : report.results) j["results"].push_back(case_json(c));
    }
    j["law_failures"] = ordered_json::array();
    for (const auto& f : report.law_failures) {
      j["law_failures"].push_back(
          {{"space", f.space.to_string()}, {"h", f.h}, {"law", f.law}, {"detail", f.detail}});
    }
    write_json(out, j);
  }
  err << "verify: " << report.grid << ": " << report.spaces << " spaces, " << report.cases
      << " cases, " << report.mismatches.size() << " mismatches";
  if (config.deep) err << ", " << report.law_failures.size() << " law failures";
  err << '\n';
  for (const auto& f : report.law_failures) {
    err << "  " << f.law << " law, " << f.space.to_string() << " h=" << f.h << ": " << f.detail
        << '\n';
  }
  return report.ok() ? kExitOk : kExitMismatch;
}

int run_compare(const RunConfig& config, std::ostream& out) {
  const auto report = compare_spectra(build(config.space), build(config.other), config.i_max);
  if (config.format == Format::kCsv) {
    out << "a,b,i_max,equal,dimension_mismatch,divergence_degree,mult_a,mult_b\n";
    out << quoted(report.space_a.to_string()) << ',' << quoted(report.space_b.to_string()) << ','
        << report.i_max << ',' << (report.equal ? "true" : "false") << ','
        << (report.dimension_mismatch ? "true" : "false") << ',';
    if (report.first_divergence) {
      const auto& d = *report.first_divergence;
      out << d.degree << ',' << d.mult_a.str() << ',' << d.mult_b.str();
    } else {
      out << ",,";
    }
    out << '\n';
    return kExitOk;
  }
  ordered_json j;
  j["a"] = space_json(report.space_a);
  j["b"] = space_json(report.space_b);
  j["i_max"] = report.i_max;
  j["equal"] = report.equal;
  j["dimension_mismatch"] = report.dimension_mismatch;
  if (report.first_divergence) {
    const auto& d = *report.first_divergence;
    j["first_divergence"] = {{"i", d.degree}, {"mult_a", d.mult_a.str()}, {"mult_b", d.mult_b.str()}};
  } else {
    j["first_divergence"] = nullptr;
  }
  write_json(out, j);
  return kExitOk;
}

int run_parity(const RunConfig& config, std::ostream& out) {
  const auto report = parity_report(build(config.space), config.i_max);
  if (config.format == Format::kCsv) {
    out << "i,multiplicity,status\n";
    for (const auto& e : report.entries) {
      out << e.degree << ',' << e.mult.str() << ',' << to_string(e.status) << '\n';
    }
  } else {
    ordered_json j = space_json(report.space);
    j["corollary_applies"] = report.corollary_applies;
    j["entries"] = ordered_json::array();
    for (const auto& e : report.entries) {
      j["entries"].push_back({{"i", e.degree}, {"mult", e.mult.str()}, {"status", to_string(e.status)}});
    }
    write_json(out, j);
  }
  return report.has_violation() ? kExitMismatch : kExitOk;
}

int run_bench(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto budget = oracle::CandidateBudget::from_env();
  const auto report = bench(build(config.space), config.h_max, config.stride, budget);
  if (config.format == Format::kCsv) {
    out << "h,formula_seconds,oracle_seconds\n";
    for (const auto& row : report.rows) {
      out << row.h << ',' << row.formula_seconds << ',';
      if (row.oracle_seconds) {
        out << *row.oracle_seconds;
      } else {
        out << "skipped";
      }
      out << '\n';
    }
  } else {
    ordered_json j = space_json(report.space);
    j["h_max"] = config.h_max;
    j["stride"] = config.stride;
    j["table_seconds"] = report.table_seconds;
    j["formula_total_seconds"] = report.formula_total_seconds;
    j["oracle_budget"] = budget.limit();
    j["oracle_refused_at"] =
        report.oracle_refused_at ? ordered_json(*report.oracle_refused_at) : ordered_json(nullptr);
    j["values_agree"] = report.values_agree;
    j["rows"] = ordered_json::array();
    for (const auto& row : report.rows) {
      j["rows"].push_back({{"h", row.h},
                           {"formula_seconds", row.formula_seconds},
                           {"oracle_seconds", row.oracle_seconds ? ordered_json(*row.oracle_seconds)
                                                                 : ordered_json(nullptr)}});
    }
    write_json(out, j);
  }
  err << "bench: " << report.space.to_string() << ": formula covered h<=" << config.h_max
      << " in " << report.formula_total_seconds << " s; ";
  if (report.oracle_refused_at) {
    err << "oracle refused at h=" << *report.oracle_refused_at << " (budget " << budget.limit()
        << ")\n";
  } else {
    err << "oracle completed within budget\n";
  }
  if (!report.values_agree) {
    err << "bench: formula and oracle disagree\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  switch (config.command) {
    case Command::kSpectrum:
      return run_spectrum(config, out);
    case Command::kNl:
      return run_nl(config, out);
    case Command::kGamma:
      return run_gamma(config, out);
    case Command::kVerify:
      return run_verify(config, out, err);
    case Command::kCompare:
      return run_compare(config, out);
    case Command::kParity:
      return run_parity(config, out);
    case Command::kBench:
      return run_bench(config, out, err);
  }
  return kExitInvalid;
}

}  // namespace

std::vector<std::int64_t> parse_integers(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view piece = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || ec != std::errc{} || end != piece.data() + piece.size()) {
      throw std::invalid_argument("expected comma-separated integers, got '" + std::string(text) + "'");
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

SpaceArgs parse_space(std::string_view text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("expected p:q1,q2,... got '" + std::string(text) + "'");
  }
  const auto p = parse_integers(text.substr(0, colon));
  if (p.size() != 1) throw std::invalid_argument("expected a single p before ':'");
  return {p.front(), parse_integers(text.substr(colon + 1))};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.output.empty()) return dispatch(config, out, err);
    std::ofstream file(config.output);
    if (!file) {
      err << "error: cannot open " << config.output << " for writing\n";
      return kExitInvalid;
    }
    return dispatch(config, file, err);
  } catch (const InvalidLensSpace& e) {
    err << "error: invalid lens space: " << e.what() << '\n';
  } catch (const oracle::BudgetExceeded& e) {
    err << "error: oracle budget exceeded: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInvalid;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Laplace-Beltrami multiplicities on lens spaces L(p; q1, ..., qm)", "lensspec"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  RunConfig config;
  std::string q_text, a_text, b_text, subset_text, m_text, format_text = "csv";

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("--p", config.space.p, "group order p")->required();
    sub->add_option("--q", q_text, "weights q1,...,qm")->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("-o,--output", config.output, "output path (default stdout)");
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues and multiplicities up to i-max");
  add_space(spectrum_cmd);
  spectrum_cmd->add_option("--i-max", config.i_max, "largest degree");
  add_common(spectrum_cmd);

  auto* nl_cmd = app.add_subcommand("nl", "lattice counts N_L(h)");
  add_space(nl_cmd);
  nl_cmd->add_option("--h", config.h, "single norm");
  nl_cmd->add_option("--h-max", config.h_max, "all norms 0..h-max (when --h is absent)");
  add_common(nl_cmd);

  auto* gamma_cmd = app.add_subcommand("gamma", "box-restricted counts gamma(U, s)");
  add_space(gamma_cmd);
  gamma_cmd->add_option("--subset", subset_text, "one-based indices of U (default: every U)");
  gamma_cmd->add_option("--s", config.s, "single norm (default: every norm)");
  add_common(gamma_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "formula against brute-force enumeration");
  verify_cmd->add_option("--p", config.space.p, "single-case order");
  verify_cmd->add_option("--q", q_text, "single-case weights");
  verify_cmd->add_option("--h", config.h, "single-case norm");
  verify_cmd->add_option("--p-min", config.p_min, "grid: smallest p");
  verify_cmd->add_option("--p-max", config.p_max, "grid: largest p");
  verify_cmd->add_option("--m", m_text, "grid: comma-separated m values");
  verify_cmd->add_option("--h-max", config.h_max, "largest norm");
  verify_cmd->add_flag("--deep", config.deep, "also check the partition and fiber laws");
  add_common(verify_cmd);

  auto* compare_cmd = app.add_subcommand("compare", "compare two function spectra");
  compare_cmd->add_option("--a", a_text, "first space p:q1,q2,...")->required();
  compare_cmd->add_option("--b", b_text, "second space p:q1,q2,...")->required();
  compare_cmd->add_option("--i-max", config.i_max, "largest degree");
  add_common(compare_cmd);

  auto* parity_cmd = app.add_subcommand("parity", "parity of odd-degree multiplicities");
  add_space(parity_cmd);
  parity_cmd->add_option("--i-max", config.i_max, "largest degree");
  add_common(parity_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "time the formula against the oracle");
  add_space(bench_cmd);
  bench_cmd->add_option("--h-max", config.h_max, "largest norm (default 5000)");
  bench_cmd->add_option("--stride", config.stride, "norm step");
  add_common(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    const std::string name = chosen->get_name();
    if (name == "spectrum") config.command = Command::kSpectrum;
    if (name == "nl") config.command = Command::kNl;
    if (name == "gamma") config.command = Command::kGamma;
    if (name == "verify") config.command = Command::kVerify;
    if (name == "compare") config.command = Command::kCompare;
    if (name == "parity") config.command = Command::kParity;
    if (name == "bench") config.command = Command::kBench;
    if (config.command == Command::kBench && chosen->count("--h-max") == 0) config.h_max = 5000;

    config.format = format_text == "json" ? Format::kJson : Format::kCsv;
    if (!q_text.empty()) config.space.q = parse_integers(q_text);
    if (!subset_text.empty()) config.subset = parse_integers(subset_text);
    if (!m_text.empty()) {
      config.ms.clear();
      for (auto m : parse_integers(m_text)) config.ms.push_back(static_cast<int>(m));
    }
    if (config.command == Command::kCompare) {
      config.space = parse_space(a_text);
      config.other = parse_space(b_text);
    }
    if (config.command == Command::kVerify) {
      const bool has_p = chosen->count("--p") > 0;
      if (has_p != !q_text.empty()) throw std::invalid_argument("verify needs both --p and --q");
      config.single_case = has_p;
    }
    if (config.i_max < 0 || config.h_max < 0) {
      throw std::invalid_argument("degree and norm bounds must be non-negative");
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return run(config, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"lensspec"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lens::cli
