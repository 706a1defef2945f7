#include "commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <thread>

#include "output.hpp"
#include "settings.hpp"
#include "spinent/closedform.hpp"
#include "spinent/errors.hpp"
#include "spinent/oracle.hpp"
#include "spinent/sweep.hpp"
#include "verify.hpp"

namespace spinent::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct SweepFlags {
  std::string two_s;
  std::string n;
  int trials = 0;
  std::uint64_t seed = 0;
  double c3 = 0.0;
  double c4 = 0.0;
  bool complex_mode = false;
  std::size_t oracle_max_dim = 0;
  std::string out;
  std::string config;
};

struct SingleFlags {
  int two_s = 2;
  int n = 1;
  int trial = 1;
  std::uint64_t seed = 0;
  double c3 = 0.70710678118654752;
  double c4 = 0.70710678118654752;
  bool complex_mode = false;
  std::size_t oracle_max_dim = 64;
  bool json = false;
  bool text = false;
};

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  f.close();
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

int sweep_command(const CLI::App& cmd, const SweepFlags& f, std::ostream& out, std::ostream& err) {
  SweepSettings settings;
  SweepConfig config;
  unsigned workers = 0;
  try {
    if (!f.config.empty()) apply_config_file(f.config, settings);
    if (cmd.count("--two-s")) settings.two_s = parse_two_s(f.two_s);
    if (cmd.count("--n")) settings.n = parse_int_list(f.n);
    if (cmd.count("--trials")) settings.trials = f.trials;
    if (cmd.count("--seed")) settings.seed = f.seed;
    if (cmd.count("--c3")) settings.c3 = f.c3;
    if (cmd.count("--c4")) settings.c4 = f.c4;
    if (cmd.count("--complex")) settings.complex_mode = f.complex_mode;
    if (cmd.count("--oracle-max-dim")) settings.oracle_max_dim = f.oracle_max_dim;
    config = settings.to_config();
    config.validate();
    workers = workers_from_environment();
  } catch (const UsageError& e) {
    err << "spinent sweep: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "spinent sweep: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DegenerateError& e) {
    err << "spinent sweep: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const fs::path dir(f.out);
    fs::create_directories(dir);
    // A manifest marks a completed run; never leave a stale one behind.
    fs::remove(dir / "manifest.txt");

    ManifestInfo info;
    info.settings = settings;
    info.workers = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
    info.start_time = utc_timestamp();
    const auto points = run_sweep(config, workers);
    const std::string csv = render_csv(points);
    const std::string plot = render_plot_script(settings.n);
    write_file(dir / "sweep.csv", csv);
    write_file(dir / "plot.gp", plot);
    info.end_time = utc_timestamp();
    info.csv_digest = fnv1a64(csv);
    info.plot_digest = fnv1a64(plot);
    write_file(dir / "manifest.txt", render_manifest(info));
    out << "wrote " << points.size() << " points to " << (dir / "sweep.csv").string() << '\n';
  } catch (const std::exception& e) {
    err << "spinent sweep: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

int verify_command(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  if (opts.two_s_max < 1 || opts.two_s_max > kVerifyMaxTwoS) {
    err << "spinent verify: --two-s-max must lie in [1, " << kVerifyMaxTwoS << "]\n";
    return kExitUsage;
  }
  if (opts.cases < 1) {
    err << "spinent verify: --cases must be at least 1\n";
    return kExitUsage;
  }
  if (!(opts.tol >= 0.0)) {
    err << "spinent verify: --tol must be nonnegative\n";
    return kExitUsage;
  }
  if (opts.only_case && (*opts.only_case < 0 || *opts.only_case >= opts.cases)) {
    err << "spinent verify: --case must lie in [0, --cases)\n";
    return kExitUsage;
  }
  VerifyResult result;
  try {
    result = run_verify(opts);
  } catch (const std::exception& e) {
    err << "spinent verify: " << e.what() << '\n';
    return kExitFailure;
  }
  for (const auto& fam : result.families) {
    out << fam.name << ": " << fam.passed << '/' << fam.total << '\n';
  }
  for (const auto& fail : result.failures) {
    err << "FAIL " << fail.family << " " << fail.detail << "  (replay: spinent verify --seed "
        << opts.seed << " --cases " << opts.cases << " --two-s-max " << opts.two_s_max
        << " --case " << fail.index << ")\n";
  }
  return result.ok() ? kExitOk : kExitFailure;
}

std::string complex_text(cplx z) {
  return "(" + format_real(z.real()) + "," + format_real(z.imag()) + ")";
}

std::string row_text(const std::vector<cplx>& row) {
  std::string s;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ' ';
    s += complex_text(row[i]);
  }
  return s;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json row_json(const std::vector<cplx>& row) {
  json a = json::array();
  for (auto z : row) a.push_back(complex_json(z));
  return a;
}

std::vector<std::vector<cplx>> matrix_rows(const DensityMatrix& rho) {
  std::vector<std::vector<cplx>> rows(rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    for (std::size_t j = 0; j < rho.dim(); ++j) rows[i].push_back(rho(i, j));
  }
  return rows;
}

int single_command(const SingleFlags& f, std::ostream& out, std::ostream& err) {
  SweepConfig config;
  CoefficientSet set;
  try {
    SweepSettings settings;
    settings.two_s = {f.two_s};
    settings.n = {f.n};
    settings.trials = std::max(1, f.trial);
    settings.seed = f.seed;
    settings.c3 = f.c3;
    settings.c4 = f.c4;
    settings.complex_mode = f.complex_mode;
    config = settings.to_config();
    config.validate();
    if (f.trial < 1) throw UsageError("--trial must be at least 1");
    set = draw_trial(config, f.two_s, f.n, f.trial);
  } catch (const std::exception& e) {
    err << "spinent single: " << e.what() << '\n';
    return kExitUsage;
  }

  // Ordered (key, value) pairs shared by both renderings.
  std::vector<std::pair<std::string, json>> fields;
  std::vector<std::pair<std::string, std::string>> lines;
  auto put_real = [&](const std::string& key, double v) {
    fields.emplace_back(key, v);
    lines.emplace_back(key, format_real(v));
  };
  auto put_int = [&](const std::string& key, long long v) {
    fields.emplace_back(key, v);
    lines.emplace_back(key, std::to_string(v));
  };
  auto put_complex = [&](const std::string& key, cplx z) {
    fields.emplace_back(key, complex_json(z));
    lines.emplace_back(key, complex_text(z));
  };
  auto put_row = [&](const std::string& key, const std::vector<cplx>& row) {
    fields.emplace_back(key, row_json(row));
    lines.emplace_back(key, row_text(row));
  };
  auto put_matrix = [&](const std::string& key, const DensityMatrix& rho) {
    const auto rows = matrix_rows(rho);
    json m = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      m.push_back(row_json(rows[i]));
      lines.emplace_back(key + "[" + std::to_string(i + 1) + "]", row_text(rows[i]));
    }
    fields.emplace_back(key, m);
  };

  try {
    put_int("two_s", f.two_s);
    put_int("n", f.n);
    put_int("seed", static_cast<long long>(f.seed));
    put_int("trial", f.trial);
    put_real("x_max", x_max_schedule(f.two_s, f.n));
    put_row("c", std::vector<cplx>(set.c.begin(), set.c.end()));
    put_row("x3", set.x[kLevel00]);
    put_row("x4", set.x[kLevel11]);
    put_row("y3", set.y[kLevel00]);
    put_row("y4", set.y[kLevel11]);
    put_real("N", normalization(set));

    const auto b = branch_sums(set);
    put_real("X3", b.x3);
    put_real("X4", b.x4);
    put_complex("X34", b.x34);
    put_real("Y3", b.y3);
    put_real("Y4", b.y4);
    put_complex("Y34", b.y34);
    put_real("X_gram", b.x_gram);
    put_real("Y_gram", b.y_gram);

    const auto r = evaluate(b, set.c);
    put_real("C", r.concurrence);
    put_real("tau", r.one_tangle);
    put_real("gap", r.gap);
    put_real("abs_gap", std::abs(r.gap));
    put_real("slack", r.monogamy_slack);
    const auto fo = first_order_expansion(set);
    put_real("C2_first_order", fo.c2_approx);
    put_real("tau_first_order", fo.tau_approx);

    const std::size_t mm = set.dims.apparatus_dim();
    if (mm <= f.oracle_max_dim && mm <= kOracleMaxApparatusDim) {
      const auto o = oracle_evaluate(set);
      put_real("oracle_C", o.concurrence);
      put_real("oracle_tau_Q1", o.tangle_q1);
      put_real("oracle_tau_Q2", o.tangle_q2);
      put_real("diff_C", std::abs(r.concurrence - o.concurrence));
      put_real("diff_tau", std::abs(r.one_tangle - o.tangle_q1));
      put_real("separability_deviation", separability_deviation(set));
      const auto state = assemble_state(set);
      put_matrix("rho_D", reduce(state, Subsystem::Device));
      put_matrix("rho_Q1", reduce(state, Subsystem::Qubit1));
      if (mm <= 16) put_matrix("rho_M", reduce(state, Subsystem::Apparatus));
    }
  } catch (const std::exception& e) {
    err << "spinent single: " << e.what() << '\n';
    return kExitFailure;
  }

  if (f.json) {
    json doc = json::object();
    for (auto& [k, v] : fields) doc[k] = v;
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& [k, v] : lines) out << k << " = " << v << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement of two qubits coupled to large-spin apparatus systems", "spinent"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over S; writes sweep.csv, plot.gp, manifest.txt");
  sweep->add_option("--two-s", sf.two_s, "2S grid: comma list or min:max:factor");
  sweep->add_option("--n", sf.n, "exponents n of x_max = 2^(n-1)/(2S)^n, comma list");
  sweep->add_option("--trials", sf.trials, "trials per point (default 200)");
  sweep->add_option("--seed", sf.seed, "master seed (default 0)");
  sweep->add_option("--c3", sf.c3, "weight of |00> before normalization (default 1/sqrt2)");
  sweep->add_option("--c4", sf.c4, "weight of |11> before normalization (default 1/sqrt2)");
  sweep->add_flag("--complex", sf.complex_mode, "complex perturbations");
  sweep->add_option("--oracle-max-dim", sf.oracle_max_dim,
                    "cross-check trials with m_a*m_b at or below this against the oracle (default 64)");
  sweep->add_option("--out", sf.out, "output directory")->required();
  sweep->add_option("--config", sf.config, "key = value config file (flags take precedence)");

  VerifyOptions vo;
  int only_case = -1;
  auto* verify = app.add_subcommand("verify", "Property suites on random coefficient sets");
  verify->add_option("--two-s-max", vo.two_s_max, "largest 2S drawn (default 8)");
  verify->add_option("--cases", vo.cases, "number of random sets (default 100)");
  verify->add_option("--tol", vo.tol, "tolerance for oracle comparisons (default 1e-10)");
  verify->add_option("--seed", vo.seed, "seed (default 0)");
  auto* case_opt = verify->add_option("--case", only_case, "run only this case index");

  SingleFlags gf;
  auto* single = app.add_subcommand("single", "One draw with a full dump");
  single->add_option("--two-s", gf.two_s, "2S (default 2)");
  single->add_option("--n", gf.n, "exponent n (default 1)");
  single->add_option("--seed", gf.seed, "master seed (default 0)");
  single->add_option("--trial", gf.trial, "trial index, 1-based (default 1)");
  single->add_option("--c3", gf.c3, "weight of |00> before normalization");
  single->add_option("--c4", gf.c4, "weight of |11> before normalization");
  single->add_flag("--complex", gf.complex_mode, "complex perturbations");
  single->add_option("--oracle-max-dim", gf.oracle_max_dim,
                     "run the oracle when m_a*m_b is at or below this (default 64, 0 disables)");
  auto* json_flag = single->add_flag("--json", gf.json, "JSON output");
  auto* text_flag = single->add_flag("--text", gf.text, "key = value output (default)");
  json_flag->excludes(text_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*sweep) return sweep_command(*sweep, sf, out, err);
  if (*verify) {
    if (case_opt->count()) vo.only_case = only_case;
    return verify_command(vo, out, err);
  }
  return single_command(gf, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"spinent"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace spinent::cli
