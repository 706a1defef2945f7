#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "output.hpp"
#include "settings.hpp"

using namespace spinent;
using namespace spinent::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("spinent_test_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("format_real is shortest round-trip") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(-2.5e-17) == "-2.5e-17");
  for (double v : {1.0 / 3.0, 0.70710678118654752, 1e-300, 123456.789}) {
    CHECK(std::strtod(format_real(v).c_str(), nullptr) == v);
  }
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(format_digest(0xabcULL) == "fnv1a64:0000000000000abc");
}

TEST_CASE("parse_two_s") {
  CHECK(parse_two_s("2,4,10") == std::vector<int>{2, 4, 10});
  CHECK(parse_two_s(" 3 ") == std::vector<int>{3});
  CHECK(parse_two_s("1:1000:10") == std::vector<int>{1, 10, 100, 1000});
  // 1, 1.5, 2.25, 3.375 -> rounded and deduplicated; 5.06 lies past max
  CHECK(parse_two_s("1:5:1.5") == std::vector<int>{1, 2, 3});
  CHECK_THROWS_AS(parse_two_s("4,2"), UsageError);
  CHECK_THROWS_AS(parse_two_s("0,2"), UsageError);
  CHECK_THROWS_AS(parse_two_s("2,x"), UsageError);
  CHECK_THROWS_AS(parse_two_s("1:10:1"), UsageError);
  CHECK_THROWS_AS(parse_two_s("1:10"), UsageError);
  CHECK_THROWS_AS(parse_two_s(""), UsageError);
}

TEST_CASE("config files") {
  SUBCASE("keys, comments, blanks") {
    std::istringstream in("# header\n\ntwo_s = 2,4  # trailing\nn=3\ntrials = 5\nseed = 7\n"
                          "c3 = 1\nc4 = 2\ncomplex = true\n");
    SweepSettings s;
    apply_key_values(read_key_values(in), s);
    CHECK(s.two_s == std::vector<int>{2, 4});
    CHECK(s.n == std::vector<int>{3});
    CHECK(s.trials == 5);
    CHECK(s.seed == 7);
    CHECK(s.c3 == 1.0);
    CHECK(s.c4 == 2.0);
    CHECK(s.complex_mode);
    const auto cfg = s.to_config();
    CHECK(std::abs(cfg.c[kLevel00]) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-15));
  }
  SUBCASE("unknown key") {
    std::istringstream in("trails = 5\n");
    SweepSettings s;
    CHECK_THROWS_AS(apply_key_values(read_key_values(in), s), UsageError);
  }
  SUBCASE("malformed lines") {
    std::istringstream missing_eq("trials 5\n");
    CHECK_THROWS_AS(read_key_values(missing_eq), UsageError);
    std::istringstream dup("seed = 1\nseed = 2\n");
    CHECK_THROWS_AS(read_key_values(dup), UsageError);
    std::istringstream bad_value("trials = many\n");
    SweepSettings s;
    CHECK_THROWS_AS(apply_key_values(read_key_values(bad_value), s), UsageError);
  }
  SUBCASE("default weights are used bit for bit") {
    CHECK(SweepSettings{}.to_config().c == bell_weights());
  }
}

TEST_CASE("sweep: row count and schema") {
  const auto dir = scratch("rows");
  const auto r = run({"sweep", "--two-s", "2", "--n", "3", "--trials", "1", "--seed", "7", "--out",
                      dir.string()});
  REQUIRE(r.code == 0);
  const std::string csv = slurp(dir / "sweep.csv");
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kCsvHeader);
  CHECK(lines[1].rfind("3,2,1,", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.back() == '\n');
  for (const auto& line : lines) CHECK(line.back() != ',');
  CHECK(fs::exists(dir / "plot.gp"));
  CHECK(fs::exists(dir / "manifest.txt"));
  fs::remove_all(dir);
}

TEST_CASE("sweep: order, determinism and manifest replay") {
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  const auto c = scratch("det_c");
  const std::vector<std::string> common{"sweep", "--two-s", "1:40:3", "--n", "1,3", "--trials", "20",
                                        "--seed", "11"};
  auto with_out = [&](const fs::path& d) {
    auto args = common;
    args.push_back("--out");
    args.push_back(d.string());
    return args;
  };
  REQUIRE(run(with_out(a)).code == 0);
  REQUIRE(run(with_out(b)).code == 0);
  const std::string csv = slurp(a / "sweep.csv");
  CHECK(csv == slurp(b / "sweep.csv"));

  const auto lines = split_lines(csv);
  // two_s grid 1, 3, 9, 27 for each of n = 1, 3
  REQUIRE(lines.size() == 9);
  CHECK(lines[1].rfind("1,1,", 0) == 0);
  CHECK(lines[4].rfind("1,27,", 0) == 0);
  CHECK(lines[5].rfind("3,1,", 0) == 0);

  const std::string manifest = slurp(a / "manifest.txt");
  CHECK(manifest.find("two_s = 1,3,9,27\n") != std::string::npos);
  CHECK(manifest.find("seed = 11\n") != std::string::npos);
  CHECK(manifest.find("digest_sweep_csv = " + format_digest(fnv1a64(csv))) != std::string::npos);
  CHECK(manifest.find("digest_plot_gp = " + format_digest(fnv1a64(slurp(a / "plot.gp")))) !=
        std::string::npos);

  REQUIRE(run({"sweep", "--config", (a / "manifest.txt").string(), "--out", c.string()}).code == 0);
  CHECK(slurp(c / "sweep.csv") == csv);

  // flags override the file
  REQUIRE(run({"sweep", "--config", (a / "manifest.txt").string(), "--trials", "3", "--out",
               c.string()})
              .code == 0);
  CHECK(split_lines(slurp(c / "sweep.csv"))[1].rfind("1,1,3,", 0) == 0);
  for (const auto& d : {a, b, c}) fs::remove_all(d);
}

TEST_CASE("sweep: worker count does not change bytes") {
  const auto a = scratch("w1");
  const auto b = scratch("w3");
  const std::vector<std::string> base{"sweep", "--two-s", "2,5,30", "--trials", "15", "--complex"};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out", a.string()});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out", b.string()});
  ::setenv("SPINENT_WORKERS", "1", 1);
  REQUIRE(run(args_a).code == 0);
  ::setenv("SPINENT_WORKERS", "3", 1);
  REQUIRE(run(args_b).code == 0);
  ::unsetenv("SPINENT_WORKERS");
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("sweep: exit codes") {
  const auto dir = scratch("codes");
  CHECK(run({"sweep", "--two-s", "2"}).code == 2);  // --out missing
  CHECK(run({"sweep", "--n", "4", "--out", dir.string()}).code == 2);
  CHECK(run({"sweep", "--trials", "0", "--out", dir.string()}).code == 2);
  CHECK(run({"sweep", "--two-s", "4,2", "--out", dir.string()}).code == 2);
  CHECK(run({"sweep", "--c3", "0", "--c4", "0", "--out", dir.string()}).code == 2);
  CHECK(run({"sweep", "--bogus", "--out", dir.string()}).code == 2);
  CHECK(run({"sweep", "--config", (dir / "missing.cfg").string(), "--out", dir.string()}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--help"}).code == 0);
  ::setenv("SPINENT_WORKERS", "lots", 1);
  CHECK(run({"sweep", "--two-s", "2", "--trials", "1", "--out", dir.string()}).code == 2);
  ::unsetenv("SPINENT_WORKERS");

  // a regular file where the output directory should be
  fs::create_directories(dir);
  std::ofstream(dir / "blocker") << "x";
  const auto r = run({"sweep", "--two-s", "2", "--trials", "1", "--out", (dir / "blocker").string()});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
  fs::remove_all(dir);
}

TEST_CASE("verify") {
  SUBCASE("defaults pass") {
    const auto r = run({"verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("monogamy: 100/100\n") != std::string::npos);
    CHECK(r.out.find("oracle-concurrence: 100/100\n") != std::string::npos);
    CHECK(r.out.find("oracle-tangle: 100/100\n") != std::string::npos);
    CHECK(r.out.find("separability: 100/100\n") != std::string::npos);
    CHECK(split_lines(r.out).size() == 8);
  }
  SUBCASE("impossible tolerance fails with a replay tuple") {
    const auto r = run({"verify", "--tol", "1e-30", "--cases", "10", "--seed", "3"});
    CHECK(r.code == 1);
    CHECK(r.err.find("seed=3 case=") != std::string::npos);
    CHECK(r.err.find("--case ") != std::string::npos);
  }
  SUBCASE("replay of one case") {
    const auto r = run({"verify", "--cases", "10", "--case", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("monogamy: 1/1\n") != std::string::npos);
  }
  SUBCASE("usage errors") {
    CHECK(run({"verify", "--cases", "0"}).code == 2);
    CHECK(run({"verify", "--two-s-max", "0"}).code == 2);
    CHECK(run({"verify", "--two-s-max", "500"}).code == 2);
    CHECK(run({"verify", "--tol", "-1"}).code == 2);
    CHECK(run({"verify", "--case", "100"}).code == 2);
  }
}

TEST_CASE("single") {
  SUBCASE("text format") {
    const auto r = run({"single", "--two-s", "2", "--n", "1", "--seed", "1", "--text"});
    REQUIRE(r.code == 0);
    double c = -1.0, tau = -1.0;
    for (const auto& line : split_lines(r.out)) {
      if (line.rfind("C = ", 0) == 0) c = std::stod(line.substr(4));
      if (line.rfind("tau = ", 0) == 0) tau = std::stod(line.substr(6));
    }
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    CHECK(tau >= 0.0);
    CHECK(tau <= 1.0);
    CHECK(r.out.find("rho_D[4] = ") != std::string::npos);
    CHECK(r.out.find("rho_Q1[2] = ") != std::string::npos);
    CHECK(r.out.find("rho_M[9] = ") != std::string::npos);
    CHECK(run({"single", "--two-s", "2", "--n", "1", "--seed", "1", "--text"}).out == r.out);
  }
  SUBCASE("oracle agreement") {
    const auto r = run({"single", "--two-s", "1", "--n", "1", "--seed", "1"});
    REQUIRE(r.code == 0);
    double diff_c = 1.0, diff_tau = 1.0;
    for (const auto& line : split_lines(r.out)) {
      if (line.rfind("diff_C = ", 0) == 0) diff_c = std::stod(line.substr(9));
      if (line.rfind("diff_tau = ", 0) == 0) diff_tau = std::stod(line.substr(11));
    }
    CHECK(diff_c <= 1e-10);
    CHECK(diff_tau <= 1e-10);
  }
  SUBCASE("json") {
    const auto r = run({"single", "--two-s", "3", "--json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.front() == '{');
    CHECK(r.out.find("\"tau\":") != std::string::npos);
  }
  SUBCASE("large S skips the oracle") {
    const auto r = run({"single", "--two-s", "1000", "--n", "2"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("oracle_C") == std::string::npos);
  }
  SUBCASE("usage errors") {
    CHECK(run({"single", "--json", "--text"}).code == 2);
    CHECK(run({"single", "--n", "5"}).code == 2);
    CHECK(run({"single", "--two-s", "-1"}).code == 2);
    CHECK(run({"single", "--trial", "0"}).code == 2);
    CHECK(run({"single", "--two-s", "abc"}).code == 2);
  }
}
