#include "output.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <sstream>

namespace spinent::cli {

std::string format_real(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

std::string join_ints(std::span<const int> values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

std::string render_csv(std::span<const SweepPoint> points) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& p : points) {
    const auto& s = p.stats;
    out += std::to_string(p.n);
    out += ',';
    out += std::to_string(p.two_s);
    out += ',';
    out += std::to_string(s.trials);
    for (double v : {s.mean_c, s.std_c, s.mean_tau, s.std_tau, s.mean_gap, s.std_gap,
                     s.mean_abs_gap, s.min_slack}) {
      out += ',';
      out += format_real(v);
    }
    out += '\n';
  }
  return out;
}

std::string render_plot_script(std::span<const int> n_values) {
  std::ostringstream os;
  os << "# gnuplot: mean concurrence against S, one line per n; inset mean gap C^2 - tau\n"
     << "set datafile separator \",\"\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output \"sweep.png\"\n"
     << "ns = \"" << join_ints(n_values, ' ') << "\"\n"
     << "sel(k) = (column(1) == word(ns, k) + 0) ? column(2) / 2.0 : 1/0\n"
     << "set multiplot\n"
     << "set logscale x\n"
     << "set xlabel \"S\"\n"
     << "set ylabel \"mean C(Q1,Q2)\"\n"
     << "set key bottom right\n"
     << "plot for [k = 1:words(ns)] \"sweep.csv\" skip 1 using (sel(k)):4 "
        "with linespoints title sprintf(\"x_max = 2^{n-1}/(2S)^n, n = %s\", word(ns, k))\n"
     << "set origin 0.45, 0.25\n"
     << "set size 0.45, 0.45\n"
     << "set xlabel \"S\"\n"
     << "set ylabel \"mean C^2 - tau\"\n"
     << "unset key\n"
     << "plot for [k = 1:words(ns)] \"sweep.csv\" skip 1 using (sel(k)):8 with linespoints\n"
     << "unset multiplot\n";
  return os.str();
}

std::string render_manifest(const ManifestInfo& info) {
  const auto& s = info.settings;
  std::ostringstream os;
  os << "# spinent sweep manifest; replay with: spinent sweep --config manifest.txt --out <dir>\n"
     << "tool_version = " << kToolVersion << '\n'
     << "two_s = " << join_ints(s.two_s) << '\n'
     << "n = " << join_ints(s.n) << '\n'
     << "trials = " << s.trials << '\n'
     << "seed = " << s.seed << '\n'
     << "c3 = " << format_real(s.c3) << '\n'
     << "c4 = " << format_real(s.c4) << '\n'
     << "complex = " << (s.complex_mode ? "true" : "false") << '\n'
     << "oracle_crosscheck_max_dim = " << s.oracle_max_dim << '\n'
     << "workers = " << info.workers << '\n'
     << "start_time = " << info.start_time << '\n'
     << "end_time = " << info.end_time << '\n'
     << "digest_sweep_csv = " << format_digest(info.csv_digest) << '\n'
     << "digest_plot_gp = " << format_digest(info.plot_digest) << '\n';
  return os.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_digest(std::uint64_t digest) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "fnv1a64:%016llx", static_cast<unsigned long long>(digest));
  return buf.data();
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace spinent::cli
