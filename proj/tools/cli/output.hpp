#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "settings.hpp"
#include "spinent/sweep.hpp"

namespace spinent::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

inline constexpr std::string_view kCsvHeader =
    "n,two_s,trials,mean_c,std_c,mean_tau,std_tau,mean_gap,std_gap,mean_abs_gap,min_slack";

// Shortest decimal that parses back to the same double.
std::string format_real(double v);

std::string join_ints(std::span<const int> values, char sep = ',');

std::string render_csv(std::span<const SweepPoint> points);

// gnuplot script that reads sweep.csv from its own directory.
std::string render_plot_script(std::span<const int> n_values);

struct ManifestInfo {
  SweepSettings settings;
  unsigned workers = 0;
  std::string start_time;
  std::string end_time;
  std::uint64_t csv_digest = 0;
  std::uint64_t plot_digest = 0;
};

std::string render_manifest(const ManifestInfo& info);

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);
std::string format_digest(std::uint64_t digest);

// UTC, ISO 8601 with seconds.
std::string utc_timestamp();

}  // namespace spinent::cli
