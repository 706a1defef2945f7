#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinent/sweep.hpp"

namespace spinent::cli {

// Bad flags, bad config files: exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// User-facing sweep parameters. c3/c4 are kept as given; to_config() normalizes.
struct SweepSettings {
  std::vector<int> two_s = default_two_s_grid();
  std::vector<int> n{1, 2, 3};
  int trials = 200;
  std::uint64_t seed = 0;
  double c3 = 0.70710678118654752;
  double c4 = 0.70710678118654752;
  bool complex_mode = false;
  std::size_t oracle_max_dim = 64;

  SweepConfig to_config() const;
};

// "2,4,10" or the geometric range "min:max:factor" (values rounded to integers,
// duplicates dropped).
std::vector<int> parse_two_s(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);
long long parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
double parse_real(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

// `key = value` lines, `#` comments, blank lines ignored. Duplicate keys and
// malformed lines are errors.
std::map<std::string, std::string> read_key_values(std::istream& in);

// Applies a config (or manifest) file on top of `settings`. Unknown keys throw.
void apply_config_file(const std::filesystem::path& path, SweepSettings& settings);
void apply_key_values(const std::map<std::string, std::string>& kv, SweepSettings& settings);

// Worker count from SPINENT_WORKERS; 0 (all threads) when unset.
unsigned workers_from_environment();

}  // namespace spinent::cli
