#include "settings.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "spinent/model.hpp"

namespace spinent::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Written by manifests; accepted and ignored so a manifest replays as a config.
const std::set<std::string, std::less<>> kManifestOnlyKeys = {
    "tool_version", "workers", "start_time", "end_time", "digest_sweep_csv", "digest_plot_gp"};

}  // namespace

long long parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError(std::string(what) + ": expected a nonnegative integer, got '" +
                     std::string(text) + "'");
  }
  return v;
}

double parse_real(std::string_view text, std::string_view what) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v)) {
    throw UsageError(std::string(what) + ": expected a finite real, got '" + std::string(text) + "'");
  }
  return v;
}

bool parse_bool(std::string_view text, std::string_view what) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw UsageError(std::string(what) + ": expected true or false, got '" + std::string(text) + "'");
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) {
    const long long v = parse_int(part, "integer list");
    if (v < 0 || v > 1'000'000'000) throw UsageError("integer list: value out of range");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<int> parse_two_s(std::string_view text) {
  text = trim(text);
  std::vector<int> out;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("--two-s range must be min:max:factor");
    const long long lo = parse_int(parts[0], "--two-s min");
    const long long hi = parse_int(parts[1], "--two-s max");
    const double factor = parse_real(parts[2], "--two-s factor");
    if (lo < 1 || hi < lo || hi > 1'000'000'000) throw UsageError("--two-s range: need 1 <= min <= max");
    if (!(factor > 1.0)) throw UsageError("--two-s range: factor must exceed 1");
    for (double v = static_cast<double>(lo); v <= static_cast<double>(hi) * (1.0 + 1e-12); v *= factor) {
      const int r = static_cast<int>(std::llround(v));
      if (out.empty() || r > out.back()) out.push_back(r);
    }
  } else {
    out = parse_int_list(text);
  }
  if (out.empty()) throw UsageError("--two-s: empty grid");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] < 1) throw UsageError("--two-s: every value must be >= 1");
    if (i > 0 && out[i] <= out[i - 1]) throw UsageError("--two-s: values must be strictly ascending");
  }
  return out;
}

SweepConfig SweepSettings::to_config() const {
  SweepConfig c;
  c.two_s_values = two_s;
  c.n_values = n;
  c.trials = trials;
  c.master_seed = seed;
  c.complex_mode = complex_mode;
  c.oracle_crosscheck_max_dim = oracle_max_dim;
  DeviceWeights w{cplx{}, cplx{}, cplx{c3}, cplx{c4}};
  // Weights that are already unit-norm to rounding are used bit for bit.
  if (std::abs(c3 * c3 + c4 * c4 - 1.0) > 1e-15) w = normalized(w);
  c.c = w;
  return c;
}

std::map<std::string, std::string> read_key_values(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key(trim(s.substr(0, eq)));
    const std::string value(trim(s.substr(eq + 1)));
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.emplace(key, value).second) {
      throw UsageError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
  }
  return kv;
}

void apply_key_values(const std::map<std::string, std::string>& kv, SweepSettings& s) {
  for (const auto& [key, value] : kv) {
    if (key == "two_s") {
      s.two_s = parse_two_s(value);
    } else if (key == "n") {
      s.n = parse_int_list(value);
    } else if (key == "trials") {
      s.trials = static_cast<int>(parse_int(value, "trials"));
    } else if (key == "seed") {
      s.seed = parse_u64(value, "seed");
    } else if (key == "c3") {
      s.c3 = parse_real(value, "c3");
    } else if (key == "c4") {
      s.c4 = parse_real(value, "c4");
    } else if (key == "complex") {
      s.complex_mode = parse_bool(value, "complex");
    } else if (key == "oracle_crosscheck_max_dim") {
      s.oracle_max_dim = static_cast<std::size_t>(parse_u64(value, "oracle_crosscheck_max_dim"));
    } else if (!kManifestOnlyKeys.contains(key)) {
      throw UsageError("config: unknown key '" + key + "'");
    }
  }
}

void apply_config_file(const std::filesystem::path& path, SweepSettings& settings) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  apply_key_values(read_key_values(in), settings);
}

unsigned workers_from_environment() {
  const char* env = std::getenv("SPINENT_WORKERS");
  if (env == nullptr || *env == '\0') return 0;
  const long long v = parse_int(env, "SPINENT_WORKERS");
  if (v < 0 || v > 4096) throw UsageError("SPINENT_WORKERS: out of range");
  return static_cast<unsigned>(v);
}

}  // namespace spinent::cli
