#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavedg::cli {

/// Bad or missing configuration (exit code 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown during a run (exit code 2).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key = value configuration. Lines starting with '#' are comments.
class Config {
 public:
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  int get_int(const std::string& key) const;
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma separated integers; "a:b" expands to a, a+1, ..., b.
  std::vector<int> get_int_list(const std::string& key) const;
  /// Comma separated reals; each item may be a fraction "2/5".
  std::vector<double> get_double_list(const std::string& key) const;

  /// Throws ConfigError naming the first key not in `allowed`.
  void reject_unknown(const std::set<std::string>& allowed) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

double parse_real(const std::string& text, const std::string& key);
int parse_int(const std::string& text, const std::string& key);

}  // namespace wavedg::cli
