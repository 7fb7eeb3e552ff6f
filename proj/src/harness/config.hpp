#ifndef LMLKIT_HARNESS_CONFIG_HPP
#define LMLKIT_HARNESS_CONFIG_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lml::harness {

/// Raised for any configuration problem; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Declared parameter schema plus resolved values. Experiments declare their
/// keys with defaults; --set overrides are validated against the declaration,
/// so unknown keys are rejected with a diagnostic naming the key.
class Params {
 public:
  void declare_int(const std::string& key, std::int64_t default_value, const std::string& help);
  void declare_double(const std::string& key, double default_value, const std::string& help);
  void declare_bool(const std::string& key, bool default_value, const std::string& help);
  void declare_string(const std::string& key, const std::string& default_value,
                      const std::string& help);
  /// Comma-separated list of reals.
  void declare_double_list(const std::string& key, const std::string& default_value,
                           const std::string& help);

  /// Applies key=value overrides; throws ConfigError on unknown keys or
  /// unparseable values.
  void apply_overrides(const std::map<std::string, std::string>& overrides);

  std::int64_t get_int(const std::string& key) const;
  double get_double(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;

  /// Fully-resolved configuration for the manifest, in declaration order.
  nlohmann::ordered_json resolved() const;

 private:
  enum class Kind { integer, real, boolean, text, real_list };
  struct Entry {
    Kind kind;
    std::string value;  // canonical textual form
    std::string help;
  };
  const Entry& find(const std::string& key, Kind kind) const;

  std::vector<std::string> order_;
  std::map<std::string, Entry> entries_;
};

}  // namespace lml::harness

#endif  // LMLKIT_HARNESS_CONFIG_HPP
