#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace lml::harness {

namespace {
std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key + "' is not a real number: '" + text + "'");
  }
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("value for '" + key + "' is not an integer: '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ConfigError("value for '" + key + "' is not a boolean: '" + text + "'");
}

std::vector<double> parse_double_list(const std::string& key, const std::string& text) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) values.push_back(parse_double(key, item));
  }
  if (values.empty()) throw ConfigError("value for '" + key + "' is an empty list");
  return values;
}
}  // namespace

void Params::declare_int(const std::string& key, std::int64_t default_value,
                         const std::string& help) {
  order_.push_back(key);
  entries_[key] = {Kind::integer, std::to_string(default_value), help};
}

void Params::declare_double(const std::string& key, double default_value, const std::string& help) {
  order_.push_back(key);
  entries_[key] = {Kind::real, format_double(default_value), help};
}

void Params::declare_bool(const std::string& key, bool default_value, const std::string& help) {
  order_.push_back(key);
  entries_[key] = {Kind::boolean, default_value ? "true" : "false", help};
}

void Params::declare_string(const std::string& key, const std::string& default_value,
                            const std::string& help) {
  order_.push_back(key);
  entries_[key] = {Kind::text, default_value, help};
}

void Params::declare_double_list(const std::string& key, const std::string& default_value,
                                 const std::string& help) {
  order_.push_back(key);
  entries_[key] = {Kind::real_list, default_value, help};
}

void Params::apply_overrides(const std::map<std::string, std::string>& overrides) {
  for (const auto& [key, value] : overrides) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ConfigError("unknown configuration key '" + key + "'");
    // validate eagerly so a bad value names its key
    switch (it->second.kind) {
      case Kind::integer: parse_int(key, value); break;
      case Kind::real: parse_double(key, value); break;
      case Kind::boolean: parse_bool(key, value); break;
      case Kind::real_list: parse_double_list(key, value); break;
      case Kind::text: break;
    }
    it->second.value = value;
  }
}

const Params::Entry& Params::find(const std::string& key, Kind kind) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("undeclared configuration key '" + key + "'");
  if (it->second.kind != kind) throw ConfigError("configuration key '" + key + "' has another type");
  return it->second;
}

std::int64_t Params::get_int(const std::string& key) const {
  return parse_int(key, find(key, Kind::integer).value);
}

double Params::get_double(const std::string& key) const {
  return parse_double(key, find(key, Kind::real).value);
}

bool Params::get_bool(const std::string& key) const {
  return parse_bool(key, find(key, Kind::boolean).value);
}

std::string Params::get_string(const std::string& key) const {
  return find(key, Kind::text).value;
}

std::vector<double> Params::get_double_list(const std::string& key) const {
  return parse_double_list(key, find(key, Kind::real_list).value);
}

nlohmann::ordered_json Params::resolved() const {
  nlohmann::ordered_json out;
  for (const std::string& key : order_) {
    const Entry& entry = entries_.at(key);
    switch (entry.kind) {
      case Kind::integer: out[key] = parse_int(key, entry.value); break;
      case Kind::real: out[key] = parse_double(key, entry.value); break;
      case Kind::boolean: out[key] = parse_bool(key, entry.value); break;
      case Kind::real_list: out[key] = parse_double_list(key, entry.value); break;
      case Kind::text: out[key] = entry.value; break;
    }
  }
  return out;
}

}  // namespace lml::harness
