#pragma once

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "optonet/errors.hpp"
#include "optonet/params.hpp"

namespace optonet {

/// One `key = value` assignment and where it came from.
struct ConfigEntry {
  std::string key;
  std::string value;
  std::string source;
  int line = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::string known_keys() {
  std::string s;
  for (const auto& f : kParamFields) s += std::string(f.name) + ", ";
  return s + std::string(kAuxPresentField);
}

}  // namespace detail

/// Parses a flat key-value document: one `key = value` per line, `#` starts a
/// comment, blank lines ignored. A key may appear only once.
inline std::vector<ConfigEntry> parse_key_value(std::string_view text, const std::string& source) {
  std::vector<ConfigEntry> out;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(source, line_no, "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(source, line_no, "missing key before '='");
    if (value.empty()) throw ConfigError(source, line_no, "missing value for '" + key + "'");
    if (auto it = seen.find(key); it != seen.end())
      throw ConfigError(source, line_no,
                        "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
    seen.emplace(key, line_no);
    out.push_back({key, value, source, line_no});
  }
  return out;
}

/// Accepts either a flat JSON object of parameters or any object with a
/// `params` member (e.g. a `solve --format json` report).
inline std::vector<ConfigEntry> parse_json_params(std::string_view text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(source, 0, std::string("malformed JSON: ") + e.what());
  }
  const nlohmann::json& obj = doc.contains("params") ? doc.at("params") : doc;
  if (!obj.is_object()) throw ConfigError(source, 0, "expected a JSON object of parameters");

  std::vector<ConfigEntry> out;
  for (const auto& [key, val] : obj.items()) {
    std::string text_value;
    if (val.is_boolean())
      text_value = val.get<bool>() ? "true" : "false";
    else if (val.is_number())
      text_value = val.dump();
    else
      throw ConfigError(source, 0, "value of '" + key + "' must be a number or boolean");
    out.push_back({key, text_value, source, 0});
  }
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<ConfigEntry> load_config_file(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json_params(text, path);
  return parse_key_value(text, path);
}

/// Parses `key=value` command-line overrides. Repeating a key with the same
/// value is harmless; repeating it with a different value is an error.
inline std::vector<ConfigEntry> parse_overrides(const std::vector<std::string>& items) {
  std::vector<ConfigEntry> out;
  std::map<std::string, std::string, std::less<>> seen;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--set", 0, "expected key=value, got '" + item + "'");
    std::string key(detail::trim(std::string_view(item).substr(0, eq)));
    std::string value(detail::trim(std::string_view(item).substr(eq + 1)));
    if (key.empty() || value.empty()) throw ConfigError("--set", 0, "expected key=value, got '" + item + "'");
    if (auto it = seen.find(key); it != seen.end()) {
      if (it->second != value)
        throw ConfigError("--set", 0,
                          "conflicting values for '" + key + "': '" + it->second + "' and '" + value + "'");
      continue;
    }
    seen.emplace(key, value);
    out.push_back({key, value, "--set", 0});
  }
  return out;
}

inline double parse_number(const ConfigEntry& e) {
  const std::string& s = e.value;
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(e.source, e.line, "value '" + s + "' for '" + e.key + "' is not a number");
  return v;
}

inline bool parse_bool(const ConfigEntry& e) {
  const std::string& s = e.value;
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(e.source, e.line, "value '" + s + "' for '" + e.key + "' is not a boolean");
}

/// Applies entries in order; unknown keys are a hard error.
inline void apply_entries(NetworkParams& p, const std::vector<ConfigEntry>& entries) {
  for (const auto& e : entries) {
    if (e.key == kAuxPresentField) {
      p.aux_present = parse_bool(e);
      continue;
    }
    auto f = find_param_field(e.key);
    if (!f)
      throw ConfigError(e.source, e.line, "unknown key '" + e.key + "' (known keys: " + detail::known_keys() + ")");
    p.*(f->member) = parse_number(e);
  }
}

/// Defaults <- config file <- overrides, then validated. A validation failure
/// is reported at the position of the entry that set the offending field.
inline NetworkParams resolve_params(const std::optional<std::string>& config_path,
                                    const std::vector<std::string>& overrides,
                                    NetworkParams base = {}) {
  std::vector<ConfigEntry> entries;
  if (config_path) entries = load_config_file(*config_path);
  const auto over = parse_overrides(overrides);
  entries.insert(entries.end(), over.begin(), over.end());
  apply_entries(base, entries);
  try {
    validate(base);
  } catch (const ValidationError& err) {
    for (auto it = entries.rbegin(); it != entries.rend(); ++it)
      if (it->key == err.field()) throw ConfigError(it->source, it->line, err.what());
    throw ConfigError("parameters", 0, std::string(err.what()) + " (value not set explicitly)");
  }
  return base;
}

}  // namespace optonet
