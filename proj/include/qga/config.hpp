#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qga {

/// Flat key-value config: one `key = value` per line, `#` comments, blank
/// lines ignored. Array values are comma separated. See docs/config.md.
class Config {
 public:
  static Config parse_text(const std::string& text);
  static Config parse_file(const std::string& path);

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  /// Accessors throw std::runtime_error naming the field when it is missing
  /// or malformed.
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace qga
