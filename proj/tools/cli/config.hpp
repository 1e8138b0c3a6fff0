#pragma once

// Flat `key = value` run configuration. `#` starts a comment; blank lines are
// ignored; keys may appear once.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace effdim::cli {

class Config {
 public:
  /// Throws ConfigError on malformed lines or duplicate keys.
  static Config parse(const std::string& text, const std::string& origin);
  /// Throws ConfigError naming the path if it cannot be read.
  static Config load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;

  std::optional<std::string> text(const std::string& key) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;
  std::string require_text(const std::string& key) const;

  std::optional<double> real(const std::string& key) const;
  double real_or(const std::string& key, double fallback) const;
  double require_real(const std::string& key) const;

  std::optional<std::uint64_t> count(const std::string& key) const;
  std::uint64_t count_or(const std::string& key, std::uint64_t fallback) const;
  std::uint64_t require_count(const std::string& key) const;

  /// Comma- or whitespace-separated list.
  std::optional<std::vector<double>> reals(const std::string& key) const;
  std::optional<std::vector<std::size_t>> counts(const std::string& key) const;

  /// Throws ConfigError for the first key not in `known`.
  void reject_unknown(const std::set<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
  std::string origin_;
};

}  // namespace effdim::cli
