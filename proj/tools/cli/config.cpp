#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "effdim/errors.hpp"
#include "effdim/text.hpp"

namespace effdim::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::string spaced = s;
  for (char& c : spaced) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(spaced);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::uint64_t to_count(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const char* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("config key '" + key +
                      "' expects a non-negative integer, got '" + v + "'");
  }
  return out;
}

double to_real(const std::string& key, const std::string& v) {
  try {
    return parse_number(v);
  } catch (const FormatError&) {
    throw ConfigError("config key '" + key + "' expects a number, got '" + v +
                      "'");
  }
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    }
    if (cfg.values_.count(key) != 0) {
      throw ConfigError(origin + ":" + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file: " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

bool Config::has(const std::string& key) const {
  return values_.count(key) != 0;
}

std::optional<std::string> Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::text_or(const std::string& key,
                            const std::string& fallback) const {
  return text(key).value_or(fallback);
}

std::string Config::require_text(const std::string& key) const {
  auto v = text(key);
  if (!v) throw ConfigError("missing required config key '" + key + "'");
  return *v;
}

std::optional<double> Config::real(const std::string& key) const {
  const auto v = text(key);
  if (!v) return std::nullopt;
  return to_real(key, *v);
}

double Config::real_or(const std::string& key, double fallback) const {
  return real(key).value_or(fallback);
}

double Config::require_real(const std::string& key) const {
  return to_real(key, require_text(key));
}

std::optional<std::uint64_t> Config::count(const std::string& key) const {
  const auto v = text(key);
  if (!v) return std::nullopt;
  return to_count(key, *v);
}

std::uint64_t Config::count_or(const std::string& key,
                               std::uint64_t fallback) const {
  return count(key).value_or(fallback);
}

std::uint64_t Config::require_count(const std::string& key) const {
  return to_count(key, require_text(key));
}

std::optional<std::vector<double>> Config::reals(const std::string& key) const {
  const auto v = text(key);
  if (!v) return std::nullopt;
  std::vector<double> out;
  for (const auto& tok : split_list(*v)) out.push_back(to_real(key, tok));
  return out;
}

std::optional<std::vector<std::size_t>> Config::counts(
    const std::string& key) const {
  const auto v = text(key);
  if (!v) return std::nullopt;
  std::vector<std::size_t> out;
  for (const auto& tok : split_list(*v)) {
    out.push_back(static_cast<std::size_t>(to_count(key, tok)));
  }
  return out;
}

void Config::reject_unknown(const std::set<std::string>& known) const {
  for (const auto& [key, value] : values_) {
    if (known.count(key) == 0) {
      throw ConfigError("unknown config key '" + key + "' in " + origin_);
    }
  }
}

}  // namespace effdim::cli
