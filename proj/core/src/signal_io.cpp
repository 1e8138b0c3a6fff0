#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "effdim/errors.hpp"
#include "effdim/signals.hpp"
#include "effdim/text.hpp"

namespace effdim {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

double parse_number(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
    token.remove_prefix(1);
  }
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' ||
                            token.back() == '\r')) {
    token.remove_suffix(1);
  }
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc{} || ptr != last) {
    throw FormatError("not a number: '" + std::string(token) + "'");
  }
  return value;
}

void write_signal(std::ostream& os, const Signal& theta) {
  os << "# effdim-signal v1 N=" << theta.size()
     << " tail_energy=" << format_number(theta.tail_energy()) << '\n';
  for (double c : theta.coeffs()) {
    os << format_number(c) << '\n';
  }
}

std::string format_signal(const Signal& theta) {
  std::ostringstream os;
  write_signal(os, theta);
  return os.str();
}

Signal read_signal(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) {
    throw FormatError("signal file is empty");
  }
  if (!header.empty() && header.back() == '\r') header.pop_back();

  constexpr std::string_view kPrefix = "# effdim-signal v1 N=";
  constexpr std::string_view kTail = " tail_energy=";
  if (header.rfind(kPrefix, 0) != 0) {
    throw FormatError("missing '# effdim-signal v1' header");
  }
  const auto tail_pos = header.find(kTail, kPrefix.size());
  if (tail_pos == std::string::npos) {
    throw FormatError("signal header lacks tail_energy=");
  }
  const std::string_view n_text =
      std::string_view(header).substr(kPrefix.size(), tail_pos - kPrefix.size());
  std::size_t n = 0;
  {
    const auto [ptr, ec] =
        std::from_chars(n_text.data(), n_text.data() + n_text.size(), n);
    if (ec != std::errc{} || ptr != n_text.data() + n_text.size() || n == 0) {
      throw FormatError("bad N in signal header: '" + std::string(n_text) + "'");
    }
  }
  const double tail = parse_number(
      std::string_view(header).substr(tail_pos + kTail.size()));

  std::vector<double> coeffs;
  coeffs.reserve(n);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    if (coeffs.size() == n) {
      throw FormatError("signal file has more than N=" + std::to_string(n) +
                        " coefficients");
    }
    coeffs.push_back(parse_number(line));
  }
  if (coeffs.size() != n) {
    throw FormatError("signal file declares N=" + std::to_string(n) +
                      " but holds " + std::to_string(coeffs.size()));
  }
  try {
    return Signal(std::move(coeffs), tail);
  } catch (const DomainError& e) {
    throw FormatError(std::string("invalid signal: ") + e.what());
  }
}

}  // namespace effdim
