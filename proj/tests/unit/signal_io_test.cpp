#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "effdim/errors.hpp"
#include "effdim/signals.hpp"
#include "effdim/text.hpp"

namespace effdim {
namespace {

TEST(FormatNumber, SeventeenDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(parse_number(format_number(M_PI)), M_PI);
}

TEST(ParseNumber, Strict) {
  EXPECT_EQ(parse_number("1e-3"), 1e-3);
  EXPECT_THROW(parse_number("1.0x"), FormatError);
  EXPECT_THROW(parse_number(""), FormatError);
}

TEST(SignalFile, RoundTripIsExact) {
  const Signal theta = power_law_signal(1.3, 0.7, 40);
  const std::string text = format_signal(theta);
  EXPECT_EQ(text.rfind("# effdim-signal v1 N=40 tail_energy=", 0), 0u);
  std::istringstream in(text);
  const Signal back = read_signal(in);
  EXPECT_TRUE(std::ranges::equal(back.coeffs(), theta.coeffs()));
  EXPECT_EQ(back.tail_energy(), theta.tail_energy());
  EXPECT_EQ(format_signal(back), text);
}

TEST(SignalFile, RejectsMalformed) {
  const auto read = [](const std::string& s) {
    std::istringstream in(s);
    return read_signal(in);
  };
  EXPECT_THROW(read(""), FormatError);
  EXPECT_THROW(read("1\n2\n"), FormatError);
  EXPECT_THROW(read("# effdim-signal v1 N=2 tail_energy=0\n1\n"), FormatError);
  EXPECT_THROW(read("# effdim-signal v1 N=1 tail_energy=0\n1\n2\n"),
               FormatError);
  EXPECT_THROW(read("# effdim-signal v1 N=1 tail_energy=-1\n1\n"), FormatError);
  EXPECT_THROW(read("# effdim-signal v1 N=1 tail_energy=0\nabc\n"),
               FormatError);
  EXPECT_NO_THROW(read("# effdim-signal v1 N=1 tail_energy=0\n1\n"));
}

}  // namespace
}  // namespace effdim
