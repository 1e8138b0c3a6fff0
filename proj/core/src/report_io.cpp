#include <cmath>
#include <ostream>
#include <sstream>

#include "effdim/experiments.hpp"
#include "effdim/text.hpp"

namespace effdim {

namespace {

void write_header(std::ostream& os, const Metadata& meta) {
  os << "# effdim-report v1\n";
  for (const auto& [k, v] : meta) os << "# " << k << '=' << v << '\n';
}

void write_notes(std::ostream& os, const std::vector<std::string>& notes) {
  for (const auto& n : notes) os << "# note: " << n << '\n';
}

const char* flag(bool b) { return b ? "true" : "false"; }

template <class Report>
std::string to_string(const Report& r) {
  std::ostringstream os;
  write_report(os, r);
  return os.str();
}

}  // namespace

void write_report(std::ostream& os, const ExperimentReport& r) {
  write_header(os, r.metadata);
  os << "offset,posterior_mass,posterior_mass_se,dhat_freq,dhat_freq_se,"
        "theory_bound,vacuous,satisfied\n";
  for (const auto& row : r.rows) {
    os << row.offset << ',' << format_number(row.posterior_mass) << ','
       << format_number(row.posterior_mass_se) << ','
       << format_number(row.dhat_freq) << ','
       << format_number(row.dhat_freq_se) << ','
       << format_number(row.theory_bound) << ',' << flag(row.vacuous) << ','
       << flag(row.satisfied) << '\n';
  }
  write_notes(os, r.notes);
}

void write_report(std::ostream& os, const LowerBoundReport& r) {
  write_header(os, r.metadata);
  os << "p1,p1_se,p2,p2_se,sum,combined_se,delta_prime,"
        "likelihood_ratio_moment,satisfied\n";
  os << format_number(r.p1) << ',' << format_number(r.p1_se) << ','
     << format_number(r.p2) << ',' << format_number(r.p2_se) << ','
     << format_number(r.sum) << ',' << format_number(r.combined_se) << ','
     << format_number(r.delta_prime) << ','
     << format_number(r.likelihood_ratio_moment) << ',' << flag(r.satisfied)
     << '\n';
}

void write_report(std::ostream& os, const SmoothnessReport& r) {
  write_header(os, r.metadata);
  os << "eps,d_tau,scaled_d_tau,dhat_median,s_hat_median,abs_error_median,"
        "scaled_error,undefined_count,outside_freq,outside_freq_se,"
        "bracket_lo,bracket_hi\n";
  for (const auto& row : r.rows) {
    os << format_number(row.eps) << ',' << row.d_tau << ','
       << format_number(row.scaled_d_tau) << ','
       << format_number(row.dhat_median) << ','
       << format_number(row.s_hat_median) << ','
       << format_number(row.abs_error_median) << ','
       << format_number(row.scaled_error) << ',' << row.undefined_count << ','
       << format_number(row.outside_freq) << ','
       << format_number(row.outside_freq_se) << ','
       << format_number(row.bracket_lo) << ','
       << format_number(row.bracket_hi) << '\n';
  }
  os << "# d_tau_monotone=" << flag(r.d_tau_monotone) << '\n';
  os << "# band_ratio=" << format_number(r.band_ratio) << '\n';
  os << "# band_ok=" << flag(r.band_ok) << '\n';
  os << "# error_nonincreasing=" << flag(r.error_nonincreasing) << '\n';
  write_notes(os, r.notes);
}

std::string format_report(const ExperimentReport& r) { return to_string(r); }
std::string format_report(const LowerBoundReport& r) { return to_string(r); }
std::string format_report(const SmoothnessReport& r) { return to_string(r); }

}  // namespace effdim
