#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "effdim/posterior.hpp"
#include "effdim/signals.hpp"

namespace effdim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

struct NamedSignal {
  Signal theta;
  std::string label;
};

/// Builds the signal named by `signal` (zero, power-law, self-similar,
/// adversarial-prime, adversarial-double-prime, block, values, file).
NamedSignal build_signal(const Config& cfg);

/// kappa and varkappa from the config, noise level `eps`.
PriorParams build_prior(const Config& cfg);

}  // namespace effdim::cli
