#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "qd/sweep.hpp"

namespace qd {

/// Parse error with the offending line/key in the message.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses a flat key-value sweep configuration:
///
///   # comment
///   kind: lambda_sweep
///   gamma: 1
///   kT: 0
///   axis1: [lambda, 0, 10, 201]
///   observables: [discord, concurrence]
///   time_mode: asymptotic        # or at:2.5 or window:500,100,400
///
/// An optional brace-wrapped single-line form {k: v, k: v, ...} is accepted.
/// Unknown keys are rejected; defaults are N=1000, gamma=1, kT=0,
/// J0=J1=h0=h1=1, time_mode=asymptotic, observables=[discord].
/// forced_kind (from a CLI subcommand) supplies the kind when the document
/// omits it and must agree when both are present.
SweepSpec parse_config(const std::string& text,
                       std::optional<SweepKind> forced_kind = std::nullopt);

/// Parses "asymptotic" | "at:T" | "window:T,D,S" (the --time-mode grammar).
TimeMode parse_time_mode(const std::string& text);

} // namespace qd
