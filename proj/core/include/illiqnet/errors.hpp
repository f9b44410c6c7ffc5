#pragma once

#include <stdexcept>
#include <string>

namespace illiqnet {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Unreadable header / wrong magic / wrong version.
struct FormatError : Error {
    using Error::Error;
};

/// Row- or field-level invariant violation; carries 1-based source line when known.
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg, long line = -1)
        : Error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg), line(line) {}
    long line;
};

/// Operation called on a snapshot/series in the wrong liquidity state.
struct StateError : Error {
    using Error::Error;
};

/// Bad or unknown configuration key / value.
struct ConfigError : Error {
    using Error::Error;
};

/// Missing upstream artifact; names the subcommand that produces it.
struct StageError : Error {
    using Error::Error;
};

/// Statistic undefined on the given input (zero variance, no quoted slot, ...).
struct UndefinedStatError : Error {
    using Error::Error;
};

struct NotInNetworkError : Error {
    using Error::Error;
};

}  // namespace illiqnet
