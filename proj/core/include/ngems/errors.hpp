#pragma once

#include <stdexcept>
#include <string>

namespace ngems {

// Bad user-supplied configuration: malformed keys, out-of-range parameters,
// mismatched units, inconsistent time spans. Maps to exit code 1 in the CLI.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or unusable input data (CSV rows, empty datasets, bad model files).
// Also maps to exit code 1: the fix is on the user's side.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A structurally valid scenario whose storage cannot cover the demand/supply
// spread, detected by the sufficiency check. Maps to exit code 2.
class InfeasibleConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal contract broken at run time: power balance off, state outside
// [0, capacity], battery power outside its limits. These indicate a bug, not a
// user mistake. Maps to exit code 3.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ngems
