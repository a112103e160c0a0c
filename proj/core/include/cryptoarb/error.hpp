#pragma once

#include <stdexcept>

namespace cryptoarb {

// Malformed or inconsistent input data, including insufficient history for
// a requested window.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid knob combinations (bad spans, rank bounds, etc.).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cryptoarb
