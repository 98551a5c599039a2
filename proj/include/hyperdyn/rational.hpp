#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace hyperdyn {

/// Exact metric values. All distances, thresholds and diameters are compared
/// without tolerance.
using Rational = boost::rational<std::int64_t>;

/// Malformed user input: unknown labels, violated invariants, bad parameters.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured size budget would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or description field; `path` is a JSON pointer.
class ConfigError : public InputError {
public:
    ConfigError(std::string path, const std::string& message)
        : InputError((path.empty() ? std::string("(root)") : path) + ": " + message),
          path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

/// Parses "p/q", "p" or "-p/q". Throws InputError on anything else, including q = 0.
Rational parse_rational(std::string_view text);

/// Canonical text: "p" when the denominator is 1, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

}  // namespace hyperdyn
