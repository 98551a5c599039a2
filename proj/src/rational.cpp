#include "hyperdyn/rational.hpp"

#include <charconv>

namespace hyperdyn {

namespace {

std::int64_t parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) {
        throw InputError("invalid rational '" + std::string(whole) + "'");
    }
    std::int64_t value = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || end != digits.data() + digits.size()) {
        throw InputError("invalid rational '" + std::string(whole) + "'");
    }
    return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const std::int64_t num = parse_integer(text.substr(0, slash), text);
    std::int64_t den = 1;
    if (slash != std::string_view::npos) {
        const auto tail = text.substr(slash + 1);
        if (!tail.empty() && tail.front() == '-') {
            throw InputError("invalid rational '" + std::string(text) + "': negative denominator");
        }
        den = parse_integer(tail, text);
    }
    if (den == 0) {
        throw InputError("invalid rational '" + std::string(text) + "': zero denominator");
    }
    return Rational(num, den);
}

std::string to_string(const Rational& value) {
    if (value.denominator() == 1) {
        return std::to_string(value.numerator());
    }
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

}  // namespace hyperdyn
