#pragma once

// Checked field access for configuration and description objects. Every
// error carries the JSON pointer of the offending value.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include "hyperdyn/rational.hpp"
#include "hyperdyn/verdict.hpp"

namespace hyperdyn::fields {

inline std::string child(const std::string& path, std::string_view key) {
    std::string escaped;
    for (char ch : key) {
        if (ch == '~') {
            escaped += "~0";
        } else if (ch == '/') {
            escaped += "~1";
        } else {
            escaped += ch;
        }
    }
    return path + "/" + escaped;
}

inline std::string child(const std::string& path, std::size_t index) {
    return path + "/" + std::to_string(index);
}

inline void require_object(const Json& value, const std::string& path) {
    if (!value.is_object()) {
        throw ConfigError(path, "expected an object");
    }
}

inline void require_array(const Json& value, const std::string& path) {
    if (!value.is_array()) {
        throw ConfigError(path, "expected an array");
    }
}

inline void allow_keys(const Json& object, const std::string& path,
                       std::initializer_list<std::string_view> keys) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (auto k : keys) {
            known = known || key == k;
        }
        if (!known) {
            throw ConfigError(child(path, key), "unknown field");
        }
    }
}

inline const Json& required(const Json& object, std::string_view key, const std::string& path) {
    const auto it = object.find(key);
    if (it == object.end()) {
        throw ConfigError(child(path, key), "missing required field");
    }
    return *it;
}

inline const Json* optional(const Json& object, std::string_view key) {
    const auto it = object.find(key);
    return it == object.end() ? nullptr : &*it;
}

inline std::uint64_t as_uint(const Json& value, const std::string& path) {
    if (!value.is_number_integer() ||
        (!value.is_number_unsigned() && value.get<std::int64_t>() < 0)) {
        throw ConfigError(path, "expected a nonnegative integer");
    }
    return value.get<std::uint64_t>();
}

inline std::uint64_t get_uint(const Json& object, std::string_view key, const std::string& path,
                              std::optional<std::uint64_t> fallback = std::nullopt) {
    if (const Json* v = optional(object, key)) {
        return as_uint(*v, child(path, key));
    }
    if (!fallback) {
        throw ConfigError(child(path, key), "missing required field");
    }
    return *fallback;
}

inline std::uint64_t get_positive(const Json& object, std::string_view key, const std::string& path,
                                  std::optional<std::uint64_t> fallback = std::nullopt) {
    const std::uint64_t value = get_uint(object, key, path, fallback);
    if (value == 0) {
        throw ConfigError(child(path, key), "must be positive");
    }
    return value;
}

inline std::string as_string(const Json& value, const std::string& path) {
    if (!value.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    return value.get<std::string>();
}

inline std::string get_string(const Json& object, std::string_view key, const std::string& path,
                              std::optional<std::string> fallback = std::nullopt) {
    if (const Json* v = optional(object, key)) {
        return as_string(*v, child(path, key));
    }
    if (!fallback) {
        throw ConfigError(child(path, key), "missing required field");
    }
    return *fallback;
}

inline bool get_bool(const Json& object, std::string_view key, const std::string& path,
                     bool fallback) {
    if (const Json* v = optional(object, key)) {
        if (!v->is_boolean()) {
            throw ConfigError(child(path, key), "expected true or false");
        }
        return v->get<bool>();
    }
    return fallback;
}

/// Accepts "p/q" strings and integers.
inline Rational as_rational(const Json& value, const std::string& path) {
    if (value.is_number_integer()) {
        return Rational(value.get<std::int64_t>());
    }
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const InputError& e) {
            throw ConfigError(path, e.what());
        }
    }
    throw ConfigError(path, "expected a rational such as \"1/4\"");
}

inline Rational get_rational(const Json& object, std::string_view key, const std::string& path,
                             std::optional<Rational> fallback = std::nullopt) {
    if (const Json* v = optional(object, key)) {
        return as_rational(*v, child(path, key));
    }
    if (!fallback) {
        throw ConfigError(child(path, key), "missing required field");
    }
    return *fallback;
}

}  // namespace hyperdyn::fields
