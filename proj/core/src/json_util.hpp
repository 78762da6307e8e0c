#pragma once

// Internal helpers shared by every module that reads or writes canonical JSON.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

namespace mazo::detail {

using Json = nlohmann::json;

// Thrown by the strict readers below; each module maps it onto its own error.
struct JsonShapeError {
  std::string what;
};

[[noreturn]] inline void shape_error(std::string what) { throw JsonShapeError{std::move(what)}; }

inline const Json& field(const Json& j, std::string_view key) {
  if (!j.is_object()) shape_error("expected object while reading '" + std::string(key) + "'");
  auto it = j.find(key);
  if (it == j.end()) shape_error("missing field '" + std::string(key) + "'");
  return *it;
}

inline bool has(const Json& j, std::string_view key) { return j.is_object() && j.contains(key); }

inline std::int64_t as_int(const Json& j, std::string_view ctx) {
  if (!j.is_number_integer()) shape_error("'" + std::string(ctx) + "' must be an integer");
  return j.get<std::int64_t>();
}

inline int as_i32(const Json& j, std::string_view ctx) {
  const auto v = as_int(j, ctx);
  if (v < INT32_MIN || v > INT32_MAX) shape_error("'" + std::string(ctx) + "' out of range");
  return static_cast<int>(v);
}

inline std::uint64_t as_u64(const Json& j, std::string_view ctx) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  shape_error("'" + std::string(ctx) + "' must be a non-negative integer");
}

inline const std::string& as_str(const Json& j, std::string_view ctx) {
  if (!j.is_string()) shape_error("'" + std::string(ctx) + "' must be a string");
  return j.get_ref<const std::string&>();
}

inline bool as_bool(const Json& j, std::string_view ctx) {
  if (!j.is_boolean()) shape_error("'" + std::string(ctx) + "' must be a boolean");
  return j.get<bool>();
}

inline const Json& as_array(const Json& j, std::string_view ctx) {
  if (!j.is_array()) shape_error("'" + std::string(ctx) + "' must be an array");
  return j;
}

inline const Json& as_object(const Json& j, std::string_view ctx) {
  if (!j.is_object()) shape_error("'" + std::string(ctx) + "' must be an object");
  return j;
}

inline int get_i32(const Json& j, std::string_view key) { return as_i32(field(j, key), key); }
inline std::uint64_t get_u64(const Json& j, std::string_view key) { return as_u64(field(j, key), key); }
inline const std::string& get_str(const Json& j, std::string_view key) { return as_str(field(j, key), key); }

template <typename E, std::size_t N>
struct EnumTable {
  std::array<std::pair<E, std::string_view>, N> entries;

  std::string_view name(E v) const noexcept {
    for (const auto& [e, n] : entries)
      if (e == v) return n;
    return "?";
  }
  std::optional<E> parse(std::string_view s) const noexcept {
    for (const auto& [e, n] : entries)
      if (n == s) return e;
    return std::nullopt;
  }
  E require(const Json& j, std::string_view ctx) const {
    const auto& s = as_str(j, ctx);
    if (auto v = parse(s)) return *v;
    shape_error("'" + std::string(ctx) + "' has unknown value '" + s + "'");
  }
};

// Canonical text: std::map-backed objects are key-sorted; dump() without
// indent emits no insignificant whitespace; non-ASCII stays raw UTF-8.
inline std::string canonical(const Json& j) { return j.dump(); }

}  // namespace mazo::detail
