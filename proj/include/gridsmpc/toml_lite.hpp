#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace gridsmpc::toml_lite {

// Minimal TOML subset: # comments, bare/quoted keys with scalar values
// (string, integer, float, bool), [table] headers and [[array-of-table]]
// headers. No inline tables, no arrays, no dotted keys, no dates.
using Value = std::variant<bool, std::int64_t, double, std::string>;

struct Table {
  std::map<std::string, Value> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  // Typed getters throw std::runtime_error naming the key on absence or
  // type mismatch (an integer is accepted where a float is asked for).
  double get_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key) const;
  bool get_bool(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  std::string get_string_or(const std::string& key, const std::string& fallback) const;
};

struct Document {
  Table root;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> table_arrays;
};

// Throws std::runtime_error with a line number on malformed input.
Document parse(const std::string& text);
Document parse_file(const std::string& path);

}  // namespace gridsmpc::toml_lite
