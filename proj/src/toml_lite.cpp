#include "gridsmpc/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gridsmpc::toml_lite {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("toml parse error at line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a trailing comment that is not inside a quoted string.
std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '"') quoted = !quoted;
    if (s[k] == '#' && !quoted) return s.substr(0, k);
  }
  return s;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

Value parse_value(const std::string& raw, int line) {
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    std::string out;
    for (size_t k = 1; k + 1 < raw.size(); ++k) {
      char c = raw[k];
      if (c == '\\' && k + 2 < raw.size()) {
        char n = raw[k + 1];
        if (n == '"' || n == '\\') {
          out.push_back(n);
          ++k;
          continue;
        }
      }
      if (c == '"') fail(line, "unexpected quote inside string");
      out.push_back(c);
    }
    return out;
  }
  if (raw == "true") return true;
  if (raw == "false") return false;
  bool looks_float = raw.find_first_of(".eE") != std::string::npos;
  if (!looks_float) {
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), iv);
    if (ec == std::errc() && p == raw.data() + raw.size()) return iv;
  }
  try {
    size_t used = 0;
    double dv = std::stod(raw, &used);
    if (used == raw.size()) return dv;
  } catch (const std::exception&) {
  }
  fail(line, "cannot parse value '" + raw + "'");
}

const Value& fetch(const Table& t, const std::string& key) {
  auto it = t.values.find(key);
  if (it == t.values.end()) {
    throw std::runtime_error("missing key '" + key + "'");
  }
  return it->second;
}

}  // namespace

double Table::get_double(const std::string& key) const {
  const Value& v = fetch(*this, key);
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<std::int64_t>(v)) {
    return static_cast<double>(std::get<std::int64_t>(v));
  }
  throw std::runtime_error("key '" + key + "' is not a number");
}

std::int64_t Table::get_int(const std::string& key) const {
  const Value& v = fetch(*this, key);
  if (std::holds_alternative<std::int64_t>(v)) return std::get<std::int64_t>(v);
  throw std::runtime_error("key '" + key + "' is not an integer");
}

bool Table::get_bool(const std::string& key) const {
  const Value& v = fetch(*this, key);
  if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
  throw std::runtime_error("key '" + key + "' is not a boolean");
}

std::string Table::get_string(const std::string& key) const {
  const Value& v = fetch(*this, key);
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  throw std::runtime_error("key '" + key + "' is not a string");
}

double Table::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t Table::get_int_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Table::get_bool_or(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

std::string Table::get_string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}

Document parse(const std::string& text) {
  Document doc;
  Table* current = &doc.root;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      bool array = line.size() >= 2 && line[1] == '[';
      std::string suffix = array ? "]]" : "]";
      if (line.size() < 2 + suffix.size() ||
          line.substr(line.size() - suffix.size()) != suffix) {
        fail(line_no, "malformed table header");
      }
      std::string name = trim(line.substr(array ? 2 : 1,
                                          line.size() - 2 * suffix.size()));
      if (!valid_key(name)) fail(line_no, "invalid table name '" + name + "'");
      if (array) {
        doc.table_arrays[name].emplace_back();
        current = &doc.table_arrays[name].back();
      } else {
        if (doc.tables.count(name)) fail(line_no, "duplicate table '" + name + "'");
        current = &doc.tables[name];
      }
      continue;
    }
    size_t eq = std::string::npos;
    bool quoted = false;
    for (size_t k = 0; k < line.size(); ++k) {
      if (line[k] == '"') quoted = !quoted;
      if (line[k] == '=' && !quoted) {
        eq = k;
        break;
      }
    }
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail(line_no, "invalid key '" + key + "'");
    if (value.empty()) fail(line_no, "empty value for key '" + key + "'");
    if (current->values.count(key)) fail(line_no, "duplicate key '" + key + "'");
    current->values[key] = parse_value(value, line_no);
  }
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

}  // namespace gridsmpc::toml_lite
