#include "gwdk/io/toml_subset.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <vector>

#include "gwdk/error.hpp"

namespace gwdk::io {
namespace {

using nlohmann::json;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  json run() {
    json root = json::object();
    json* table = &root;
    while (skip_blank_lines()) {
      if (peek() == '[') {
        table = &open_table(root);
      } else {
        parse_key_value(*table);
      }
      finish_line();
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("config", "TOML line " + std::to_string(line_) + ": " + what);
  }

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[pos_]; }

  void skip_space() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    }
  }

  // Consumes whitespace, comments and newlines; false at end of input.
  bool skip_blank_lines() {
    for (;;) {
      skip_space();
      skip_comment();
      if (eof()) return false;
      if (peek() == '\r') { ++pos_; continue; }
      if (peek() != '\n') return true;
      ++pos_;
      ++line_;
    }
  }

  void finish_line() {
    skip_space();
    skip_comment();
    if (peek() == '\r') ++pos_;
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    ++pos_;
    ++line_;
  }

  std::vector<std::string> parse_key_path() {
    std::vector<std::string> path;
    for (;;) {
      skip_space();
      if (peek() == '"' || peek() == '\'') {
        path.push_back(parse_string());
      } else {
        const std::size_t start = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                          peek() == '-')) {
          ++pos_;
        }
        if (pos_ == start) fail("expected a key");
        path.emplace_back(s_.substr(start, pos_ - start));
      }
      skip_space();
      if (peek() != '.') return path;
      ++pos_;
    }
  }

  json& descend(json& node, const std::string& key) {
    json& child = node[key];
    if (child.is_null()) child = json::object();
    if (!child.is_object()) fail("key '" + key + "' is not a table");
    return child;
  }

  json& open_table(json& root) {
    ++pos_;
    if (peek() == '[') fail("arrays of tables are not supported");
    auto path = parse_key_path();
    if (peek() != ']') fail("expected ']'");
    ++pos_;
    json* node = &root;
    for (const auto& key : path) node = &descend(*node, key);
    return *node;
  }

  void parse_key_value(json& table) {
    auto path = parse_key_path();
    if (peek() != '=') fail("expected '='");
    ++pos_;
    skip_space();
    json* node = &table;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) node = &descend(*node, path[i]);
    if (node->contains(path.back())) fail("duplicate key '" + path.back() + "'");
    (*node)[path.back()] = parse_value();
  }

  json parse_value() {
    const char c = peek();
    if (c == '"' || c == '\'') return parse_string();
    if (c == '[') return parse_array();
    if (c == '{') fail("inline tables are not supported");
    if (s_.substr(pos_, 4) == "true") { pos_ += 4; return true; }
    if (s_.substr(pos_, 5) == "false") { pos_ += 5; return false; }
    return parse_number();
  }

  std::string parse_string() {
    const char quote = peek();
    ++pos_;
    std::string out;
    while (!eof() && peek() != quote) {
      char c = peek();
      if (c == '\n') fail("unterminated string");
      ++pos_;
      if (c == '\\' && quote == '"') {
        const char e = peek();
        ++pos_;
        switch (e) {
          case 'n': c = '\n'; break;
          case 't': c = '\t'; break;
          case '"': c = '"'; break;
          case '\\': c = '\\'; break;
          default: fail("unsupported escape sequence");
        }
      }
      out.push_back(c);
    }
    if (eof()) fail("unterminated string");
    ++pos_;
    return out;
  }

  json parse_array() {
    ++pos_;
    json arr = json::array();
    for (;;) {
      skip_blank_lines();
      if (peek() == ']') { ++pos_; return arr; }
      arr.push_back(parse_value());
      skip_blank_lines();
      if (peek() == ',') { ++pos_; continue; }
      if (peek() == ']') { ++pos_; return arr; }
      fail("expected ',' or ']' in array");
    }
  }

  json parse_number() {
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' ||
                      peek() == '-' || peek() == '.' || peek() == '_')) {
      ++pos_;
    }
    std::string token;
    for (char c : s_.substr(start, pos_ - start)) {
      if (c != '_') token.push_back(c);
    }
    if (token.empty()) fail("expected a value");
    const bool is_float = token.find_first_of(".eE") != std::string::npos ||
                          token == "inf" || token == "nan";
    const char* first = token.data() + (token[0] == '+' ? 1 : 0);
    const char* last = token.data() + token.size();
    if (!is_float) {
      long long v = 0;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec == std::errc() && ptr == last) return v;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail("invalid value '" + token + "'");
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

nlohmann::json parse_toml(std::string_view text) { return Parser(text).run(); }

}  // namespace gwdk::io
