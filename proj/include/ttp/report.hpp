#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "ttp/error.hpp"

namespace ttp {

/// Ordered key/value block. Keys are [A-Za-z0-9_.]+; values are single lines
/// with backslash escapes for '\\' and newline.
class MachineBlock {
 public:
  static constexpr const char* fence = "```ttp";

  void set(const std::string& key, const std::string& value) {
    check_key(key);
    for (auto& kv : kv_)
      if (kv.first == key) {
        kv.second = value;
        return;
      }
    kv_.emplace_back(key, value);
  }
  void set(const std::string& key, const char* value) { set(key, std::string(value)); }
  void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
  template <class T, class = std::enable_if_t<std::is_arithmetic_v<T>>>
  void set(const std::string& key, T value) {
    set(key, std::to_string(value));
  }

  const std::string* get(const std::string& key) const {
    for (const auto& kv : kv_)
      if (kv.first == key) return &kv.second;
    return nullptr;
  }
  const std::vector<std::pair<std::string, std::string>>& entries() const { return kv_; }
  bool operator==(const MachineBlock& o) const { return kv_ == o.kv_; }

  std::string emit() const {
    std::string s = std::string(fence) + "\n";
    for (const auto& [k, v] : kv_) s += k + " = " + escape(v) + "\n";
    return s + "```\n";
  }

  /// Reads the first fenced block found in `text`.
  static MachineBlock parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    bool inside = false;
    MachineBlock b;
    while (std::getline(in, line)) {
      ++ln;
      if (!inside) {
        if (line == fence) inside = true;
        continue;
      }
      if (line == "```") return b;
      auto eq = line.find(" = ");
      if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "at line " + std::to_string(ln) + ": 'key = value' expected");
      std::string key = line.substr(0, eq);
      if (b.get(key)) throw Error(ErrorCode::ParseError, "at line " + std::to_string(ln) + ": duplicate key " + key);
      try {
        b.set(key, unescape(line.substr(eq + 3)));
      } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, "at line " + std::to_string(ln) + ": " + e.what());
      }
    }
    throw Error(ErrorCode::ParseError, inside ? "at end of input: unterminated block" : "at end of input: no machine block");
  }

  static std::string escape(const std::string& v) {
    std::string o;
    for (char c : v) {
      if (c == '\\') o += "\\\\";
      else if (c == '\n') o += "\\n";
      else o += c;
    }
    return o;
  }
  static std::string unescape(const std::string& v) {
    std::string o;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != '\\') {
        o += v[i];
        continue;
      }
      if (++i == v.size()) throw Error(ErrorCode::ParseError, "dangling backslash");
      if (v[i] == 'n') o += '\n';
      else if (v[i] == '\\') o += '\\';
      else throw Error(ErrorCode::ParseError, std::string("unknown escape \\") + v[i]);
    }
    return o;
  }

 private:
  static void check_key(const std::string& k) {
    bool ok = !k.empty();
    for (char c : k) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.');
    if (!ok) throw Error(ErrorCode::InvalidArgument, "bad key '" + k + "'");
  }

  std::vector<std::pair<std::string, std::string>> kv_;
};

struct Report {
  std::vector<std::string> human;
  MachineBlock block;

  void line(std::string s) { human.push_back(std::move(s)); }
  std::string render() const {
    std::string s;
    for (const auto& l : human) s += l + "\n";
    return s + "\n" + block.emit();
  }
};

}  // namespace ttp
