#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "kap/error.hpp"

namespace kap {

/**
 * Marked-point label from the totally ordered set {a < b < c < 1 < 2 < ...}.
 * Encoded as a single integer code: a=0, b=1, c=2, integer k -> k+2.
 */
class Label {
 public:
  Label() : code_(0) {}
  static Label a() { return Label(0); }
  static Label b() { return Label(1); }
  static Label c() { return Label(2); }
  static Label integer(int k) {
    KAP_CHECK(k >= 1, "integer labels start at 1");
    return Label(k + 2);
  }
  static Label from_code(int code) {
    KAP_CHECK(code >= 0, "bad label code");
    return Label(code);
  }

  int code() const { return code_; }
  bool is_abc() const { return code_ <= 2; }
  bool is_integer() const { return code_ >= 3; }
  int integer_value() const {
    KAP_CHECK(is_integer(), "not an integer label");
    return code_ - 2;
  }

  std::string str() const {
    switch (code_) {
      case 0: return "a";
      case 1: return "b";
      case 2: return "c";
      default: return std::to_string(code_ - 2);
    }
  }

  static std::optional<Label> parse(std::string_view s) {
    if (s == "a") return a();
    if (s == "b") return b();
    if (s == "c") return c();
    if (s.empty()) return std::nullopt;
    int v = 0;
    for (char ch : s) {
      if (ch < '0' || ch > '9') return std::nullopt;
      v = v * 10 + (ch - '0');
      if (v > 1000000) return std::nullopt;
    }
    if (v < 1) return std::nullopt;
    return integer(v);
  }

  auto operator<=>(const Label&) const = default;

 private:
  explicit Label(int code) : code_(code) {}
  int code_;
};

}  // namespace kap
