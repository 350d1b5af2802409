#ifndef PCITY_IO_HPP
#define PCITY_IO_HPP

#include <concepts>
#include <sstream>
#include <string>
#include <string_view>

namespace pcity::io {

// Shortest round-trip decimal form; CSV output is byte-stable across runs.
std::string num(double x);

// Accumulates CSV text in memory so that callers can both write it and
// compare it byte for byte.
class Csv {
 public:
  explicit Csv(std::string_view header) { out_ << header << '\n'; }

  template <typename... T>
  void row(const T&... v) {
    bool first = true;
    ((out_ << (first ? "" : ",") << field(v), first = false), ...);
    out_ << '\n';
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string field(double x) { return num(x); }
  static std::string field(std::string_view s) { return std::string(s); }
  static std::string field(const char* s) { return s; }
  template <std::integral I>
  static std::string field(I i) {
    return std::to_string(i);
  }

  std::ostringstream out_;
};

}  // namespace pcity::io

#endif
