#include "pcity/io.hpp"

#include <charconv>

namespace pcity::io {

std::string num(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace pcity::io
