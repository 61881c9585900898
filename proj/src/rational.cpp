#include "bundle/rational.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace bundle {

std::string Rat::to_decimal(int significant) const {
  if (num_ == 0) return "0";
  long double v = (long double)num_ / (long double)den_;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*Lg", significant, v);
  return buf;
}

Rat Rat::parse(const std::string& text) {
  auto slash = text.find('/');
  errno = 0;
  char* end = nullptr;
  if (slash == std::string::npos) {
    long long n = std::strtoll(text.c_str(), &end, 10);
    if (errno != 0 || end == text.c_str() || *end != '\0')
      throw std::invalid_argument("Rat::parse: bad rational '" + text + "'");
    return Rat(n);
  }
  std::string ns = text.substr(0, slash), ds = text.substr(slash + 1);
  long long n = std::strtoll(ns.c_str(), &end, 10);
  if (errno != 0 || end == ns.c_str() || *end != '\0')
    throw std::invalid_argument("Rat::parse: bad numerator '" + text + "'");
  long long d = std::strtoll(ds.c_str(), &end, 10);
  if (errno != 0 || end == ds.c_str() || *end != '\0')
    throw std::invalid_argument("Rat::parse: bad denominator '" + text + "'");
  return Rat(n, d);
}

}  // namespace bundle
