#include "nni/weight.hpp"

#include <limits>
#include <stdexcept>

namespace nni {

Weight Weight::parse(std::string_view text) {
  auto fail = [&](const char* why) {
    throw std::invalid_argument("bad weight '" + std::string(text) + "': " + why);
  };
  if (text.empty()) fail("empty");
  std::size_t i = 0;
  if (text[0] == '+') i = 1;
  std::int64_t whole = 0;
  std::size_t int_digits = 0;
  constexpr std::int64_t kMaxWhole = std::numeric_limits<std::int64_t>::max() / kScale - 1;
  for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i, ++int_digits) {
    whole = whole * 10 + (text[i] - '0');
    if (whole > kMaxWhole) fail("too large");
  }
  std::int64_t frac = 0;
  int frac_digits = 0;
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size() && text[i] >= '0' && text[i] <= '9'; ++i) {
      if (frac_digits == kDigits) {
        if (text[i] != '0') fail("more than 9 fractional digits");
        continue;
      }
      frac = frac * 10 + (text[i] - '0');
      ++frac_digits;
    }
    if (frac_digits == 0 && int_digits == 0) fail("no digits");
  } else if (int_digits == 0) {
    fail("no digits");
  }
  if (i != text.size()) fail("trailing characters");
  for (int d = frac_digits; d < kDigits; ++d) frac *= 10;
  return from_units(whole * kScale + frac);
}

std::string Weight::to_string() const {
  std::int64_t u = units_;
  std::string out;
  if (u < 0) {
    out.push_back('-');
    u = -u;
  }
  out += std::to_string(u / kScale);
  std::int64_t frac = u % kScale;
  if (frac != 0) {
    std::string f = std::to_string(frac);
    f.insert(0, kDigits - f.size(), '0');
    while (f.back() == '0') f.pop_back();
    out += '.';
    out += f;
  }
  return out;
}

}  // namespace nni
