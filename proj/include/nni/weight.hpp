#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace nni {

// Exact non-negative decimal stored as an integer count of 1e-9 units.
class Weight {
 public:
  static constexpr std::int64_t kScale = 1'000'000'000;
  static constexpr int kDigits = 9;

  constexpr Weight() = default;
  static constexpr Weight from_units(std::int64_t units) { Weight w; w.units_ = units; return w; }
  static constexpr Weight from_int(std::int64_t v) { return from_units(v * kScale); }

  // Accepts "12", "12.5", "0.125". Throws std::invalid_argument on anything else.
  static Weight parse(std::string_view text);

  constexpr std::int64_t units() const { return units_; }
  double to_double() const { return static_cast<double>(units_) / kScale; }
  // Shortest decimal form: trailing fractional zeros dropped, no exponent.
  std::string to_string() const;

  constexpr bool positive() const { return units_ > 0; }

  constexpr Weight& operator+=(Weight o) { units_ += o.units_; return *this; }
  constexpr Weight& operator-=(Weight o) { units_ -= o.units_; return *this; }
  friend constexpr Weight operator+(Weight a, Weight b) { return a += b; }
  friend constexpr Weight operator-(Weight a, Weight b) { return a -= b; }
  friend constexpr auto operator<=>(Weight, Weight) = default;

 private:
  std::int64_t units_ = 0;
};

}  // namespace nni

template <>
struct std::hash<nni::Weight> {
  std::size_t operator()(nni::Weight w) const noexcept { return std::hash<std::int64_t>{}(w.units()); }
};
