#include <doctest.h>

#include <stdexcept>

#include "nni/weight.hpp"

using nni::Weight;

TEST_CASE("weight parse and print") {
  CHECK(Weight::parse("12").units() == 12 * Weight::kScale);
  CHECK(Weight::parse("0.125").units() == 125'000'000);
  CHECK(Weight::parse("2.500").to_string() == "2.5");
  CHECK(Weight::parse("3").to_string() == "3");
  CHECK(Weight::parse("0.000000001").to_string() == "0.000000001");
}

TEST_CASE("weight rejects junk") {
  for (const char* bad : {"", "-1", "abc", "1.2.3", "0.0000000001", "1x", "1e2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Weight::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("weight arithmetic is exact") {
  Weight s;
  for (int i = 0; i < 10; ++i) s += Weight::parse("0.1");
  CHECK(s == Weight::from_int(1));
  CHECK(Weight::parse("2.5") - Weight::parse("0.5") == Weight::from_int(2));
  CHECK(Weight::parse("1.5") < Weight::parse("1.50001"));
  CHECK_FALSE(Weight().positive());
}
