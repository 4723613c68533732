#include <doctest.h>

#include "medialcorr/checks.hpp"

using namespace medialcorr;

// The validation suites shipped with the CLI must themselves be green.

TEST_CASE("example suite passes") {
  for (const auto& r : run_example_checks()) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("property suite passes") {
  for (const auto& r : run_property_checks(20240801ULL)) {
    INFO(r.name, ": ", r.detail);
    CHECK(r.pass);
  }
}
