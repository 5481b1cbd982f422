#include "doctest.h"
#include "properties.hpp"

using namespace crdiff::testing;

TEST_CASE("monotonicity under channel addition") { CHECK(check_monotonicity(1, 100) == ""); }
TEST_CASE("time-shift invariance") { CHECK(check_time_shift(2, 100) == ""); }
TEST_CASE("positive integer time scaling") { CHECK(check_time_scaling(3, 100) == ""); }
TEST_CASE("ECDF monotone and right-continuous") { CHECK(check_ecdf_monotone(4, 100) == ""); }
TEST_CASE("bounds shares sum to one") { CHECK(check_bounds_shares(5, 100) == ""); }
TEST_CASE("metrics are invariant under participant relabeling") { CHECK(check_permutation_invariance(6, 100) == ""); }
