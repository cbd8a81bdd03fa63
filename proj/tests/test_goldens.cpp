/* Copyright 2026 The Proofmine Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace proofmine::testing;

TEST_CASE("every listing matches its hand-labeled golden") {
    auto stems = listing_stems();
    REQUIRE(stems.size() >= 10);
    std::size_t steps = 0;
    for (const auto& stem : stems) {
        GoldenReport r = check_listing(stem);
        CAPTURE(stem);
        for (const auto& m : r.mismatches) MESSAGE(m);
        CHECK(r.mismatches.empty());
        CHECK(r.lemmas > 0);
        steps += r.steps;
    }
    CHECK(steps > 50);
}
