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

// Helpers shared by the unit tests and the acceptance runner: fixture
// locations, golden comparison, random generators and brute-force oracles.

#ifndef PROOFMINE_TESTS_SUPPORT_HPP
#define PROOFMINE_TESTS_SUPPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "proofmine/clustering.hpp"
#include "proofmine/corpus.hpp"
#include "proofmine/digest.hpp"
#include "proofmine/script_parser.hpp"

namespace proofmine::testing {

std::string fixture_dir();                       // tests/fixtures
std::string fixture_path(const std::string& rel);
std::string temp_path(const std::string& name);  // unique per process

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Parser goldens

// Stems of every listing with a .golden.json next to it, sorted.
std::vector<std::string> listing_stems();

struct GoldenReport {
    std::size_t lemmas = 0;
    std::size_t steps = 0;
    std::size_t arguments = 0;
    std::vector<std::string> mismatches;
};

// Parses listings/<stem>.v and compares it with listings/<stem>.golden.json.
GoldenReport check_listing(const std::string& stem);

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Generators (hand-rolled, seeded)

std::vector<Point> random_points(Rng& rng, std::size_t count, std::size_t dims, double scale = 10.0);
// Small integer grid, so ties and duplicates show up.
std::vector<Point> random_grid_points(Rng& rng, std::size_t count, std::size_t dims, int side = 4);

DigestInput random_digest_input(Rng& rng, std::size_t lemmas, std::size_t dims, std::size_t libraries = 2);

// A random corpus built through the real pipeline from generated proof text.
Corpus random_corpus(Rng& rng, std::size_t lemmas, std::size_t libraries);
// Generated .v source with 'lemmas' lemmas named <prefix>_<i>.
std::string random_library_source(Rng& rng, const std::string& prefix, std::size_t lemmas);

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Oracles

// Minimum within-cluster sum of squares over every labeling with exactly
// 'k' non-empty clusters (exhaustive; keep points <= 10).
double brute_force_min_sse(const std::vector<Point>& points, std::size_t k, std::vector<int>* best_labels = nullptr);

// Sum of squares of a labeling around its own cluster means.
double partition_sse(const std::vector<Point>& points, const std::vector<int>& labels);

// Replays the max-min greedy rule from 'first' with plain loops.
std::vector<std::size_t> greedy_center_oracle(const std::vector<Point>& points, std::size_t n, std::size_t first);

// Optimal n-center covering radius with centers drawn from the points.
double brute_force_k_center(const std::vector<Point>& points, std::size_t n);

// True when the co-occurrence matrix is symmetric with unit diagonal and
// entries in [0,1].
bool cooccurrence_well_formed(const CoOccurrence& co);

// Every cluster of 'fine' is inside some cluster of 'coarse'.
bool nested_in(const std::vector<ConsensusCluster>& fine, const std::vector<ConsensusCluster>& coarse);

}  // namespace proofmine::testing

#endif
