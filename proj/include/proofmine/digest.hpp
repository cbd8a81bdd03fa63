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

#ifndef PROOFMINE_DIGEST_HPP
#define PROOFMINE_DIGEST_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proofmine/clustering.hpp"
#include "proofmine/features.hpp"

namespace proofmine {

struct DigestConfig {
    Algorithm algorithm = Algorithm::KMeans;
    int granularity = 3;
    std::size_t runs = 200;
    double frequency_threshold = 0.6;
    std::uint64_t master_seed = 0;
    // Worker threads for the runs; 0 picks std::thread::hardware_concurrency.
    // Has no effect on the result.
    unsigned threads = 0;

    // Throws InvalidArgument unless runs >= 1, 0 < threshold <= 1, 1 <= g <= 5.
    void validate() const;
};

enum class Homogeneity { Homogeneous, Heterogeneous };
std::string_view to_string(Homogeneity h);

struct ConsensusCluster {
    std::vector<std::string> members;  // sorted, at least 2
    double frequency = 0.0;
    std::map<std::string, double> member_proximity;
    Homogeneity homogeneity = Homogeneity::Homogeneous;

    bool operator==(const ConsensusCluster&) const = default;
};

// Pairwise co-membership counts over a set of runs.
class CoOccurrence {
public:
    explicit CoOccurrence(std::size_t objects = 0);

    // Adds one run's partition. Commutative: the final counts do not depend
    // on the order runs are added in.
    void add_run(const std::vector<int>& labels);
    void merge(const CoOccurrence& other);

    std::size_t objects() const { return n_; }
    std::size_t runs() const { return runs_; }
    std::uint32_t count(std::size_t a, std::size_t b) const { return counts_[a * n_ + b]; }
    double at(std::size_t a, std::size_t b) const;  // count / runs

    bool operator==(const CoOccurrence&) const = default;

private:
    std::size_t n_ = 0;
    std::size_t runs_ = 0;
    std::vector<std::uint32_t> counts_;
};

struct DigestInput {
    std::vector<std::string> names;
    std::vector<std::string> libraries;
    std::vector<Point> points;
};

DigestInput digest_input(const FeatureDatabase& db);  // uses scaled vectors

struct DigestResult {
    DigestConfig config;
    std::size_t objects = 0;
    std::size_t clusters_per_run = 0;  // choose_n(granularity, objects)
    std::vector<ConsensusCluster> clusters;
    std::map<std::string, std::string> libraries;  // member -> tag, for every member shown
};

// Runs 'runs' clusterings with seeds master_seed + i (i = 0..runs-1) and
// returns the frequent groups, most frequent first. Throws TooFewLemmas for
// fewer than two objects.
DigestResult run_digest(const DigestInput& input, const DigestConfig& cfg);

// The same, also handing back the co-occurrence matrix.
DigestResult run_digest(const DigestInput& input, const DigestConfig& cfg, CoOccurrence& co);

// Groups that reach the threshold: components of the graph whose edges join
// pairs with co-occurrence >= tau. A component whose mean pairwise
// co-occurrence is below tau is split by raising the edge threshold inside it
// until every piece reaches tau; singletons are dropped. Returned as index
// sets, each sorted, in no particular order.
std::vector<std::vector<std::size_t>> consensus_groups(const CoOccurrence& co, double tau);

double mean_pair_frequency(const CoOccurrence& co, const std::vector<std::size_t>& members);

// Highest frequency x mean member proximity among clusters holding 'lemma';
// ties: larger frequency, then lexicographically smaller first member.
std::optional<ConsensusCluster> select_reliable(const std::vector<ConsensusCluster>& clusters,
                                                std::string_view lemma);

// Throws UnknownLemma when a member has no tag.
Homogeneity classify_homogeneity(const ConsensusCluster& cluster,
                                 const std::map<std::string, std::string, std::less<>>& library_tags);

// "proofmine digest v1"
std::string digest_to_json(const DigestResult& result, int indent = -1);
// Throws VersionMismatch / CorruptFile.
DigestResult digest_from_json(std::string_view text);

std::string render_report(const DigestResult& result);

}  // namespace proofmine

#endif
