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

#ifndef PROOFMINE_CLUSTERING_HPP
#define PROOFMINE_CLUSTERING_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace proofmine {

using Point = std::vector<double>;

struct ClusterAssignment {
    std::vector<int> labels;  // one per point, each < centers.size()
    std::vector<Point> centers;
    std::vector<double> proximity;  // in [0,1]
    // K-means: within-cluster sum of squares. EM: log-likelihood.
    // FarthestFirst: covering radius.
    double objective = 0.0;
    // Objective after every iteration, first entry = initialization.
    std::vector<double> trace;
    // Point indices the algorithm seeded from (K-means initial centers,
    // FarthestFirst centers in pick order). Empty for EM.
    std::vector<std::size_t> seed_points;
};

enum class Algorithm { KMeans, EM, FarthestFirst };

std::string_view to_string(Algorithm a);  // "kmeans", "em", "farthest-first"
std::optional<Algorithm> algorithm_from_string(std::string_view s);

struct GranularityConfig {
    int g = 3;           // 1..5
    std::size_t m = 1;   // objects to cluster
};

// max(1, floor(m / (10 - g))). Throws InvalidArgument outside 1<=g<=5, m>=1.
std::size_t choose_n(const GranularityConfig& cfg);

// Seeded generator. Only the engine's raw output is used, so sequences do not
// depend on the standard library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::size_t uniform_index(std::size_t n);  // uniform on [0, n)
    double uniform01();                         // uniform on [0, 1)
    // 'count' distinct indices of [0, n), in draw order.
    std::vector<std::size_t> sample_distinct(std::size_t n, std::size_t count);

private:
    std::mt19937_64 engine_;
};

double squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

// Nearest center per point; ties go to the lowest center index.
std::vector<int> assign_nearest(const std::vector<Point>& points, const std::vector<Point>& centers);

// 1 - d/D with D the largest point-to-own-center distance (all 1 when D = 0).
// Distances below kProximityTolerance count as 0.
inline constexpr double kProximityTolerance = 1e-9;
std::vector<double> distance_proximity(const std::vector<Point>& points, const std::vector<Point>& centers,
                                       const std::vector<int>& labels);

double within_cluster_ss(const std::vector<Point>& points, const std::vector<Point>& centers,
                         const std::vector<int>& labels);

// All algorithms throw InvalidArgument for no points, n = 0 or ragged
// dimensions, and TooFewPoints for n > points.size().

inline constexpr int kKMeansMaxIterations = 100;
ClusterAssignment kmeans(const std::vector<Point>& points, std::size_t n, std::uint64_t seed);
// Lloyd's iteration from the given initial center points.
ClusterAssignment kmeans_from(const std::vector<Point>& points, const std::vector<std::size_t>& initial);

inline constexpr int kEmMaxIterations = 200;
inline constexpr double kEmTolerance = 1e-6;
inline constexpr double kEmVarianceFloor = 1e-6;

struct GaussianMixture {
    std::vector<double> weights;
    std::vector<Point> means;
    std::vector<Point> variances;  // diagonal
};

struct EmFit {
    GaussianMixture model;
    std::vector<std::vector<double>> responsibilities;  // points x components
    std::vector<double> log_likelihood;                 // per iteration
};

EmFit em_fit(const std::vector<Point>& points, std::size_t n, std::uint64_t seed);
ClusterAssignment em_gaussian(const std::vector<Point>& points, std::size_t n, std::uint64_t seed);
double mixture_log_likelihood(const std::vector<Point>& points, const GaussianMixture& model);

ClusterAssignment farthest_first(const std::vector<Point>& points, std::size_t n, std::uint64_t seed);
ClusterAssignment farthest_first_from(const std::vector<Point>& points, std::size_t n, std::size_t first);

ClusterAssignment run_clustering(Algorithm algorithm, const std::vector<Point>& points, std::size_t n,
                                 std::uint64_t seed);

}  // namespace proofmine

#endif
