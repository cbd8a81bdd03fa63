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

#include "proofmine/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "proofmine/error.hpp"

namespace proofmine {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate(const std::vector<Point>& points, std::size_t n) {
    if (points.empty()) throw Error(ErrorKind::InvalidArgument, "no points to cluster");
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "cluster count must be positive");
    if (n > points.size())
        throw Error(ErrorKind::TooFewPoints, "asked for " + std::to_string(n) + " clusters of " +
                                                 std::to_string(points.size()) + " points");
    const std::size_t dims = points.front().size();
    for (const Point& p : points)
        if (p.size() != dims) throw Error(ErrorKind::InvalidArgument, "points differ in dimension");
}

std::vector<Point> cluster_means(const std::vector<Point>& points, const std::vector<int>& labels,
                                 const std::vector<Point>& previous) {
    const std::size_t k = previous.size(), dims = points.front().size();
    std::vector<Point> sums(k, Point(dims, 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto c = static_cast<std::size_t>(labels[i]);
        ++counts[c];
        for (std::size_t d = 0; d < dims; ++d) sums[c][d] += points[i][d];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            sums[c] = previous[c];
            continue;
        }
        for (double& x : sums[c]) x /= static_cast<double>(counts[c]);
    }
    return sums;
}

// Moves the point farthest from its own center into each empty cluster, as
// long as that point is not alone and not already sitting on its center.
void repair_empty(const std::vector<Point>& points, const std::vector<Point>& centers, std::vector<int>& labels) {
    const std::size_t k = centers.size();
    std::vector<std::size_t> counts(k, 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] != 0) continue;
        std::size_t best = points.size();
        double best_d = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            auto own = static_cast<std::size_t>(labels[i]);
            if (counts[own] < 2) continue;
            double d = squared_distance(points[i], centers[own]);
            if (d > best_d) {
                best_d = d;
                best = i;
            }
        }
        if (best == points.size()) continue;
        --counts[static_cast<std::size_t>(labels[best])];
        labels[best] = static_cast<int>(c);
        ++counts[c];
    }
}

double log_sum_exp(const std::vector<double>& v) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : v) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// log(weight_c) + log N(x | mean_c, diag(var_c)) for every component.
std::vector<double> component_log_densities(const Point& x, const GaussianMixture& model) {
    std::vector<double> out(model.means.size());
    for (std::size_t c = 0; c < model.means.size(); ++c) {
        if (model.weights[c] <= 0.0) {
            out[c] = -std::numeric_limits<double>::infinity();
            continue;
        }
        double lp = std::log(model.weights[c]);
        for (std::size_t d = 0; d < x.size(); ++d) {
            double var = model.variances[c][d];
            double diff = x[d] - model.means[c][d];
            lp -= 0.5 * (std::log(2.0 * kPi * var) + diff * diff / var);
        }
        out[c] = lp;
    }
    return out;
}

double e_step(const std::vector<Point>& points, const GaussianMixture& model,
              std::vector<std::vector<double>>& resp) {
    resp.assign(points.size(), {});
    double ll = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<double> lp = component_log_densities(points[i], model);
        double lse = log_sum_exp(lp);
        ll += lse;
        std::vector<double> r(lp.size());
        double sum = 0.0;
        for (std::size_t c = 0; c < lp.size(); ++c) sum += r[c] = std::exp(lp[c] - lse);
        for (double& x : r) x /= sum;
        resp[i] = std::move(r);
    }
    return ll;
}

void m_step(const std::vector<Point>& points, const std::vector<std::vector<double>>& resp, GaussianMixture& model) {
    const std::size_t k = model.means.size(), dims = points.front().size();
    const auto total = static_cast<double>(points.size());
    for (std::size_t c = 0; c < k; ++c) {
        double nk = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) nk += resp[i][c];
        model.weights[c] = nk / total;
        if (nk <= 0.0) continue;  // dead component keeps its shape, weight 0
        Point mean(dims, 0.0);
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t d = 0; d < dims; ++d) mean[d] += resp[i][c] * points[i][d];
        for (double& x : mean) x /= nk;
        Point var(dims, 0.0);
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t d = 0; d < dims; ++d) {
                double diff = points[i][d] - mean[d];
                var[d] += resp[i][c] * diff * diff;
            }
        for (double& v : var) v = std::max(v / nk, kEmVarianceFloor);
        model.means[c] = std::move(mean);
        model.variances[c] = std::move(var);
    }
}

}  // namespace

std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::KMeans:        return "kmeans";
    case Algorithm::EM:            return "em";
    case Algorithm::FarthestFirst: return "farthest-first";
    }
    return "kmeans";
}

std::optional<Algorithm> algorithm_from_string(std::string_view s) {
    for (Algorithm a : {Algorithm::KMeans, Algorithm::EM, Algorithm::FarthestFirst})
        if (to_string(a) == s) return a;
    return std::nullopt;
}

std::size_t choose_n(const GranularityConfig& cfg) {
    if (cfg.g < 1 || cfg.g > 5) throw Error(ErrorKind::InvalidArgument, "granularity must be between 1 and 5");
    if (cfg.m < 1) throw Error(ErrorKind::InvalidArgument, "need at least one object to cluster");
    return std::max<std::size_t>(1, cfg.m / static_cast<std::size_t>(10 - cfg.g));
}

std::size_t Rng::uniform_index(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t range = n;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return static_cast<std::size_t>(x % range);
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<std::size_t> Rng::sample_distinct(std::size_t n, std::size_t count) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    count = std::min(count, n);
    for (std::size_t i = 0; i < count; ++i) std::swap(pool[i], pool[i + uniform_index(n - i)]);
    pool.resize(count);
    return pool;
}

double squared_distance(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return s;
}

double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

std::vector<int> assign_nearest(const std::vector<Point>& points, const std::vector<Point>& centers) {
    std::vector<int> labels(points.size(), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centers.size(); ++c) {
            double d = squared_distance(points[i], centers[c]);
            if (d < best) {
                best = d;
                labels[i] = static_cast<int>(c);
            }
        }
    }
    return labels;
}

std::vector<double> distance_proximity(const std::vector<Point>& points, const std::vector<Point>& centers,
                                       const std::vector<int>& labels) {
    std::vector<double> d(points.size());
    double far = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        d[i] = distance(points[i], centers[static_cast<std::size_t>(labels[i])]);
        // a mean of identical points is only equal to them up to rounding
        if (d[i] < kProximityTolerance) d[i] = 0.0;
        far = std::max(far, d[i]);
    }
    std::vector<double> prox(points.size(), 1.0);
    if (far > 0.0)
        for (std::size_t i = 0; i < points.size(); ++i) prox[i] = std::clamp(1.0 - d[i] / far, 0.0, 1.0);
    return prox;
}

double within_cluster_ss(const std::vector<Point>& points, const std::vector<Point>& centers,
                         const std::vector<int>& labels) {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        s += squared_distance(points[i], centers[static_cast<std::size_t>(labels[i])]);
    return s;
}

ClusterAssignment kmeans_from(const std::vector<Point>& points, const std::vector<std::size_t>& initial) {
    validate(points, initial.size());
    ClusterAssignment out;
    out.seed_points = initial;
    std::vector<Point> centers;
    for (std::size_t i : initial) {
        if (i >= points.size()) throw Error(ErrorKind::InvalidArgument, "initial center index out of range");
        centers.push_back(points[i]);
    }
    std::vector<int> labels = assign_nearest(points, centers);
    out.trace.push_back(within_cluster_ss(points, centers, labels));
    for (int it = 0; it < kKMeansMaxIterations; ++it) {
        repair_empty(points, centers, labels);
        centers = cluster_means(points, labels, centers);
        std::vector<int> next = assign_nearest(points, centers);
        out.trace.push_back(within_cluster_ss(points, centers, next));
        bool stable = next == labels;
        labels = std::move(next);
        if (stable) break;
    }
    out.objective = within_cluster_ss(points, centers, labels);
    out.proximity = distance_proximity(points, centers, labels);
    out.labels = std::move(labels);
    out.centers = std::move(centers);
    return out;
}

ClusterAssignment kmeans(const std::vector<Point>& points, std::size_t n, std::uint64_t seed) {
    validate(points, n);
    Rng rng(seed);
    return kmeans_from(points, rng.sample_distinct(points.size(), n));
}

double mixture_log_likelihood(const std::vector<Point>& points, const GaussianMixture& model) {
    double ll = 0.0;
    for (const Point& p : points) ll += log_sum_exp(component_log_densities(p, model));
    return ll;
}

EmFit em_fit(const std::vector<Point>& points, std::size_t n, std::uint64_t seed) {
    ClusterAssignment init = kmeans(points, n, seed);
    const std::size_t dims = points.front().size();

    EmFit fit;
    GaussianMixture& model = fit.model;
    model.means = init.centers;
    model.weights.assign(n, 0.0);
    model.variances.assign(n, Point(dims, 0.0));
    std::vector<double> counts(n, 0.0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto c = static_cast<std::size_t>(init.labels[i]);
        counts[c] += 1.0;
        for (std::size_t d = 0; d < dims; ++d) {
            double diff = points[i][d] - model.means[c][d];
            model.variances[c][d] += diff * diff;
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        model.weights[c] = counts[c] / static_cast<double>(points.size());
        for (double& v : model.variances[c]) v = std::max(counts[c] > 0 ? v / counts[c] : 0.0, kEmVarianceFloor);
    }

    double previous = -std::numeric_limits<double>::infinity();
    for (int it = 0; it < kEmMaxIterations; ++it) {
        double ll = e_step(points, model, fit.responsibilities);
        fit.log_likelihood.push_back(ll);
        if (it > 0 && ll - previous < kEmTolerance) break;
        previous = ll;
        if (it + 1 == kEmMaxIterations) break;
        m_step(points, fit.responsibilities, model);
    }
    return fit;
}

ClusterAssignment em_gaussian(const std::vector<Point>& points, std::size_t n, std::uint64_t seed) {
    validate(points, n);
    EmFit fit = em_fit(points, n, seed);
    ClusterAssignment out;
    out.labels.resize(points.size());
    out.proximity.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& r = fit.responsibilities[i];
        auto best = static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
        out.labels[i] = static_cast<int>(best);
        out.proximity[i] = std::clamp(r[best], 0.0, 1.0);
    }
    out.centers = fit.model.means;
    out.objective = fit.log_likelihood.back();
    out.trace = fit.log_likelihood;
    return out;
}

ClusterAssignment farthest_first_from(const std::vector<Point>& points, std::size_t n, std::size_t first) {
    validate(points, n);
    if (first >= points.size()) throw Error(ErrorKind::InvalidArgument, "first center index out of range");
    ClusterAssignment out;
    std::vector<bool> chosen(points.size(), false);
    std::vector<double> nearest(points.size(), std::numeric_limits<double>::infinity());
    std::size_t next = first;
    for (;;) {
        out.seed_points.push_back(next);
        chosen[next] = true;
        for (std::size_t i = 0; i < points.size(); ++i)
            nearest[i] = std::min(nearest[i], squared_distance(points[i], points[next]));
        if (out.seed_points.size() == n) break;
        double best = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!chosen[i] && nearest[i] > best) {
                best = nearest[i];
                next = i;
            }
        }
    }
    for (std::size_t i : out.seed_points) out.centers.push_back(points[i]);
    out.labels = assign_nearest(points, out.centers);
    out.proximity = distance_proximity(points, out.centers, out.labels);
    double radius = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        radius = std::max(radius, distance(points[i], out.centers[static_cast<std::size_t>(out.labels[i])]));
    out.objective = radius;
    out.trace.push_back(radius);
    return out;
}

ClusterAssignment farthest_first(const std::vector<Point>& points, std::size_t n, std::uint64_t seed) {
    validate(points, n);
    Rng rng(seed);
    return farthest_first_from(points, n, rng.uniform_index(points.size()));
}

ClusterAssignment run_clustering(Algorithm algorithm, const std::vector<Point>& points, std::size_t n,
                                 std::uint64_t seed) {
    switch (algorithm) {
    case Algorithm::KMeans:        return kmeans(points, n, seed);
    case Algorithm::EM:            return em_gaussian(points, n, seed);
    case Algorithm::FarthestFirst: return farthest_first(points, n, seed);
    }
    return kmeans(points, n, seed);
}

}  // namespace proofmine
