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

#include "support.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "proofmine/error.hpp"

#ifndef PROOFMINE_FIXTURE_DIR
#error "PROOFMINE_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace proofmine::testing {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fixture_dir() { return PROOFMINE_FIXTURE_DIR; }

std::string fixture_path(const std::string& rel) { return fixture_dir() + "/" + rel; }

std::string temp_path(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("proofmine_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return (dir / name).string();
}

std::vector<std::string> listing_stems() {
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(fixture_path("listings"))) {
        std::string file = entry.path().filename().string();
        const std::string suffix = ".golden.json";
        if (file.size() > suffix.size() && file.compare(file.size() - suffix.size(), suffix.size(), suffix) == 0)
            stems.push_back(file.substr(0, file.size() - suffix.size()));
    }
    std::sort(stems.begin(), stems.end());
    return stems;
}

namespace {

std::string kind_letter(ArgumentKind k) {
    switch (k) {
    case ArgumentKind::Hypothesis:          return "H";
    case ArgumentKind::ExternalLemma:       return "E";
    case ArgumentKind::InductiveHypothesis: return "IH";
    case ArgumentKind::NumericConstant:     return "N";
    case ArgumentKind::TermExpr:            return "T";
    case ArgumentKind::Wildcard:            return "W";
    case ArgumentKind::IntroPattern:        return "I";
    }
    return "?";
}

std::string render_tactic(const TacticApplication& t) {
    std::string s = t.name;
    for (const auto& a : t.arguments) s += " " + a.text + ":" + kind_letter(a.kind);
    return s;
}

std::string render_golden_tactic(const json& t) {
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += " ";
        s += t[i].get<std::string>();
    }
    return s;
}

}  // namespace

GoldenReport check_listing(const std::string& stem) {
    GoldenReport report;
    json golden = json::parse(read_file(fixture_path("listings/" + stem + ".golden.json")));
    std::string source = read_file(fixture_path("listings/" + stem + ".v"));
    std::vector<LemmaRecord> parsed;
    try {
        parsed = parse_library(source, "fixture", ParseOptions{stem + ".v", golden.at("lenient").get<bool>()});
    } catch (const Error& e) {
        report.mismatches.push_back(stem + ": parse failed: " + e.what());
        return report;
    }
    const json& lemmas = golden.at("lemmas");
    if (parsed.size() != lemmas.size())
        report.mismatches.push_back(stem + ": " + std::to_string(parsed.size()) + " lemmas parsed, golden has " +
                                    std::to_string(lemmas.size()));
    for (std::size_t i = 0; i < std::min(parsed.size(), lemmas.size()); ++i) {
        const LemmaRecord& got = parsed[i];
        const json& want = lemmas[i];
        ++report.lemmas;
        const std::string where = stem + "/" + want.at("name").get<std::string>();
        if (got.name != want.at("name").get<std::string>()) {
            report.mismatches.push_back(where + ": parsed name " + got.name);
            continue;
        }
        const json& steps = want.at("steps");
        if (got.steps.size() != steps.size()) {
            report.mismatches.push_back(where + ": " + std::to_string(got.steps.size()) + " steps, golden " +
                                        std::to_string(steps.size()));
            continue;
        }
        for (std::size_t s = 0; s < steps.size(); ++s) {
            ++report.steps;
            const auto& tactics = got.steps[s].tactics;
            std::string got_line, want_line;
            for (const auto& t : tactics) {
                got_line += (got_line.empty() ? "" : " ; ") + render_tactic(t);
                report.arguments += t.arguments.size();
            }
            for (const auto& t : steps[s]) want_line += (want_line.empty() ? "" : " ; ") + render_golden_tactic(t);
            if (got_line != want_line)
                report.mismatches.push_back(where + " step " + std::to_string(s + 1) + ":\n    got  " + got_line +
                                            "\n    want " + want_line);
        }
    }
    return report;
}

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm

std::vector<Point> random_points(Rng& rng, std::size_t count, std::size_t dims, double scale) {
    std::vector<Point> pts(count, Point(dims));
    for (auto& p : pts)
        for (double& x : p) x = (rng.uniform01() * 2.0 - 1.0) * scale;
    return pts;
}

std::vector<Point> random_grid_points(Rng& rng, std::size_t count, std::size_t dims, int side) {
    std::vector<Point> pts(count, Point(dims));
    for (auto& p : pts)
        for (double& x : p) x = static_cast<double>(rng.uniform_index(static_cast<std::size_t>(side)));
    return pts;
}

DigestInput random_digest_input(Rng& rng, std::size_t lemmas, std::size_t dims, std::size_t libraries) {
    DigestInput in;
    // a few loose blobs so that some groups are stable and some are not
    std::size_t blobs = 1 + rng.uniform_index(4);
    std::vector<Point> centers = random_points(rng, blobs, dims, 1.0);
    for (std::size_t i = 0; i < lemmas; ++i) {
        const Point& c = centers[rng.uniform_index(blobs)];
        Point p(dims);
        double spread = 0.05 + 0.3 * rng.uniform01();
        for (std::size_t d = 0; d < dims; ++d) p[d] = c[d] + (rng.uniform01() - 0.5) * spread;
        in.points.push_back(std::move(p));
        in.names.push_back("lemma_" + std::to_string(i));
        in.libraries.push_back("lib" + std::to_string(rng.uniform_index(libraries)));
    }
    return in;
}

std::string random_library_source(Rng& rng, const std::string& prefix, std::size_t lemmas) {
    static const char* funcs[] = {"addn", "muln", "cat", "rev", "map", "size", "take", "drop"};
    static const char* preds[] = {"even", "odd", "sorted", "uniq", "prime"};
    static const char* lemmas_used[] = {"addnC", "addnA", "mulnC", "catA", "revK", "size_map", "take0", "drop0"};
    auto pick = [&](const auto& arr) { return std::string(arr[rng.uniform_index(std::size(arr))]); };

    std::ostringstream os;
    os << "(* generated *)\n";
    for (std::size_t i = 0; i < lemmas; ++i) {
        os << "Lemma " << prefix << "_" << i << " a b : ";
        switch (rng.uniform_index(4)) {
        case 0: os << pick(funcs) << " a b = " << pick(funcs) << " b a"; break;
        case 1: os << "forall x, " << pick(preds) << " x -> " << pick(preds) << " (a + x)"; break;
        case 2: os << "(a * b) == " << pick(funcs) << " b"; break;
        default: os << pick(preds) << " a && " << pick(preds) << " b"; break;
        }
        os << ".\nProof.\n";
        std::size_t steps = 1 + rng.uniform_index(7);
        for (std::size_t s = 0; s < steps; ++s) {
            switch (rng.uniform_index(9)) {
            case 0: os << "move=> x y."; break;
            case 1: os << "elim: a => //= x IH."; break;
            case 2: os << "rewrite " << pick(lemmas_used) << " " << pick(lemmas_used) << "."; break;
            case 3: os << "by rewrite IH."; break;
            case 4: os << "case: b."; break;
            case 5: os << "apply: " << pick(lemmas_used) << "."; break;
            case 6: os << "by []."; break;
            case 7: os << "exact (" << pick(lemmas_used) << " a)."; break;
            default: os << "rewrite -!" << pick(lemmas_used) << " 2!" << pick(lemmas_used) << "; simpl."; break;
            }
            os << "\n";
        }
        os << "Qed.\n\n";
    }
    return os.str();
}

Corpus random_corpus(Rng& rng, std::size_t lemmas, std::size_t libraries) {
    std::vector<LibrarySource> sources;
    std::size_t left = lemmas;
    for (std::size_t l = 0; l < libraries && left > 0; ++l) {
        std::size_t count = l + 1 == libraries ? left : std::min(left, 1 + rng.uniform_index(left));
        std::string tag = "lib" + std::to_string(l);
        sources.push_back({tag, random_library_source(rng, tag, count), tag + ".v"});
        left -= count;
    }
    return ingest_sources(sources, Corpus{});
}

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm

double partition_sse(const std::vector<Point>& points, const std::vector<int>& labels) {
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < points.size(); ++i) groups[labels[i]].push_back(i);
    double total = 0.0;
    for (const auto& [label, idx] : groups) {
        Point mean(points.front().size(), 0.0);
        for (std::size_t i : idx)
            for (std::size_t d = 0; d < mean.size(); ++d) mean[d] += points[i][d];
        for (double& x : mean) x /= static_cast<double>(idx.size());
        for (std::size_t i : idx)
            for (std::size_t d = 0; d < mean.size(); ++d) total += (points[i][d] - mean[d]) * (points[i][d] - mean[d]);
    }
    return total;
}

double brute_force_min_sse(const std::vector<Point>& points, std::size_t k, std::vector<int>* best_labels) {
    const std::size_t n = points.size();
    std::vector<int> labels(n, 0);
    double best = std::numeric_limits<double>::infinity();
    // restricted growth strings enumerate each set partition once
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (static_cast<std::size_t>(used) + (n - i) < k) return;
        if (i == n) {
            if (static_cast<std::size_t>(used) != k) return;
            double sse = partition_sse(points, labels);
            if (sse < best) {
                best = sse;
                if (best_labels) *best_labels = labels;
            }
            return;
        }
        for (int l = 0; l <= used && static_cast<std::size_t>(l) < k; ++l) {
            labels[i] = l;
            rec(i + 1, std::max(used, l + 1));
        }
    };
    rec(0, 0);
    return best;
}

std::vector<std::size_t> greedy_center_oracle(const std::vector<Point>& points, std::size_t n, std::size_t first) {
    std::vector<std::size_t> centers{first};
    while (centers.size() < n) {
        std::size_t pick = points.size();
        double pick_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (std::find(centers.begin(), centers.end(), i) != centers.end()) continue;
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t c : centers) {
                double s = 0.0;
                for (std::size_t d = 0; d < points[i].size(); ++d)
                    s += (points[i][d] - points[c][d]) * (points[i][d] - points[c][d]);
                nearest = std::min(nearest, std::sqrt(s));
            }
            if (nearest > pick_d) {
                pick_d = nearest;
                pick = i;
            }
        }
        centers.push_back(pick);
    }
    return centers;
}

double brute_force_k_center(const std::vector<Point>& points, std::size_t n) {
    const std::size_t m = points.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<bool> mask(m, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n), true);
    do {
        double radius = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t c = 0; c < m; ++c)
                if (mask[c]) nearest = std::min(nearest, distance(points[i], points[c]));
            radius = std::max(radius, nearest);
        }
        best = std::min(best, radius);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return best;
}

bool cooccurrence_well_formed(const CoOccurrence& co) {
    for (std::size_t a = 0; a < co.objects(); ++a) {
        if (co.at(a, a) != 1.0) return false;
        for (std::size_t b = 0; b < co.objects(); ++b) {
            double v = co.at(a, b);
            if (v != co.at(b, a) || v < 0.0 || v > 1.0) return false;
        }
    }
    return true;
}

bool nested_in(const std::vector<ConsensusCluster>& fine, const std::vector<ConsensusCluster>& coarse) {
    for (const auto& f : fine) {
        bool inside = false;
        for (const auto& c : coarse)
            if (std::includes(c.members.begin(), c.members.end(), f.members.begin(), f.members.end())) {
                inside = true;
                break;
            }
        if (!inside) return false;
    }
    return true;
}

}  // namespace proofmine::testing
