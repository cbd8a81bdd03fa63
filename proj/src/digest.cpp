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

#include "proofmine/digest.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "proofmine/error.hpp"

namespace proofmine {

namespace {

using nlohmann::json;

constexpr std::string_view kDigestFormat = "proofmine digest v1";

struct RunOutput {
    std::vector<int> labels;
    std::vector<double> proximity;
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

// Components of 'members' joined by edges with count >= level.
std::vector<std::vector<std::size_t>> components(const CoOccurrence& co, const std::vector<std::size_t>& members,
                                                 std::uint32_t level) {
    UnionFind uf(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (co.count(members[i], members[j]) >= level) uf.unite(i, j);
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < members.size(); ++i) groups[uf.find(i)].push_back(members[i]);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

std::vector<RunOutput> execute_runs(const DigestInput& input, const DigestConfig& cfg, std::size_t n) {
    std::vector<RunOutput> results(cfg.runs);
    unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.runs));
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](unsigned w) {
        try {
            for (std::size_t r = w; r < cfg.runs; r += workers) {
                ClusterAssignment a = run_clustering(cfg.algorithm, input.points, n, cfg.master_seed + r);
                results[r] = {std::move(a.labels), std::move(a.proximity)};
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

double member_mean_proximity(const std::vector<RunOutput>& runs, const std::vector<std::size_t>& members,
                             std::size_t member) {
    double sum = 0.0;
    std::size_t hits = 0;
    std::map<int, std::size_t> votes;
    for (const RunOutput& run : runs) {
        votes.clear();
        for (std::size_t m : members) ++votes[run.labels[m]];
        int majority = 0;
        std::size_t best = 0;
        for (const auto& [label, v] : votes)
            if (v > best) {
                best = v;
                majority = label;
            }
        if (run.labels[member] == majority) {
            sum += run.proximity[member];
            ++hits;
        }
    }
    return hits ? sum / static_cast<double>(hits) : 0.0;
}

double mean_proximity(const ConsensusCluster& c) {
    if (c.member_proximity.empty()) return 0.0;
    double s = 0.0;
    for (const auto& [name, p] : c.member_proximity) s += p;
    return s / static_cast<double>(c.member_proximity.size());
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

void DigestConfig::validate() const {
    if (runs < 1) throw Error(ErrorKind::InvalidArgument, "runs must be at least 1");
    if (!(frequency_threshold > 0.0 && frequency_threshold <= 1.0))
        throw Error(ErrorKind::InvalidArgument, "frequency threshold must lie in (0, 1]");
    if (granularity < 1 || granularity > 5) throw Error(ErrorKind::InvalidArgument, "granularity must be between 1 and 5");
}

std::string_view to_string(Homogeneity h) {
    return h == Homogeneity::Homogeneous ? "Homogeneous" : "Heterogeneous";
}

CoOccurrence::CoOccurrence(std::size_t objects) : n_(objects), counts_(objects * objects, 0) {}

void CoOccurrence::add_run(const std::vector<int>& labels) {
    if (labels.size() != n_) throw Error(ErrorKind::InvalidArgument, "label vector does not match object count");
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n_; ++i) groups[labels[i]].push_back(i);
    for (const auto& [label, g] : groups)
        for (std::size_t a : g)
            for (std::size_t b : g) ++counts_[a * n_ + b];
    ++runs_;
}

void CoOccurrence::merge(const CoOccurrence& other) {
    if (other.n_ != n_) throw Error(ErrorKind::InvalidArgument, "co-occurrence matrices differ in size");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    runs_ += other.runs_;
}

double CoOccurrence::at(std::size_t a, std::size_t b) const {
    return runs_ ? static_cast<double>(count(a, b)) / static_cast<double>(runs_) : 0.0;
}

DigestInput digest_input(const FeatureDatabase& db) {
    DigestInput in;
    for (const auto& r : db.records) {
        in.names.push_back(r.name);
        in.libraries.push_back(r.library);
        in.points.push_back(r.scaled);
    }
    return in;
}

double mean_pair_frequency(const CoOccurrence& co, const std::vector<std::size_t>& members) {
    std::uint64_t total = 0, pairs = 0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            total += co.count(members[i], members[j]);
            ++pairs;
        }
    if (pairs == 0 || co.runs() == 0) return 0.0;
    return static_cast<double>(total) / (static_cast<double>(pairs) * static_cast<double>(co.runs()));
}

std::vector<std::vector<std::size_t>> consensus_groups(const CoOccurrence& co, double tau) {
    const auto level0 = static_cast<std::uint32_t>(
        std::max(1.0, std::ceil(tau * static_cast<double>(co.runs()) - 1e-9)));
    std::vector<std::size_t> everyone(co.objects());
    std::iota(everyone.begin(), everyone.end(), std::size_t{0});

    std::vector<std::vector<std::size_t>> out;
    std::vector<std::pair<std::vector<std::size_t>, std::uint32_t>> pending;
    for (auto& c : components(co, everyone, level0)) pending.emplace_back(std::move(c), level0);
    while (!pending.empty()) {
        auto [members, level] = std::move(pending.back());
        pending.pop_back();
        if (members.size() < 2) continue;
        if (mean_pair_frequency(co, members) >= tau) {
            out.push_back(std::move(members));
            continue;
        }
        // weakest edge still holding the group together
        std::uint32_t weakest = UINT32_MAX;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                std::uint32_t c = co.count(members[i], members[j]);
                if (c >= level) weakest = std::min(weakest, c);
            }
        for (auto& c : components(co, members, weakest + 1)) pending.emplace_back(std::move(c), weakest + 1);
    }
    return out;
}

DigestResult run_digest(const DigestInput& input, const DigestConfig& cfg) {
    CoOccurrence co;
    return run_digest(input, cfg, co);
}

DigestResult run_digest(const DigestInput& input, const DigestConfig& cfg, CoOccurrence& co) {
    cfg.validate();
    const std::size_t m = input.points.size();
    if (m < 2) throw Error(ErrorKind::TooFewLemmas, "a digest needs at least two lemmas, got " + std::to_string(m));
    if (input.names.size() != m || input.libraries.size() != m)
        throw Error(ErrorKind::InvalidArgument, "digest input columns differ in length");

    DigestResult result;
    result.config = cfg;
    result.objects = m;
    result.clusters_per_run = choose_n({cfg.granularity, m});

    std::vector<RunOutput> runs = execute_runs(input, cfg, result.clusters_per_run);
    co = CoOccurrence(m);
    for (const RunOutput& r : runs) co.add_run(r.labels);

    std::map<std::string, std::string, std::less<>> tags;
    for (std::size_t i = 0; i < m; ++i) tags[input.names[i]] = input.libraries[i];

    for (const auto& group : consensus_groups(co, cfg.frequency_threshold)) {
        ConsensusCluster c;
        for (std::size_t i : group) {
            c.members.push_back(input.names[i]);
            c.member_proximity[input.names[i]] = member_mean_proximity(runs, group, i);
            result.libraries[input.names[i]] = input.libraries[i];
        }
        std::sort(c.members.begin(), c.members.end());
        c.frequency = mean_pair_frequency(co, group);
        c.homogeneity = classify_homogeneity(c, tags);
        result.clusters.push_back(std::move(c));
    }
    std::sort(result.clusters.begin(), result.clusters.end(), [](const ConsensusCluster& a, const ConsensusCluster& b) {
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        return a.members.front() < b.members.front();
    });
    return result;
}

std::optional<ConsensusCluster> select_reliable(const std::vector<ConsensusCluster>& clusters,
                                                std::string_view lemma) {
    const ConsensusCluster* best = nullptr;
    double best_score = 0.0;
    for (const ConsensusCluster& c : clusters) {
        if (!std::binary_search(c.members.begin(), c.members.end(), lemma, std::less<>{})) continue;
        double score = c.frequency * mean_proximity(c);
        bool better = !best || score > best_score ||
                      (score == best_score && (c.frequency > best->frequency ||
                                               (c.frequency == best->frequency && c.members.front() < best->members.front())));
        if (better) {
            best = &c;
            best_score = score;
        }
    }
    if (!best) return std::nullopt;
    return *best;
}

Homogeneity classify_homogeneity(const ConsensusCluster& cluster,
                                 const std::map<std::string, std::string, std::less<>>& library_tags) {
    std::set<std::string> seen;
    for (const auto& m : cluster.members) {
        auto it = library_tags.find(m);
        if (it == library_tags.end()) throw Error(ErrorKind::UnknownLemma, "no library tag for '" + m + "'");
        seen.insert(it->second);
    }
    return seen.size() <= 1 ? Homogeneity::Homogeneous : Homogeneity::Heterogeneous;
}

std::string digest_to_json(const DigestResult& result, int indent) {
    json clusters = json::array();
    for (const auto& c : result.clusters) {
        json prox = json::object();
        json libs = json::object();
        for (const auto& m : c.members) {
            prox[m] = c.member_proximity.at(m);
            libs[m] = result.libraries.at(m);
        }
        clusters.push_back({{"members", c.members},
                            {"frequency", c.frequency},
                            {"member_proximity", prox},
                            {"libraries", libs},
                            {"homogeneity", to_string(c.homogeneity)}});
    }
    const DigestConfig& cfg = result.config;
    json j = {{"format", kDigestFormat},
              {"config",
               {{"algorithm", to_string(cfg.algorithm)},
                {"granularity", cfg.granularity},
                {"runs", cfg.runs},
                {"frequency_threshold", cfg.frequency_threshold},
                {"seed", cfg.master_seed}}},
              {"objects", result.objects},
              {"clusters_per_run", result.clusters_per_run},
              {"clusters", clusters}};
    return j.dump(indent);
}

DigestResult digest_from_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorKind::CorruptFile, "digest is not a JSON object");
    if (!j.contains("format") || j["format"] != kDigestFormat)
        throw Error(ErrorKind::VersionMismatch, "expected format '" + std::string(kDigestFormat) + "'");
    DigestResult r;
    try {
        const json& cfg = j.at("config");
        auto algo = algorithm_from_string(cfg.at("algorithm").get<std::string>());
        if (!algo) throw Error(ErrorKind::CorruptFile, "unknown algorithm in digest");
        r.config.algorithm = *algo;
        r.config.granularity = cfg.at("granularity").get<int>();
        r.config.runs = cfg.at("runs").get<std::size_t>();
        r.config.frequency_threshold = cfg.at("frequency_threshold").get<double>();
        r.config.master_seed = cfg.at("seed").get<std::uint64_t>();
        r.objects = j.at("objects").get<std::size_t>();
        r.clusters_per_run = j.at("clusters_per_run").get<std::size_t>();
        for (const json& c : j.at("clusters")) {
            ConsensusCluster cc;
            cc.members = c.at("members").get<std::vector<std::string>>();
            cc.frequency = c.at("frequency").get<double>();
            cc.member_proximity = c.at("member_proximity").get<std::map<std::string, double>>();
            for (const auto& [k, v] : c.at("libraries").items()) r.libraries[k] = v.get<std::string>();
            std::string h = c.at("homogeneity").get<std::string>();
            if (h == "Homogeneous") cc.homogeneity = Homogeneity::Homogeneous;
            else if (h == "Heterogeneous") cc.homogeneity = Homogeneity::Heterogeneous;
            else throw Error(ErrorKind::CorruptFile, "unknown homogeneity '" + h + "'");
            r.clusters.push_back(std::move(cc));
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::CorruptFile, std::string("malformed digest: ") + e.what());
    }
    return r;
}

std::string render_report(const DigestResult& result) {
    const DigestConfig& cfg = result.config;
    std::ostringstream os;
    os << "proofmine digest: algorithm " << to_string(cfg.algorithm) << ", granularity " << cfg.granularity << ", "
       << cfg.runs << " runs, frequency threshold " << fixed(cfg.frequency_threshold, 2) << ", seed "
       << cfg.master_seed << "\n";
    os << "objects m = " << result.objects << ", clusters per run n = " << result.clusters_per_run << "\n";
    std::size_t homo = 0;
    for (const auto& c : result.clusters) homo += c.homogeneity == Homogeneity::Homogeneous;
    os << "consensus clusters: " << result.clusters.size() << " (" << homo << " homogeneous, "
       << result.clusters.size() - homo << " heterogeneous)\n";

    for (Homogeneity h : {Homogeneity::Homogeneous, Homogeneity::Heterogeneous}) {
        os << "\n" << to_string(h) << " clusters\n";
        int shown = 0, index = 0;
        for (const auto& c : result.clusters) {
            ++index;
            if (c.homogeneity != h) continue;
            ++shown;
            os << "  #" << index << "  frequency " << fixed(c.frequency, 3) << ", " << c.members.size()
               << " members\n";
            for (const auto& m : c.members) {
                auto lib = result.libraries.find(m);
                os << "      " << m << "  [" << (lib == result.libraries.end() ? "?" : lib->second)
                   << "]  proximity " << fixed(c.member_proximity.at(m), 3) << "\n";
            }
        }
        if (shown == 0) os << "  (none)\n";
    }
    return os.str();
}

}  // namespace proofmine
