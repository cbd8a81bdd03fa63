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

#include "proofmine/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>
#include <zlib.h>

#include "proofmine/error.hpp"

namespace proofmine {

namespace {

using nlohmann::json;

constexpr std::string_view kFeatureFormat = "proofmine features v1";

int lookup(const std::map<std::string, int, std::less<>>& codes, std::string_view key) {
    auto it = codes.find(key);
    return it == codes.end() ? 0 : it->second;
}

std::map<std::string, int, std::less<>> number_in_order(const std::set<std::string>& vocab) {
    std::map<std::string, int, std::less<>> out;
    int next = 1;
    for (const auto& w : vocab) out.emplace(w, next++);
    return out;
}

json table_json(const EncodingTable& table) {
    json j;
    j["tactic_codes"] = json::object();
    for (const auto& [k, v] : table.tactic_codes) j["tactic_codes"][k] = v;
    j["symbol_codes"] = json::object();
    for (const auto& [k, v] : table.symbol_codes) j["symbol_codes"][k] = v;
    return j;
}

}  // namespace

int EncodingTable::tactic_code(std::string_view name) const { return lookup(tactic_codes, name); }
int EncodingTable::symbol_code(std::string_view symbol) const { return lookup(symbol_codes, symbol); }

int kind_code(ArgumentKind kind) {
    switch (kind) {
    case ArgumentKind::Wildcard:            return 0;
    case ArgumentKind::Hypothesis:          return 1;
    case ArgumentKind::ExternalLemma:       return 2;
    case ArgumentKind::InductiveHypothesis: return 3;
    case ArgumentKind::NumericConstant:     return 4;
    case ArgumentKind::TermExpr:            return 5;
    case ArgumentKind::IntroPattern:        return 6;
    }
    return 0;
}

EncodingTable build_encoding_table(const std::vector<LemmaRecord>& corpus) {
    if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot build an encoding table from no lemmas");
    std::set<std::string> tactics, symbols;
    std::vector<std::string> scratch;
    auto add_tree = [&](const TermTree& t) {
        scratch.clear();
        collect_symbols(t, scratch);
        symbols.insert(scratch.begin(), scratch.end());
    };
    for (const LemmaRecord& lemma : corpus) {
        add_tree(lemma.statement);
        for (const ProofStep& step : lemma.steps) {
            for (const TacticApplication& tac : step.tactics) tactics.insert(tac.name);
            if (step.goal_before) add_tree(*step.goal_before);
        }
    }
    return EncodingTable{number_in_order(tactics), number_in_order(symbols)};
}

std::string encoding_table_to_json(const EncodingTable& table) { return table_json(table).dump(); }

EncodingTable encoding_table_from_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(ErrorKind::CorruptFile, "encoding table is not a JSON object");
    EncodingTable table;
    auto read = [&](const char* key, std::map<std::string, int, std::less<>>& dst) {
        if (!j.contains(key) || !j[key].is_object())
            throw Error(ErrorKind::CorruptFile, std::string("encoding table lacks '") + key + "'");
        for (const auto& [k, v] : j[key].items()) {
            if (!v.is_number_integer() || v.get<int>() < 1)
                throw Error(ErrorKind::CorruptFile, "encoding table code for '" + k + "' is not a positive integer");
            dst.emplace(k, v.get<int>());
        }
    };
    read("tactic_codes", table.tactic_codes);
    read("symbol_codes", table.symbol_codes);
    return table;
}

std::uint32_t table_version_hash(const EncodingTable& table) {
    std::string canon = encoding_table_to_json(table);
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(canon.data()), static_cast<uInt>(canon.size()));
    return static_cast<std::uint32_t>(crc);
}

int relation_code(const ProofStep& step) {
    bool any_hyp = false, any_lemma = false, any_ih = false;
    for (const TacticApplication& tac : step.tactics) {
        for (const ArgumentToken& arg : tac.arguments) {
            any_hyp |= arg.kind == ArgumentKind::Hypothesis;
            any_lemma |= arg.kind == ArgumentKind::ExternalLemma;
            any_ih |= arg.kind == ArgumentKind::InductiveHypothesis;
        }
    }
    if (any_ih) return 4;
    if (any_hyp && any_lemma) return 3;
    if (any_lemma) return 2;
    if (any_hyp) return 1;
    return 0;
}

StepBlock encode_step(const ProofStep& step, const EncodingTable& table) {
    StepBlock b{};
    double scale = 1.0;
    for (const TacticApplication& tac : step.tactics) {
        b[0] += table.tactic_code(tac.name) * scale;
        scale /= 10.0;
    }
    b[1] = static_cast<double>(step.tactics.size());

    int position = 0;
    scale = 1.0;
    for (const TacticApplication& tac : step.tactics) {
        for (const ArgumentToken& arg : tac.arguments) {
            if (position++ >= kMaxFoldedArguments) break;
            b[2] += kind_code(arg.kind) * scale;
            scale /= 10.0;
        }
    }
    b[3] = relation_code(step);

    if (step.goal_before) {
        const TermTree& g = *step.goal_before;
        b[4] = table.symbol_code(g.symbol);
        if (g.children.size() > 0) b[5] = table.symbol_code(g.children[0].symbol);
        if (g.children.size() > 1) b[6] = table.symbol_code(g.children[1].symbol);
    }
    b[7] = step.subgoals_after ? static_cast<double>(*step.subgoals_after) : -1.0;
    return b;
}

std::vector<double> extract_features(const LemmaRecord& lemma, const EncodingTable& table, int patch_length) {
    if (patch_length < 1) throw Error(ErrorKind::InvalidArgument, "patch length must be positive");
    if (lemma.steps.empty()) throw Error(ErrorKind::NoProofBody, "lemma '" + lemma.name + "' has no proof steps");
    std::vector<double> v(static_cast<std::size_t>(patch_length) * kSlotsPerStep, 0.0);
    std::size_t blocks = std::min(lemma.steps.size(), static_cast<std::size_t>(patch_length));
    for (std::size_t s = 0; s < blocks; ++s) {
        StepBlock b = encode_step(lemma.steps[s], table);
        std::copy(b.begin(), b.end(), v.begin() + static_cast<std::ptrdiff_t>(s * kSlotsPerStep));
    }
    return v;
}

std::vector<std::vector<double>> min_max_scale(const std::vector<std::vector<double>>& raw) {
    std::vector<std::vector<double>> out = raw;
    if (raw.empty()) return out;
    const std::size_t dims = raw.front().size();
    for (std::size_t d = 0; d < dims; ++d) {
        double lo = raw[0][d], hi = raw[0][d];
        for (const auto& row : raw) {
            lo = std::min(lo, row[d]);
            hi = std::max(hi, row[d]);
        }
        double range = hi - lo;
        for (auto& row : out) row[d] = range > 0 ? std::clamp((row[d] - lo) / range, 0.0, 1.0) : 0.0;
    }
    return out;
}

FeatureDatabase build_feature_database(const std::vector<LemmaRecord>& lemmas, const EncodingTable& table,
                                       int patch_length) {
    FeatureDatabase db;
    db.table_hash = table_version_hash(table);
    db.patch_length = patch_length;
    db.records.reserve(lemmas.size());
    for (const LemmaRecord& lemma : lemmas)
        db.records.push_back({lemma.name, lemma.library, extract_features(lemma, table, patch_length), {}});
    rescale(db);
    return db;
}

void rescale(FeatureDatabase& db) {
    std::vector<std::vector<double>> raw;
    raw.reserve(db.records.size());
    for (const auto& r : db.records) raw.push_back(r.raw);
    auto scaled = min_max_scale(raw);
    for (std::size_t i = 0; i < db.records.size(); ++i) db.records[i].scaled = std::move(scaled[i]);
}

std::string write_feature_database(const FeatureDatabase& db) {
    std::string out;
    json header = {{"format", kFeatureFormat}, {"patch_length", db.patch_length}, {"records", db.records.size()},
                   {"table_hash", db.table_hash}};
    out += header.dump();
    out += '\n';
    for (const auto& r : db.records) {
        json j = {{"name", r.name}, {"library", r.library}, {"raw", r.raw}, {"scaled", r.scaled},
                  {"table_hash", db.table_hash}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

FeatureDatabase read_feature_database(std::string_view text) {
    FeatureDatabase db;
    std::size_t pos = 0;
    int line_no = 0;
    bool have_header = false;
    std::size_t expected = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw Error(ErrorKind::CorruptFile, "feature record is not a JSON object", {}, line_no);
        try {
            if (!have_header) {
                if (!j.contains("format") || j["format"] != kFeatureFormat)
                    throw Error(ErrorKind::VersionMismatch, "expected format '" + std::string(kFeatureFormat) + "'", {},
                                line_no);
                db.patch_length = j.at("patch_length").get<int>();
                db.table_hash = j.at("table_hash").get<std::uint32_t>();
                expected = j.at("records").get<std::size_t>();
                have_header = true;
                continue;
            }
            FeatureRecord r{j.at("name").get<std::string>(), j.at("library").get<std::string>(),
                            j.at("raw").get<std::vector<double>>(), j.at("scaled").get<std::vector<double>>()};
            const auto width = static_cast<std::size_t>(db.patch_length) * kSlotsPerStep;
            if (r.raw.size() != width || r.scaled.size() != width || j.at("table_hash").get<std::uint32_t>() != db.table_hash)
                throw Error(ErrorKind::CorruptFile, "feature record of '" + r.name + "' does not match the header", {},
                            line_no);
            db.records.push_back(std::move(r));
        } catch (const json::exception& e) {
            throw Error(ErrorKind::CorruptFile, std::string("bad feature record: ") + e.what(), {}, line_no);
        }
    }
    if (!have_header) throw Error(ErrorKind::CorruptFile, "feature database is empty");
    if (db.records.size() != expected) throw Error(ErrorKind::CorruptFile, "feature database is truncated");
    return db;
}

}  // namespace proofmine
