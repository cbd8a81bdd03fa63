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

#ifndef PROOFMINE_FEATURES_HPP
#define PROOFMINE_FEATURES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "proofmine/script_parser.hpp"

namespace proofmine {

inline constexpr int kSlotsPerStep = 8;
inline constexpr int kDefaultPatchLength = 5;
// Argument positions beyond this do not contribute to the kind slot.
inline constexpr int kMaxFoldedArguments = 6;

// Codes start at 1 in lexicographic (byte) order; 0 means absent or unknown.
struct EncodingTable {
    std::map<std::string, int, std::less<>> tactic_codes;
    std::map<std::string, int, std::less<>> symbol_codes;

    int tactic_code(std::string_view name) const;
    int symbol_code(std::string_view symbol) const;

    bool operator==(const EncodingTable&) const = default;
};

// Fixed: Wildcard 0, Hypothesis 1, ExternalLemma 2, InductiveHypothesis 3,
// NumericConstant 4, TermExpr 5, IntroPattern 6.
int kind_code(ArgumentKind kind);

// Throws Error{EmptyCorpus} on an empty corpus.
EncodingTable build_encoding_table(const std::vector<LemmaRecord>& corpus);

std::string encoding_table_to_json(const EncodingTable& table);
EncodingTable encoding_table_from_json(std::string_view text);
// CRC-32 of the canonical JSON form; stored next to every feature record.
std::uint32_t table_version_hash(const EncodingTable& table);

using StepBlock = std::array<double, kSlotsPerStep>;

// Slots: folded tactic codes, tactic count, folded argument kinds, relation
// code, goal root / first child / second child symbol codes, subgoal count
// (-1 when unknown).
StepBlock encode_step(const ProofStep& step, const EncodingTable& table);

// Relation of the relation-bearing arguments (hypotheses, inductive
// hypotheses, library lemmas): 0 none, 1 all hypotheses, 2 all lemmas,
// 3 mixed, 4 any inductive hypothesis.
int relation_code(const ProofStep& step);

// Concatenated blocks of steps 1..patch_length, zero-padded. Throws
// Error{NoProofBody} for a lemma without steps.
std::vector<double> extract_features(const LemmaRecord& lemma, const EncodingTable& table,
                                     int patch_length = kDefaultPatchLength);

// Per-dimension min-max scaling to [0,1]; zero-range dimensions become 0.
std::vector<std::vector<double>> min_max_scale(const std::vector<std::vector<double>>& raw);

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Feature database ("proofmine features v1", JSON Lines)

struct FeatureRecord {
    std::string name;
    std::string library;
    std::vector<double> raw;
    std::vector<double> scaled;

    bool operator==(const FeatureRecord&) const = default;
};

struct FeatureDatabase {
    std::uint32_t table_hash = 0;
    int patch_length = kDefaultPatchLength;
    std::vector<FeatureRecord> records;

    bool operator==(const FeatureDatabase&) const = default;
};

// Records follow the order of 'lemmas'.
FeatureDatabase build_feature_database(const std::vector<LemmaRecord>& lemmas, const EncodingTable& table,
                                       int patch_length = kDefaultPatchLength);

// Recomputes every 'scaled' vector from the 'raw' ones.
void rescale(FeatureDatabase& db);

std::string write_feature_database(const FeatureDatabase& db);
// Throws VersionMismatch for another format name, CorruptFile for bad records.
FeatureDatabase read_feature_database(std::string_view text);

}  // namespace proofmine

#endif
