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

#ifndef PROOFMINE_CORPUS_HPP
#define PROOFMINE_CORPUS_HPP

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "proofmine/features.hpp"
#include "proofmine/script_parser.hpp"

namespace proofmine {

inline constexpr std::string_view kCorpusFormat = "proofmine corpus v1";

struct Corpus {
    std::map<std::string, std::vector<LemmaRecord>> libraries;  // tag -> lemmas in source order
    EncodingTable table;
    FeatureDatabase features;  // one record per lemma, ordered by lemma name
    std::string version{kCorpusFormat};

    std::size_t lemma_count() const;
    // Every lemma of every library, ordered by name.
    std::vector<LemmaRecord> all_lemmas() const;
    const LemmaRecord* find(std::string_view name) const;

    bool operator==(const Corpus&) const = default;
};

struct LibrarySource {
    std::string tag;
    std::string text;
    std::string file;  // for messages; ".jsonl" selects the trace format
};

// Parses every source, adds the lemmas under their tags, then rebuilds the
// table and re-extracts every feature vector. Throws the parser's errors,
// DuplicateLemmaName across the whole corpus, and NoProofBody.
Corpus ingest_sources(const std::vector<LibrarySource>& sources, Corpus corpus);

// Reads the files (Error{Io} when unreadable) and calls ingest_sources.
Corpus ingest(const std::vector<std::string>& paths, const std::vector<std::string>& tags, Corpus corpus);

// Recomputes table and features from 'libraries'.
void rebuild(Corpus& corpus);

bool is_trace_path(std::string_view path);

std::string serialize_corpus(const Corpus& corpus);
// VersionMismatch for another format, CorruptFile for checksum or structure
// failures (including truncation).
Corpus deserialize_corpus(std::string_view text);

void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace proofmine

#endif
