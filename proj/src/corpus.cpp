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

#include "proofmine/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <zlib.h>

#include "proofmine/error.hpp"

namespace proofmine {

namespace {

using nlohmann::json;

json tree_to_json(const TermTree& t) {
    json j = {{"symbol", t.symbol}};
    if (!t.children.empty()) {
        json kids = json::array();
        for (const auto& c : t.children) kids.push_back(tree_to_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

TermTree tree_from_json(const json& j) {
    TermTree t;
    t.symbol = j.at("symbol").get<std::string>();
    if (j.contains("children"))
        for (const json& c : j.at("children")) t.children.push_back(tree_from_json(c));
    return t;
}

json lemma_to_json(const LemmaRecord& l) {
    json steps = json::array();
    for (const ProofStep& s : l.steps) {
        json tactics = json::array();
        for (const TacticApplication& t : s.tactics) {
            json args = json::array();
            for (const ArgumentToken& a : t.arguments) args.push_back({{"text", a.text}, {"kind", to_string(a.kind)}});
            tactics.push_back({{"name", t.name}, {"arguments", std::move(args)}});
        }
        json js = {{"index", s.index}, {"tactics", std::move(tactics)}, {"flags", s.flags}, {"text", s.text},
                   {"line", s.line}};
        if (s.goal_before) js["goal_before"] = tree_to_json(*s.goal_before);
        if (s.subgoals_after) js["subgoals_after"] = *s.subgoals_after;
        steps.push_back(std::move(js));
    }
    return {{"name", l.name},
            {"library", l.library},
            {"statement", tree_to_json(l.statement)},
            {"parameters", l.parameters},
            {"span", {{"file", l.source_span.file}, {"first_line", l.source_span.first_line},
                      {"last_line", l.source_span.last_line}}},
            {"steps", std::move(steps)}};
}

LemmaRecord lemma_from_json(const json& j) {
    LemmaRecord l;
    l.name = j.at("name").get<std::string>();
    l.library = j.at("library").get<std::string>();
    l.statement = tree_from_json(j.at("statement"));
    l.parameters = j.at("parameters").get<std::vector<std::string>>();
    const json& span = j.at("span");
    l.source_span = {span.at("file").get<std::string>(), span.at("first_line").get<int>(),
                     span.at("last_line").get<int>()};
    for (const json& js : j.at("steps")) {
        ProofStep s;
        s.index = js.at("index").get<int>();
        s.flags = js.at("flags").get<std::vector<std::string>>();
        s.text = js.at("text").get<std::string>();
        s.line = js.at("line").get<int>();
        if (js.contains("goal_before")) s.goal_before = tree_from_json(js.at("goal_before"));
        if (js.contains("subgoals_after")) s.subgoals_after = js.at("subgoals_after").get<int>();
        for (const json& jt : js.at("tactics")) {
            TacticApplication t;
            t.name = jt.at("name").get<std::string>();
            for (const json& ja : jt.at("arguments")) {
                auto kind = argument_kind_from_string(ja.at("kind").get<std::string>());
                if (!kind) throw Error(ErrorKind::CorruptFile, "unknown argument kind in corpus");
                t.arguments.push_back({ja.at("text").get<std::string>(), *kind});
            }
            s.tactics.push_back(std::move(t));
        }
        l.steps.push_back(std::move(s));
    }
    return l;
}

std::string checksum_hex(std::string_view format, std::string_view body) {
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(format.data()), static_cast<uInt>(format.size()));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size()));
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc & 0xffffffffUL));
    return buf;
}

}  // namespace

std::size_t Corpus::lemma_count() const {
    std::size_t n = 0;
    for (const auto& [tag, lemmas] : libraries) n += lemmas.size();
    return n;
}

std::vector<LemmaRecord> Corpus::all_lemmas() const {
    std::vector<LemmaRecord> out;
    for (const auto& [tag, lemmas] : libraries) out.insert(out.end(), lemmas.begin(), lemmas.end());
    std::sort(out.begin(), out.end(), [](const LemmaRecord& a, const LemmaRecord& b) { return a.name < b.name; });
    return out;
}

const LemmaRecord* Corpus::find(std::string_view name) const {
    for (const auto& [tag, lemmas] : libraries)
        for (const auto& l : lemmas)
            if (l.name == name) return &l;
    return nullptr;
}

bool is_trace_path(std::string_view path) {
    auto ends = [&](std::string_view suffix) {
        return path.size() >= suffix.size() && path.substr(path.size() - suffix.size()) == suffix;
    };
    return ends(".jsonl") || ends(".trace");
}

void rebuild(Corpus& corpus) {
    const int patch = corpus.features.patch_length;
    std::vector<LemmaRecord> all = corpus.all_lemmas();
    if (all.empty()) {
        corpus.table = {};
        corpus.features = {};
        corpus.features.patch_length = patch;
        return;
    }
    corpus.table = build_encoding_table(all);
    corpus.features = build_feature_database(all, corpus.table, patch);
}

Corpus ingest_sources(const std::vector<LibrarySource>& sources, Corpus corpus) {
    if (sources.empty()) return corpus;
    std::set<std::string> names;
    for (const auto& [tag, lemmas] : corpus.libraries)
        for (const auto& l : lemmas) names.insert(l.name);

    for (const LibrarySource& src : sources) {
        if (src.tag.empty()) throw Error(ErrorKind::InvalidArgument, "empty library tag for " + src.file);
        ParseOptions opts{src.file, false};
        std::vector<LemmaRecord> parsed =
            is_trace_path(src.file) ? parse_trace(src.text, src.tag, opts) : parse_library(src.text, src.tag, opts);
        for (LemmaRecord& l : parsed) {
            if (!names.insert(l.name).second)
                throw Error(ErrorKind::DuplicateLemmaName, "lemma '" + l.name + "' already in the corpus", src.file,
                            l.source_span.first_line);
            if (l.steps.empty())
                throw Error(ErrorKind::NoProofBody, "lemma '" + l.name + "' has an empty proof", src.file,
                            l.source_span.first_line);
            corpus.libraries[src.tag].push_back(std::move(l));
        }
    }
    rebuild(corpus);
    return corpus;
}

Corpus ingest(const std::vector<std::string>& paths, const std::vector<std::string>& tags, Corpus corpus) {
    if (paths.size() != tags.size()) throw Error(ErrorKind::InvalidArgument, "every path needs a library tag");
    std::vector<LibrarySource> sources;
    for (std::size_t i = 0; i < paths.size(); ++i) sources.push_back({tags[i], read_file(paths[i]), paths[i]});
    return ingest_sources(sources, std::move(corpus));
}

std::string serialize_corpus(const Corpus& corpus) {
    json libs = json::object();
    for (const auto& [tag, lemmas] : corpus.libraries) {
        json arr = json::array();
        for (const auto& l : lemmas) arr.push_back(lemma_to_json(l));
        libs[tag] = std::move(arr);
    }
    json body = {{"libraries", std::move(libs)},
                 {"table", json::parse(encoding_table_to_json(corpus.table))},
                 {"features", write_feature_database(corpus.features)}};
    std::string body_text = body.dump();
    json file = {{"format", corpus.version}, {"checksum", checksum_hex(corpus.version, body_text)}, {"body", body}};
    return file.dump();
}

Corpus deserialize_corpus(std::string_view text) {
    json file = json::parse(text, nullptr, false);
    if (file.is_discarded() || !file.is_object()) throw Error(ErrorKind::CorruptFile, "corpus file is not valid JSON");
    if (!file.contains("format") || !file["format"].is_string() || !file.contains("checksum") ||
        !file["checksum"].is_string() || !file.contains("body") || !file["body"].is_object())
        throw Error(ErrorKind::CorruptFile, "corpus file lacks format, checksum or body");
    std::string format = file["format"].get<std::string>();
    if (checksum_hex(format, file["body"].dump()) != file["checksum"].get<std::string>())
        throw Error(ErrorKind::CorruptFile, "corpus checksum mismatch");
    if (format != kCorpusFormat)
        throw Error(ErrorKind::VersionMismatch,
                    "corpus format '" + format + "', expected '" + std::string(kCorpusFormat) + "'");

    Corpus c;
    c.version = format;
    try {
        const json& body = file["body"];
        for (const auto& [tag, arr] : body.at("libraries").items())
            for (const json& jl : arr) c.libraries[tag].push_back(lemma_from_json(jl));
        c.table = encoding_table_from_json(body.at("table").dump());
        c.features = read_feature_database(body.at("features").get<std::string>());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::CorruptFile, std::string("malformed corpus body: ") + e.what());
    }
    return c;
}

void save_corpus(const Corpus& corpus, const std::string& path) { write_file(path, serialize_corpus(corpus)); }

Corpus load_corpus(const std::string& path) {
    try {
        return deserialize_corpus(read_file(path));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Io) throw;
        throw Error(e.kind(), e.message(), path, e.line());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "error while reading '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::Io, "error while writing '" + path + "'");
}

}  // namespace proofmine
