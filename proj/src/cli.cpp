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

#include "proofmine/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "proofmine/clustering.hpp"
#include "proofmine/corpus.hpp"
#include "proofmine/digest.hpp"
#include "proofmine/error.hpp"
#include "proofmine/features.hpp"

namespace proofmine::cli {

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string algorithm = "kmeans";
    int granularity = 3;
    std::size_t runs = 200;
    double freq_threshold = 0.6;

    DigestConfig digest_config() const {
        DigestConfig cfg;
        cfg.algorithm = *algorithm_from_string(algorithm);
        cfg.granularity = granularity;
        cfg.runs = runs;
        cfg.frequency_threshold = freq_threshold;
        cfg.master_seed = seed;
        cfg.validate();
        return cfg;
    }
};

struct ExtractOptions {
    std::vector<std::string> libs;
    std::string out;
    std::string features;
    int patch_len = kDefaultPatchLength;
};

struct ClusterOptions {
    std::string corpus;
    std::string out;
};

struct HintOptions {
    std::string corpus;
    std::string query;
};

struct ReportOptions {
    std::string digest;
    std::string format = "text";
};

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

int exit_code_for(const Error& e) {
    if (e.is_parse_error()) return kExitParse;
    switch (e.kind()) {
    case ErrorKind::Io:
    case ErrorKind::VersionMismatch:
    case ErrorKind::CorruptFile:
        return kExitIo;
    case ErrorKind::TooFewLemmas:
    case ErrorKind::TooFewPoints:
    case ErrorKind::EmptyCorpus:
        return kExitInsufficientData;
    default:
        return kExitUsage;
    }
}

int cmd_extract(const ExtractOptions& opt, std::ostream& out) {
    if (opt.patch_len < 1) throw Error(ErrorKind::InvalidArgument, "--patch-len must be at least 1");
    std::vector<std::string> paths, tags;
    for (const std::string& entry : opt.libs) {
        std::size_t colon = entry.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == entry.size())
            throw Error(ErrorKind::InvalidArgument, "--lib expects tag:path, got '" + entry + "'");
        tags.push_back(entry.substr(0, colon));
        paths.push_back(entry.substr(colon + 1));
    }
    Corpus corpus;
    corpus.features.patch_length = opt.patch_len;
    corpus = ingest(paths, tags, std::move(corpus));
    save_corpus(corpus, opt.out);
    if (!opt.features.empty()) write_file(opt.features, write_feature_database(corpus.features));

    for (const auto& [tag, lemmas] : corpus.libraries) out << tag << ": " << lemmas.size() << " lemmas\n";
    std::ostringstream hash;
    hash << std::hex << std::setw(8) << std::setfill('0') << corpus.features.table_hash;
    out << "wrote " << opt.out << " (" << corpus.lemma_count() << " lemmas, table " << hash.str() << ")\n";
    return kExitOk;
}

int cmd_cluster(const GlobalOptions& g, const ClusterOptions& opt, std::ostream& out) {
    DigestConfig cfg = g.digest_config();
    Corpus corpus = load_corpus(opt.corpus);
    if (corpus.lemma_count() < 2)
        throw Error(ErrorKind::TooFewLemmas,
                    "corpus holds " + std::to_string(corpus.lemma_count()) + " lemma(s); clustering needs at least 2");
    DigestResult digest = run_digest(digest_input(corpus.features), cfg);
    if (!opt.out.empty()) write_file(opt.out, digest_to_json(digest, 2) + "\n");
    out << render_report(digest);
    return kExitOk;
}

// True when some tactic or goal symbol of the query is in the table.
bool shares_vocabulary(const LemmaRecord& query, const EncodingTable& table) {
    std::vector<std::string> symbols;
    collect_symbols(query.statement, symbols);
    for (const auto& s : symbols)
        if (table.symbol_code(s) != 0) return true;
    for (const auto& step : query.steps)
        for (const auto& tac : step.tactics)
            if (table.tactic_code(tac.name) != 0) return true;
    return false;
}

int cmd_hint(const GlobalOptions& g, const HintOptions& opt, std::ostream& out) {
    DigestConfig cfg = g.digest_config();
    Corpus corpus = load_corpus(opt.corpus);
    std::string text = read_file(opt.query);
    std::vector<LemmaRecord> parsed = parse_library(text, "query", ParseOptions{opt.query, true});
    if (parsed.size() != 1)
        throw Error(ErrorKind::MalformedStatement,
                    "a query must hold exactly one lemma with proof steps, found " + std::to_string(parsed.size()),
                    opt.query);
    LemmaRecord query = std::move(parsed.front());
    if (query.steps.empty())
        throw Error(ErrorKind::NoProofBody, "query '" + query.name + "' has no proof steps", opt.query,
                    query.source_span.first_line);
    if (corpus.lemma_count() < 1) throw Error(ErrorKind::TooFewLemmas, "corpus is empty");

    std::string query_name = query.name;
    while (corpus.find(query_name)) query_name += "#query";

    if (!shares_vocabulary(query, corpus.table)) {
        out << "no reliable cluster for " << query.name << ": it shares no tactics or symbols with the corpus\n";
        return kExitOk;
    }

    FeatureDatabase db = corpus.features;
    db.records.push_back({query_name, "query", extract_features(query, corpus.table, db.patch_length), {}});
    rescale(db);
    DigestResult digest = run_digest(digest_input(db), cfg);
    std::optional<ConsensusCluster> best = select_reliable(digest.clusters, query_name);
    if (!best) {
        out << "no reliable cluster for " << query.name << " (" << to_string(cfg.algorithm) << ", granularity "
            << cfg.granularity << ", " << cfg.runs << " runs, threshold " << fixed(cfg.frequency_threshold, 2)
            << ")\n";
        return kExitOk;
    }

    out << "hint for " << query.name << ": " << best->members.size() - 1 << " similar lemma(s), frequency "
        << fixed(best->frequency, 3) << ", query proximity " << fixed(best->member_proximity.at(query_name), 3)
        << "\n";
    out << "clusters per run n = " << digest.clusters_per_run << " over " << digest.objects << " objects, "
        << to_string(cfg.algorithm) << ", " << cfg.runs << " runs\n";
    for (const auto& m : best->members) {
        if (m == query_name) continue;
        out << "  " << m << "  [" << digest.libraries.at(m) << "]  proximity " << fixed(best->member_proximity.at(m), 3)
            << "\n";
    }
    return kExitOk;
}

int cmd_report(const ReportOptions& opt, std::ostream& out) {
    DigestResult digest = digest_from_json(read_file(opt.digest));
    if (opt.format == "json") out << digest_to_json(digest, 2) << "\n";
    else out << render_report(digest);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mine proof patterns from Coq/SSReflect proof scripts", "proofmine"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "master seed for the clustering runs")->envname("PROOFMINE_SEED");
    app.add_option("--algorithm", g.algorithm, "kmeans | em | farthest-first")
        ->check(CLI::IsMember({"kmeans", "em", "farthest-first"}));
    app.add_option("--granularity", g.granularity, "1 (few large clusters) .. 5 (many small ones)")
        ->check(CLI::Range(1, 5));
    app.add_option("--runs", g.runs, "clustering runs per digest")->check(CLI::PositiveNumber);
    app.add_option("--freq-threshold", g.freq_threshold, "minimum co-occurrence frequency, in (0, 1]");

    ExtractOptions ex;
    CLI::App* extract = app.add_subcommand("extract", "parse libraries into a corpus file");
    extract->fallthrough();
    extract->add_option("--lib", ex.libs, "tag:path of a .v file or .jsonl trace (repeatable)")->required();
    extract->add_option("--out", ex.out, "corpus file to write")->required();
    extract->add_option("--features", ex.features, "also write the feature database (JSON Lines)");
    extract->add_option("--patch-len", ex.patch_len, "proof steps per feature vector");

    ClusterOptions cl;
    CLI::App* cluster = app.add_subcommand("cluster", "digest a corpus and print the clusters");
    cluster->fallthrough();
    cluster->add_option("--corpus", cl.corpus, "corpus file")->required();
    cluster->add_option("--out", cl.out, "digest file to write");

    HintOptions hi;
    CLI::App* hint = app.add_subcommand("hint", "find the most reliable cluster for a partial proof");
    hint->fallthrough();
    hint->add_option("--corpus", hi.corpus, "corpus file")->required();
    hint->add_option("--query", hi.query, ".v file with one (possibly unfinished) proof")->required();

    ReportOptions rp;
    CLI::App* report = app.add_subcommand("report", "render a digest file");
    report->fallthrough();
    report->add_option("--digest", rp.digest, "digest file")->required();
    report->add_option("--format", rp.format, "text | json")->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*extract) return cmd_extract(ex, out);
        if (*cluster) return cmd_cluster(g, cl, out);
        if (*hint) return cmd_hint(g, hi, out);
        return cmd_report(rp, out);
    } catch (const Error& e) {
        err << "proofmine: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace proofmine::cli
