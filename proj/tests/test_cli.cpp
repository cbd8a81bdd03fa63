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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "proofmine/cli.hpp"
#include "proofmine/corpus.hpp"
#include "support.hpp"

using namespace proofmine;
using namespace proofmine::testing;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::string scenario_corpus() {
    std::string path = temp_path("scenario.corpus");
    auto r = run_cli({"extract", "--lib", "mx:" + fixture_path("scenario/inverse_family.v"), "--lib",
                      "misc:" + fixture_path("scenario/decoys.v"), "--out", path});
    REQUIRE(r.code == 0);
    return path;
}

}  // namespace

TEST_CASE("extract writes tagged corpora") {
    std::string path = temp_path("one.corpus");
    auto r = run_cli({"extract", "--lib", "ssr:" + fixture_path("listings/related_functions.v"), "--out", path});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "ssr: 6 lemmas"));
    Corpus c = load_corpus(path);
    CHECK(c.libraries.count("ssr") == 1);

    std::string two = temp_path("two.corpus");
    std::string features = temp_path("two.features.jsonl");
    r = run_cli({"extract", "--lib", "ssr:" + fixture_path("listings/related_functions.v"), "--lib",
                 "seq:" + fixture_path("listings/seq_nat_structure.v"), "--out", two, "--features", features});
    CHECK(r.code == 0);
    Corpus c2 = load_corpus(two);
    CHECK(c2.libraries.size() == 2);
    CHECK(read_feature_database(read_file(features)) == c2.features);

    r = run_cli({"extract", "--lib", "nat:" + fixture_path("traces/addn_trace.jsonl"), "--out", temp_path("t.corpus")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "nat: 3 lemmas"));
}

TEST_CASE("exit codes") {
    auto missing = run_cli({"extract", "--lib", "x:/nonexistent/file.v", "--out", temp_path("m.corpus")});
    CHECK(missing.code == cli::kExitIo);

    std::string bad = temp_path("bad.v");
    write_file(bad, "Lemma broken : x.\nProof.\nmove=> h.\n");
    auto parse = run_cli({"extract", "--lib", "x:" + bad, "--out", temp_path("b.corpus")});
    CHECK(parse.code == cli::kExitParse);
    CHECK(contains(parse.err, bad + ":1"));

    std::string single = temp_path("single.v");
    write_file(single, "Lemma lonely : x.\nProof. by []. Qed.\n");
    std::string one = temp_path("single.corpus");
    CHECK(run_cli({"extract", "--lib", "x:" + single, "--out", one}).code == 0);
    CHECK(run_cli({"cluster", "--corpus", one}).code == cli::kExitInsufficientData);

    CHECK(run_cli({"cluster", "--corpus", "/nonexistent.corpus"}).code == cli::kExitIo);
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run_cli({"--granularity", "9", "cluster", "--corpus", one}).code == cli::kExitUsage);
    CHECK(run_cli({"--algorithm", "dbscan", "cluster", "--corpus", one}).code == cli::kExitUsage);
    CHECK(run_cli({"--freq-threshold", "0", "cluster", "--corpus", scenario_corpus()}).code == cli::kExitUsage);
    CHECK(run_cli({"extract", "--lib", "notag", "--out", one}).code == cli::kExitUsage);
    CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("cluster is deterministic and report renders the digest") {
    std::string corpus = scenario_corpus();
    std::string d1 = temp_path("d1.json"), d2 = temp_path("d2.json");
    auto a = run_cli({"--runs", "1", "--seed", "7", "cluster", "--corpus", corpus, "--out", d1});
    auto b = run_cli({"cluster", "--corpus", corpus, "--out", d2, "--runs", "1", "--seed", "7"});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    CHECK(read_file(d1) == read_file(d2));
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "objects m = 24"));

    auto text = run_cli({"report", "--digest", d1});
    CHECK(text.code == 0);
    CHECK(text.out == a.out);
    auto json = run_cli({"report", "--digest", d1, "--format", "json"});
    CHECK(json.code == 0);
    CHECK(json.out == read_file(d1));

    ::setenv("PROOFMINE_SEED", "7", 1);
    auto env = run_cli({"--runs", "1", "cluster", "--corpus", corpus});
    ::unsetenv("PROOFMINE_SEED");
    CHECK(env.out == a.out);
}

TEST_CASE("large corpus header shows the granularity formula") {
    Rng rng(1404);
    std::string path = temp_path("big.v");
    write_file(path, random_library_source(rng, "big", 1404));
    std::string corpus = temp_path("big.corpus");
    REQUIRE(run_cli({"extract", "--lib", "big:" + path, "--out", corpus}).code == 0);
    auto r = run_cli({"--granularity", "5", "--algorithm", "kmeans", "--runs", "1", "cluster", "--corpus", corpus});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "objects m = 1404, clusters per run n = 280"));
}

TEST_CASE("hint returns the matching family and leaves the corpus alone") {
    std::string corpus = scenario_corpus();
    std::string before = read_file(corpus);
    auto r = run_cli({"--granularity", "4", "--runs", "50", "--seed", "3", "hint", "--corpus", corpus, "--query",
                      fixture_path("listings/nilpotent_sum.v")});
    CHECK(r.code == 0);
    for (const char* name : {"nilpotent_sum_left", "unipotent_inverse", "nilpotent_geometric", "nilpotent_unit"})
        CHECK(contains(r.out, name));
    CHECK(!contains(r.out, "_d "));
    CHECK(read_file(corpus) == before);
}

TEST_CASE("hint edge cases") {
    std::string corpus = scenario_corpus();
    std::string alien = temp_path("alien.v");
    write_file(alien, "Theorem zzz : qqq.\nProof.\nfrobnicate.\n");
    auto r = run_cli({"hint", "--corpus", corpus, "--query", alien});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "no reliable cluster"));

    std::string empty = temp_path("empty_query.v");
    write_file(empty, "(* nothing *)\n");
    CHECK(run_cli({"hint", "--corpus", corpus, "--query", empty}).code == cli::kExitParse);
    std::string no_steps = temp_path("no_steps.v");
    write_file(no_steps, "Lemma q : x.\nProof.\n");
    CHECK(run_cli({"hint", "--corpus", corpus, "--query", no_steps}).code == cli::kExitParse);
    std::string unbalanced = temp_path("unbalanced.v");
    write_file(unbalanced, "Lemma q : f (x.\nProof.\nmove=> h.\n");
    CHECK(run_cli({"hint", "--corpus", corpus, "--query", unbalanced}).code == cli::kExitParse);
    CHECK(run_cli({"hint", "--corpus", corpus, "--query", "/nonexistent.v"}).code == cli::kExitIo);

    // a query that shares its name with a corpus lemma is kept apart
    std::string same = temp_path("same_name.v");
    write_file(same, "Lemma nilpotent_unit n :\n  forall (M : 'M_n) (m : nat), M ^+ m = 0 -> (1 - M) \\in unitmx.\n"
                     "Proof.\nmove => M m nilpotent.\nrewrite unitmxE det_ubtriangular expr1n.\ncase : n.\n"
                     "by rewrite !det_mx00.\n");
    auto s = run_cli({"--granularity", "4", "--runs", "20", "hint", "--corpus", corpus, "--query", same});
    CHECK(s.code == 0);
    CHECK(contains(s.out, "  nilpotent_unit  [mx]"));
}
