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

#include <string>
#include <vector>

#include "proofmine/error.hpp"
#include "proofmine/script_parser.hpp"
#include "proofmine/text.hpp"
#include "support.hpp"

using namespace proofmine;
using proofmine::testing::fixture_path;

namespace {

std::vector<std::string> names_of(const ProofStep& step) {
    std::vector<std::string> out;
    for (const auto& t : step.tactics) out.push_back(t.name);
    return out;
}

ErrorKind library_error(const std::string& src, bool lenient = false) {
    try {
        parse_library(src, "t", ParseOptions{"t.v", lenient});
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error for: " << src);
    return ErrorKind::Io;
}

// Counts ';' outside brackets, comments and strings: the independent oracle
// for how many tactics a command line composes.
std::size_t top_level_semicolons(const std::string& s) {
    int depth = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(' && i + 1 < s.size() && s[i + 1] == '*') {
            i = skip_comment(s, i) - 1;
        } else if (c == '(' || c == '[' || c == '{') {
            ++depth;
        } else if (c == ')' || c == ']' || c == '}') {
            --depth;
        } else if (c == ';' && depth == 0) {
            ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("andbb parses to one step closed by case") {
    auto lemmas = parse_library("Lemma andbb : idempotent andb.\nProof. by case. Qed.\n", "ssr");
    REQUIRE(lemmas.size() == 1);
    const LemmaRecord& l = lemmas[0];
    CHECK(l.name == "andbb");
    CHECK(l.library == "ssr");
    REQUIRE(l.steps.size() == 1);
    CHECK(names_of(l.steps[0]) == std::vector<std::string>{"by", "case"});
    CHECK(l.statement.symbol == "idempotent");
    REQUIRE(l.steps[0].goal_before.has_value());
    CHECK(*l.steps[0].goal_before == l.statement);
    CHECK(!l.steps[0].subgoals_after.has_value());
}

TEST_CASE("empty source") {
    CHECK(parse_library("", "t").empty());
    CHECK(parse_library("(* nothing here *)\n", "t").empty());
}

TEST_CASE("maxn_mulr and minn_mulr have the same step counts") {
    auto lemmas = parse_library(read_file(fixture_path("listings/related_functions.v")), "ssr");
    REQUIRE(lemmas.size() >= 2);
    CHECK(lemmas[0].name == "maxn_mulr");
    CHECK(lemmas[1].name == "minn_mulr");
    CHECK(lemmas[0].steps.size() == lemmas[1].steps.size());
    CHECK(names_of(lemmas[0].steps[0]) == names_of(lemmas[1].steps[0]));
}

TEST_CASE("split_steps examples") {
    auto a = split_steps("move => M m nilpotent.");
    REQUIRE(a.size() == 1);
    CHECK(names_of(a[0]) == std::vector<std::string>{"move"});
    REQUIRE(a[0].tactics[0].arguments.size() == 3);
    for (const auto& arg : a[0].tactics[0].arguments) CHECK(arg.kind == ArgumentKind::IntroPattern);
    CHECK(a[0].tactics[0].arguments[2].text == "nilpotent");

    auto b = split_steps("by rewrite big_distrr mulmxBr mul1mx.");
    REQUIRE(b.size() == 1);
    CHECK(names_of(b[0]) == std::vector<std::string>{"by", "rewrite"});
    CHECK(b[0].tactics[1].arguments.size() == 3);

    std::string line = "rewrite A; elim: s => //= x.";
    auto c = split_steps(line);
    REQUIRE(c.size() == 1);
    CHECK(c[0].tactics.size() == top_level_semicolons(line) + 1);
    CHECK(names_of(c[0]) == std::vector<std::string>{"rewrite", "elim"});

    auto d = split_steps("move=> x.\n  rewrite (addnC x) [_ + _]addnC; simpl.\n  by [].");
    REQUIRE(d.size() == 3);
    CHECK(d[0].index == 1);
    CHECK(d[2].index == 3);
    CHECK(d[1].line == 2);
}

TEST_CASE("semicolon count matches the tokenizer oracle") {
    for (std::string line : {"a; b; c.", "rewrite (f; g) h.", "by elim: s n0 => [|x s IHs] [|n] //=; rewrite IHs.",
                             "case: x => [a|b]; done.", "move=> x (* ; *) y."}) {
        auto steps = split_steps(line);
        REQUIRE(steps.size() == 1);
        std::size_t by = 0;
        for (const auto& t : steps[0].tactics)
            if (t.name == "by") ++by;
        CAPTURE(line);
        CHECK(steps[0].tactics.size() - by == top_level_semicolons(line) + 1);
    }
}

TEST_CASE("a branch block attaches to the tactic before it") {
    auto steps = split_steps("case: x => [a|b]; [apply: a | apply: b]; done.");
    REQUIRE(steps.size() == 1);
    CHECK(names_of(steps[0]) == std::vector<std::string>{"case", "done"});
}

TEST_CASE("EmptyStep") {
    try {
        split_steps("move=> x. . done.");
        FAIL("expected EmptyStep");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyStep);
    }
}

TEST_CASE("classification examples") {
    auto steps = split_steps("elim: m1 => //= m1 IHm.\nrewrite IHm -!addnA (addnC n) _ 2.");
    LemmaRecord l;
    l.name = "demo";
    l.steps = steps;
    classify_arguments(l);
    const auto& args = l.steps[1].tactics[0].arguments;
    REQUIRE(args.size() == 5);
    CHECK(args[0].text == "IHm");
    CHECK(args[0].kind == ArgumentKind::InductiveHypothesis);
    CHECK(args[1].text == "addnA");
    CHECK(args[1].kind == ArgumentKind::ExternalLemma);
    CHECK(args[2].kind == ArgumentKind::TermExpr);
    CHECK(args[3].kind == ArgumentKind::Wildcard);
    CHECK(args[4].kind == ArgumentKind::NumericConstant);
    CHECK(l.steps[1].flags == std::vector<std::string>{"-", "!"});

    CHECK(classify_argument("IHm", l, 2).kind == ArgumentKind::InductiveHypothesis);
    // before the elim nothing is in scope
    CHECK(classify_argument("IHm", l, 1).kind == ArgumentKind::ExternalLemma);
    CHECK(classify_argument("_", l, 1).kind == ArgumentKind::Wildcard);
    CHECK(classify_argument("//=", l, 1).kind == ArgumentKind::Wildcard);
    CHECK(classify_argument("/=", l, 1).kind == ArgumentKind::Wildcard);
    CHECK(classify_argument("-!addnA", l, 2).kind == ArgumentKind::ExternalLemma);
    CHECK(classify_argument("-!addnA", l, 2).text == "addnA");
    CHECK(classify_argument("x", l, 1, 0, true).kind == ArgumentKind::IntroPattern);
}

TEST_CASE("hypotheses introduced by move and parameters") {
    auto lemmas = parse_library("Lemma foo n : P n.\nProof.\nmove=> h.\napply: h.\nexact: n.\nQed.\n", "t");
    REQUIRE(lemmas.size() == 1);
    const auto& s = lemmas[0].steps;
    REQUIRE(s.size() == 3);
    CHECK(s[1].tactics[0].arguments[0].kind == ArgumentKind::Hypothesis);
    CHECK(s[2].tactics[0].arguments[0].kind == ArgumentKind::Hypothesis);
    CHECK(lemmas[0].parameters == std::vector<std::string>{"n"});
}

TEST_CASE("classification is deterministic") {
    auto lemmas = parse_library(read_file(fixture_path("listings/induction_rewrite.v")), "t");
    for (const auto& l : lemmas)
        for (const auto& step : l.steps)
            for (std::size_t t = 0; t < step.tactics.size(); ++t)
                for (const auto& arg : step.tactics[t].arguments) {
                    auto a = classify_argument(arg.text, l, step.index, static_cast<int>(t));
                    auto b = classify_argument(arg.text, l, step.index, static_cast<int>(t));
                    CHECK(a == b);
                }
}

TEST_CASE("qualified names do not end a sentence") {
    auto s = split_sentences("apply: Finite.axiom. done.");
    REQUIRE(s.size() == 2);
    CHECK(s[0].text == "apply: Finite.axiom");
}

TEST_CASE("sentence splitting is reversible on every listing") {
    for (const auto& stem : proofmine::testing::listing_stems()) {
        std::string src = read_file(fixture_path("listings/" + stem + ".v"));
        std::string joined;
        for (const auto& s : split_sentences(src)) joined += s.text + (s.terminated ? ". " : " ");
        CAPTURE(stem);
        CHECK(strip_comments_and_space(joined) == strip_comments_and_space(src));
    }
}

TEST_CASE("parse errors") {
    CHECK(library_error("Lemma foo : x.\nProof. by [].\n") == ErrorKind::UnterminatedProof);
    CHECK(library_error("Lemma : x.\nProof. by []. Qed.\n") == ErrorKind::MalformedStatement);
    CHECK(library_error("Lemma a : x.\nProof. done. Qed.\nLemma a : y.\nProof. done. Qed.\n") ==
          ErrorKind::DuplicateLemmaName);
    CHECK(library_error("Lemma a : f (x.\nProof. done. Qed.\n") == ErrorKind::UnbalancedDelimiters);
    try {
        parse_library("\n\nLemma foo : x.\nProof. by [].\n", "t", ParseOptions{"lib.v", false});
    } catch (const Error& e) {
        CHECK(e.file() == "lib.v");
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("lib.v:3") != std::string::npos);
    }
}

TEST_CASE("lenient mode accepts an unfinished proof") {
    auto lemmas = parse_library("Lemma q : P.\nProof.\nmove=> x.\nrewrite x", "t", ParseOptions{"q.v", true});
    REQUIRE(lemmas.size() == 1);
    CHECK(lemmas[0].steps.size() == 2);
}

TEST_CASE("Defined and omitted Proof sentinel") {
    auto lemmas = parse_library("Lemma a : x.\nby []. Defined.\nTheorem b : y.\nProof. done. Qed.\n", "t");
    REQUIRE(lemmas.size() == 2);
    CHECK(lemmas[0].steps.size() == 1);
    CHECK(lemmas[1].name == "b");
}

TEST_CASE("known tactic whitelist") {
    for (const char* t : {"move", "case", "elim", "apply", "rewrite", "exists", "exact", "intro", "intros", "split",
                          "by", "unfold", "induction", "destruct", "simpl", "trivial", "tauto", "contradiction",
                          "auto"})
        CHECK(is_known_tactic(t));
    CHECK(!is_known_tactic("frobnicate"));
    auto steps = split_steps("frobnicate H 3.");
    CHECK(steps[0].tactics[0].name == "frobnicate");
    CHECK(steps[0].tactics[0].arguments.size() == 2);
}

TEST_CASE("trace records") {
    std::string trace =
        R"({"lemma":"t1","library":"tr","step_index":2,"tactic_line":"by rewrite IHn.","goal_before":"n + 0 = n","subgoals_after":0})"
        "\n"
        R"({"lemma":"t1","library":"tr","step_index":1,"tactic_line":"elim: n => [|n IHn]","goal_before":"forall n, n + 0 = n","subgoals_after":2})"
        "\n";
    auto lemmas = parse_trace(trace, "", ParseOptions{"x.jsonl", false});
    REQUIRE(lemmas.size() == 1);
    const auto& l = lemmas[0];
    CHECK(l.library == "tr");
    REQUIRE(l.steps.size() == 2);
    CHECK(l.steps[0].index == 1);
    CHECK(l.steps[0].subgoals_after == 2);
    CHECK(l.statement.symbol == "forall");
    CHECK(l.steps[1].tactics[1].arguments[0].kind == ArgumentKind::InductiveHypothesis);
    CHECK(parse_trace(trace, "override")[0].library == "override");

    auto bad = [](const std::string& src) {
        try {
            parse_trace(src, "t");
        } catch (const Error& e) {
            return e.kind() == ErrorKind::MalformedTrace && e.is_parse_error();
        }
        return false;
    };
    CHECK(bad("not json\n"));
    CHECK(bad(R"({"lemma":"a","library":"l","step_index":1,"tactic_line":"done."})"));
    CHECK(bad(R"({"lemma":"a","library":"l","step_index":2,"tactic_line":"done.","goal_before":"x","subgoals_after":0})"));
    CHECK(bad(R"({"lemma":"a","library":"l","step_index":1,"tactic_line":"done. done.","goal_before":"x","subgoals_after":0})"));
    CHECK(bad(R"({"lemma":"a","library":"l","step_index":1,"tactic_line":"done.","goal_before":"(x","subgoals_after":0})"));
}
