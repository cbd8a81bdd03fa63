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

#ifndef PROOFMINE_SCRIPT_PARSER_HPP
#define PROOFMINE_SCRIPT_PARSER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "proofmine/term_tree.hpp"

namespace proofmine {

enum class ArgumentKind {
    Hypothesis,
    ExternalLemma,
    InductiveHypothesis,
    NumericConstant,
    TermExpr,
    Wildcard,
    IntroPattern,
};

std::string_view to_string(ArgumentKind kind);
std::optional<ArgumentKind> argument_kind_from_string(std::string_view s);

struct ArgumentToken {
    std::string text;  // with rewrite flags and selectors removed
    ArgumentKind kind = ArgumentKind::TermExpr;

    bool operator==(const ArgumentToken&) const = default;
};

struct TacticApplication {
    std::string name;
    std::vector<ArgumentToken> arguments;

    bool operator==(const TacticApplication&) const = default;
};

struct ProofStep {
    int index = 0;  // 1-based
    std::vector<TacticApplication> tactics;
    std::optional<TermTree> goal_before;
    std::optional<int> subgoals_after;
    // Rewrite flags and selectors stripped from arguments ("-", "!", "{2}",
    // "[_ * a]", "/"), in source order.
    std::vector<std::string> flags;
    std::string text;  // the command line, without its terminating '.'
    int line = 0;

    bool operator==(const ProofStep&) const = default;
};

struct SourceSpan {
    std::string file;
    int first_line = 0;
    int last_line = 0;

    bool operator==(const SourceSpan&) const = default;
};

struct LemmaRecord {
    std::string name;
    TermTree statement;
    std::vector<ProofStep> steps;
    std::string library;
    SourceSpan source_span;
    // Names bound before the statement colon ('Lemma foo n a : ...'). They are
    // in scope from the first step and classify as Hypothesis.
    std::vector<std::string> parameters;

    bool operator==(const LemmaRecord&) const = default;
};

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Sentences

struct Sentence {
    std::string text;  // raw, without the terminating '.'
    int first_line = 1;
    int last_line = 1;
    bool terminated = true;  // false for trailing text at EOF with no '.'
};

// Splits on '.' followed by whitespace or end of input. Comments, string
// literals and qualified names ('Finite.axiom') never terminate a sentence.
// 'Proof.' terminates even when directly followed by a tactic ('Proof.by').
std::vector<Sentence> split_sentences(std::string_view source);

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Parsing

struct ParseOptions {
    std::string file;  // used in spans and error messages
    // Accept a final proof with no 'Qed.' and an unterminated last command
    // line (partial proofs submitted as hint queries).
    bool lenient = false;
};

// Errors: UnterminatedProof, MalformedStatement, DuplicateLemmaName, EmptyStep,
// and statement errors from parse_term_tree, all tagged with file:line.
std::vector<LemmaRecord> parse_library(std::string_view source, std::string_view library_tag,
                                       const ParseOptions& options = {});

// One step per '.'-terminated command line of 'proof_body' (which excludes the
// 'Proof.'/'Qed.' sentinels). Arguments are classified with an empty scope.
std::vector<ProofStep> split_steps(std::string_view proof_body);

// Reclassifies every argument of 'lemma' in a single forward pass, as
// 'classify_argument' would token by token.
void classify_arguments(LemmaRecord& lemma);

// Classifies 'token' as if it were an argument of the tactic at
// 'tactic_position' (0-based) of step 'step_index' (1-based) in 'lemma'. Only
// introductions that happen before that tactic are in scope. 'intro' marks a
// token that sits inside an intro pattern.
ArgumentToken classify_argument(std::string_view token, const LemmaRecord& lemma, int step_index,
                                int tactic_position = 0, bool intro = false);

// The whitelisted tactic vocabulary; anything else parses as an opaque tactic.
bool is_known_tactic(std::string_view name);

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Traces ("proofmine trace v1", JSON Lines)

// Each line is an object with 'lemma', 'library', 'step_index', 'tactic_line',
// 'goal_before' and 'subgoals_after'. Records of one lemma may be interleaved
// with others; step indices must form 1..k. The 'library_tag' argument
// overrides the per-record library field.
std::vector<LemmaRecord> parse_trace(std::string_view source, std::string_view library_tag,
                                     const ParseOptions& options = {});

}  // namespace proofmine

#endif
