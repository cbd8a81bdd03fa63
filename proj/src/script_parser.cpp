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

#include "proofmine/script_parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <set>

#include <json.hpp>

#include "proofmine/error.hpp"
#include "proofmine/text.hpp"

namespace proofmine {

std::string_view to_string(ArgumentKind kind) {
    switch (kind) {
    case ArgumentKind::Hypothesis:          return "Hypothesis";
    case ArgumentKind::ExternalLemma:       return "ExternalLemma";
    case ArgumentKind::InductiveHypothesis: return "InductiveHypothesis";
    case ArgumentKind::NumericConstant:     return "NumericConstant";
    case ArgumentKind::TermExpr:            return "TermExpr";
    case ArgumentKind::Wildcard:            return "Wildcard";
    case ArgumentKind::IntroPattern:        return "IntroPattern";
    }
    return "TermExpr";
}

std::optional<ArgumentKind> argument_kind_from_string(std::string_view s) {
    for (ArgumentKind k : {ArgumentKind::Hypothesis, ArgumentKind::ExternalLemma, ArgumentKind::InductiveHypothesis,
                           ArgumentKind::NumericConstant, ArgumentKind::TermExpr, ArgumentKind::Wildcard,
                           ArgumentKind::IntroPattern})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

namespace {

constexpr std::array<std::string_view, 19> kTacticWhitelist = {
    "move", "case", "elim", "apply", "rewrite", "exists", "exact", "intro", "intros", "split",
    "by", "unfold", "induction", "destruct", "simpl", "trivial", "tauto", "contradiction", "auto"};

constexpr std::array<std::string_view, 4> kLemmaKeywords = {"Lemma", "Theorem", "Corollary", "Fact"};
constexpr std::array<std::string_view, 3> kProofEnders = {"Qed", "Defined", "Admitted"};

// Vernacular that may sit inside a proof without ending it.
constexpr std::array<std::string_view, 9> kQueryCommands = {
    "Check", "Print", "Eval", "Compute", "Search", "SearchAbout", "SearchPattern", "SearchRewrite", "Show"};

constexpr std::array<std::string_view, 46> kVernacular = {
    "Require", "Import", "Export", "From", "Definition", "Fixpoint", "CoFixpoint", "Inductive",
    "CoInductive", "Record", "Structure", "Section", "End", "Variable", "Variables", "Hypothesis",
    "Hypotheses", "Context", "Let", "Notation", "Infix", "Local", "Global", "Set", "Unset", "Open",
    "Close", "Module", "Arguments", "Implicit", "Canonical", "Coercion", "Instance", "Class",
    "Existing", "Hint", "Ltac", "Axiom", "Axioms", "Parameter", "Parameters", "Conjecture", "Opaque",
    "Transparent", "Declare", "Reserved"};

template <std::size_t N>
bool contains(const std::array<std::string_view, N>& arr, std::string_view w) {
    return std::find(arr.begin(), arr.end(), w) != arr.end();
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    return scan_identifier(s, 0) == s.size();
}

bool is_all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool is_wildcard(std::string_view s) {
    return s == "_" || s == "//" || s == "/=" || s == "//=" || s == "[]" || s == "?" || s == "*";
}

bool is_induction_tactic(std::string_view name) { return name == "elim" || name == "induction"; }

bool is_intro_tactic(std::string_view name) { return name == "intro" || name == "intros"; }

// First word of a sentence after leading comments.
std::string first_word(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
        if (text[i] == '(' && i + 1 < text.size() && text[i + 1] == '*') { i = skip_comment(text, i); continue; }
        break;
    }
    if (i >= text.size() || !is_ident_start(text[i])) return {};
    std::size_t j = i;
    while (j < text.size() && is_ident_char(text[j])) ++j;
    return std::string(text.substr(i, j - i));
}

std::string drop_comments(std::string_view s) {
    std::string out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '(' && i + 1 < s.size() && s[i + 1] == '*') {
            i = skip_comment(s, i);
            out += ' ';
        } else if (s[i] == '"') {
            std::size_t j = skip_string(s, i);
            out.append(s.substr(i, j - i));
            i = j;
        } else {
            out += s[i++];
        }
    }
    return out;
}

bool is_open(char c) { return c == '(' || c == '[' || c == '{'; }
bool is_close(char c) { return c == ')' || c == ']' || c == '}'; }

// Index of the bracket matching the opener at 'pos', or npos.
std::size_t matching_close(std::string_view s, std::size_t pos) {
    int depth = 0;
    for (std::size_t i = pos; i < s.size(); ++i) {
        if (is_open(s[i])) ++depth;
        else if (is_close(s[i]) && --depth == 0) return i;
    }
    return std::string_view::npos;
}

// Splits at depth-0 occurrences of 'sep'; brackets and strings are opaque.
std::vector<std::string> split_top_level(std::string_view s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '"') { i = skip_string(s, i) - 1; continue; }
        if (is_open(c)) ++depth;
        else if (is_close(c)) depth = std::max(0, depth - 1);
        else if (c == sep && depth == 0) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.emplace_back(s.substr(start));
    return parts;
}

// Whitespace-separated tokens with balanced brackets kept whole.
std::vector<std::string> balanced_tokens(std::string_view s, std::string_view extra_separators = {}) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool sep = std::isspace(static_cast<unsigned char>(c)) || extra_separators.find(c) != std::string_view::npos;
        if (depth == 0 && sep) {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
            continue;
        }
        if (is_open(c)) ++depth;
        else if (is_close(c)) depth = std::max(0, depth - 1);
        cur += c;
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Argument lexing

// Removes rewrite flags and selectors from the front of 'tok', appending each
// to 'flags'. Returns what is left.
std::string strip_flags(std::string tok, std::vector<std::string>& flags) {
    for (;;) {
        if (tok.size() > 1 && (tok[0] == '{' || tok[0] == '[')) {
            std::size_t close = matching_close(tok, 0);
            if (close != std::string::npos && close + 1 < tok.size()) {
                flags.push_back(tok.substr(0, close + 1));
                tok.erase(0, close + 1);
                continue;
            }
        }
        if (tok.size() > 1 && (tok[0] == '-' || tok[0] == '!' || tok[0] == '?')) {
            flags.push_back(tok.substr(0, 1));
            tok.erase(0, 1);
            continue;
        }
        if (tok.size() > 1 && std::isdigit(static_cast<unsigned char>(tok[0]))) {
            std::size_t j = 0;
            while (j < tok.size() && std::isdigit(static_cast<unsigned char>(tok[j]))) ++j;
            if (j < tok.size() && (tok[j] == '!' || tok[j] == '?')) {
                flags.push_back(tok.substr(0, j + 1));
                tok.erase(0, j + 1);
                continue;
            }
        }
        if (tok.size() > 1 && tok[0] == '/' && is_ident_start(tok[1])) {
            flags.push_back("/");
            tok.erase(0, 1);
            continue;
        }
        return tok;
    }
}

void expand_intro_brackets(const std::string& tok, std::vector<std::string>& out) {
    if (tok.size() >= 2 && tok.front() == '[' && tok.back() == ']' && matching_close(tok, 0) == tok.size() - 1) {
        std::string_view inner = trim(std::string_view(tok).substr(1, tok.size() - 2));
        if (inner.empty()) {
            out.push_back("[]");
            return;
        }
        for (const auto& sub : balanced_tokens(inner, "|")) expand_intro_brackets(sub, out);
        return;
    }
    out.push_back(tok);
}

struct Scope {
    std::map<std::string, bool, std::less<>> names;  // name -> introduced as inductive hypothesis
};

ArgumentKind classify_stripped(std::string_view text, bool intro, const Scope& scope) {
    if (is_wildcard(text)) return ArgumentKind::Wildcard;
    if (is_all_digits(text)) return ArgumentKind::NumericConstant;
    if (intro) return ArgumentKind::IntroPattern;
    if (!text.empty() && is_open(text[0])) return ArgumentKind::TermExpr;
    if (is_identifier(text)) {
        auto it = scope.names.find(text);
        if (it == scope.names.end()) return ArgumentKind::ExternalLemma;
        return it->second ? ArgumentKind::InductiveHypothesis : ArgumentKind::Hypothesis;
    }
    return ArgumentKind::TermExpr;
}

// Adds one lexed argument token, or nothing when it is a pure flag.
void push_argument(std::string tok, bool intro, TacticApplication& tac, std::vector<std::string>& flags) {
    if (!is_wildcard(tok)) {
        if (tok == "->" || tok == "<-") {
            if (intro) tac.arguments.push_back({tok, ArgumentKind::IntroPattern});
            else flags.push_back(tok);
            return;
        }
        tok = strip_flags(std::move(tok), flags);
    }
    if (tok.empty()) return;
    // Kinds other than IntroPattern are provisional until classify_arguments.
    ArgumentKind kind = classify_stripped(tok, intro, Scope{});
    tac.arguments.push_back({std::move(tok), kind});
}

void lex_arguments(std::string_view rest, TacticApplication& tac, std::vector<std::string>& flags) {
    bool intro = is_intro_tactic(tac.name);
    for (std::string tok : balanced_tokens(rest)) {
        // peel ':' separators and '=>' switches glued to tokens ("elim:", "=>//")
        for (;;) {
            if (tok.rfind("=>", 0) == 0) {
                intro = true;
                tok.erase(0, 2);
                continue;
            }
            if (tok.size() >= 1 && tok[0] == ':' && (tok.size() == 1 || (tok[1] != '=' && tok[1] != ':'))) {
                tok.erase(0, 1);
                continue;
            }
            break;
        }
        if (tok.empty()) continue;
        std::size_t arrow = tok.find("=>");
        std::string after;
        if (arrow != std::string::npos && tok[0] != '(' && tok[0] != '[' && tok[0] != '{') {
            after = tok.substr(arrow + 2);
            tok.erase(arrow);
        }
        if (!intro && (tok == "in" || tok == "at" || tok == "with" || tok == "using")) continue;
        if (tok == "as") {
            intro = true;
            continue;
        }
        if (!tok.empty()) {
            if (intro) {
                std::vector<std::string> parts;
                expand_intro_brackets(tok, parts);
                for (auto& p : parts) push_argument(std::move(p), true, tac, flags);
            } else {
                push_argument(std::move(tok), false, tac, flags);
            }
        }
        if (arrow != std::string::npos && tok.size() == arrow) {
            intro = true;
            if (!after.empty()) {
                std::vector<std::string> parts;
                expand_intro_brackets(after, parts);
                for (auto& p : parts) push_argument(std::move(p), true, tac, flags);
            }
        }
    }
}

// Tacticals that wrap the tactic after them. Like 'by' they are recorded as
// their own tactic name.
bool is_prefix_tactical(std::string_view w) {
    return w == "by" || w == "first" || w == "last" || w == "try" || w == "repeat" || w == "do";
}

void parse_piece(std::string_view piece, ProofStep& step) {
    while (!piece.empty()) {
        if (!is_ident_start(piece[0])) {
            if (!step.tactics.empty()) {
                lex_arguments(piece, step.tactics.back(), step.flags);
            } else {
                TacticApplication tac{"_", {}};
                lex_arguments(piece, tac, step.flags);
                step.tactics.push_back(std::move(tac));
            }
            return;
        }
        std::size_t j = 0;
        while (j < piece.size() && is_ident_char(piece[j])) ++j;
        std::string name(piece.substr(0, j));
        piece = trim(piece.substr(j));
        if (!is_prefix_tactical(name)) {
            TacticApplication tac{std::move(name), {}};
            lex_arguments(piece, tac, step.flags);
            step.tactics.push_back(std::move(tac));
            return;
        }
        TacticApplication tac{name, {}};
        if (name == "do") {
            // repeat count: "do 2!", "do !", "do ?"
            std::size_t k = 0;
            while (k < piece.size() && (std::isdigit(static_cast<unsigned char>(piece[k])) || piece[k] == '!' || piece[k] == '?')) ++k;
            if (k > 0) {
                std::string count(piece.substr(0, k));
                while (!count.empty() && !std::isdigit(static_cast<unsigned char>(count.back()))) count.pop_back();
                if (!count.empty()) tac.arguments.push_back({count, ArgumentKind::NumericConstant});
                piece = trim(piece.substr(k));
            }
        }
        step.tactics.push_back(std::move(tac));
    }
}

// Parses one '.'-terminated command line. Throws EmptyStep when nothing is left.
ProofStep parse_step(std::string_view sentence, int index, int line, const std::string& file) {
    ProofStep step;
    step.index = index;
    step.line = line;
    step.text = std::string(trim(sentence));

    std::string body = drop_comments(sentence);
    std::string_view view = trim(body);
    // bullets and focusing braces
    while (!view.empty() && (view[0] == '-' || view[0] == '+' || view[0] == '*' || view[0] == '{' || view[0] == '}')) {
        view.remove_prefix(1);
        view = trim(view);
    }
    if (view.empty()) throw Error(ErrorKind::EmptyStep, "proof step has no tokens", file, line);

    for (const std::string& raw_piece : split_top_level(view, ';')) parse_piece(trim(raw_piece), step);
    if (step.tactics.empty()) throw Error(ErrorKind::EmptyStep, "proof step has no tactics", file, line);
    return step;
}

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Scope walk shared by classify_arguments and classify_argument

class ScopeWalker {
public:
    explicit ScopeWalker(const std::vector<std::string>& parameters) {
        for (const auto& p : parameters) scope_.names[p] = false;
    }

    const Scope& scope() const { return scope_; }

    // Classifies the non-intro arguments of 'tac' in place and then records
    // the names it introduces.
    void visit(TacticApplication& tac) {
        std::vector<std::string> introduced;
        for (ArgumentToken& arg : tac.arguments) {
            if (arg.kind == ArgumentKind::IntroPattern) {
                if (is_identifier(arg.text)) introduced.push_back(arg.text);
            } else {
                arg.kind = classify_stripped(arg.text, false, scope_);
            }
        }
        if (tac.name == "by") return;
        bool ih_context = is_induction_tactic(tac.name) || pending_ih_;
        for (auto& name : introduced) scope_.names[name] = ih_context;
        pending_ih_ = is_induction_tactic(tac.name) && introduced.empty();
    }

private:
    Scope scope_;
    bool pending_ih_ = false;
};

std::string header_error_context(std::string_view kw) { return "in " + std::string(kw) + " statement"; }

struct Header {
    std::string name;
    std::vector<std::string> parameters;
    std::string statement_text;
};

std::vector<std::string> binder_names(std::string_view binders) {
    std::vector<std::string> names;
    std::size_t i = 0;
    while (i < binders.size()) {
        char c = binders[i];
        if (is_open(c)) {
            std::size_t close = matching_close(binders, i);
            if (close == std::string_view::npos) close = binders.size();
            std::string_view group = binders.substr(i + 1, close - i - 1);
            std::size_t colon = group.find(':');
            std::string_view lhs = colon == std::string_view::npos ? group : group.substr(0, colon);
            for (const auto& tok : balanced_tokens(lhs))
                if (is_identifier(tok)) names.push_back(tok);
            i = close + 1;
        } else if (is_ident_start(c)) {
            std::size_t j = scan_identifier(binders, i);
            names.emplace_back(binders.substr(i, j - i));
            i = j;
        } else {
            ++i;
        }
    }
    return names;
}

Header parse_header(std::string_view sentence, std::string_view keyword, const std::string& file, int line) {
    std::string text = drop_comments(sentence);
    std::string_view s = trim(text);
    s.remove_prefix(keyword.size());
    s = trim(s);
    if (s.empty() || !is_ident_start(s[0]))
        throw Error(ErrorKind::MalformedStatement, "missing lemma name " + header_error_context(keyword), file, line);
    std::size_t j = scan_identifier(s, 0);
    Header h;
    h.name = std::string(s.substr(0, j));
    std::string_view rest = s.substr(j);

    int depth = 0;
    std::size_t colon = std::string_view::npos;
    for (std::size_t i = 0; i < rest.size(); ++i) {
        char c = rest[i];
        if (is_open(c)) ++depth;
        else if (is_close(c)) --depth;
        else if (c == ':' && depth == 0) {
            char next = i + 1 < rest.size() ? rest[i + 1] : '\0';
            char prev = i > 0 ? rest[i - 1] : '\0';
            if (next == '=' || next == ':' || prev == ':') continue;
            colon = i;
            break;
        }
    }
    if (colon == std::string_view::npos)
        throw Error(ErrorKind::MalformedStatement, "no ':' after lemma name '" + h.name + "'", file, line);
    h.parameters = binder_names(rest.substr(0, colon));
    h.statement_text = std::string(rest.substr(colon + 1));
    return h;
}

std::vector<int> line_starts(std::string_view s) {
    std::vector<int> starts{0};
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '\n') starts.push_back(static_cast<int>(i + 1));
    return starts;
}

int line_of(const std::vector<int>& starts, std::size_t offset) {
    auto it = std::upper_bound(starts.begin(), starts.end(), static_cast<int>(offset));
    return static_cast<int>(it - starts.begin());
}

bool is_blank_sentence(const Sentence& s) { return strip_comments_and_space(s.text).empty(); }

}  // namespace

bool is_known_tactic(std::string_view name) { return contains(kTacticWhitelist, name); }

std::vector<Sentence> split_sentences(std::string_view source) {
    std::vector<Sentence> out;
    const std::vector<int> starts = line_starts(source);
    std::size_t start = 0;
    std::size_t i = 0;
    const std::size_t n = source.size();

    auto first_content = [&](std::size_t from, std::size_t to) {
        std::size_t k = from;
        while (k < to) {
            if (std::isspace(static_cast<unsigned char>(source[k]))) { ++k; continue; }
            if (source[k] == '(' && k + 1 < to && source[k + 1] == '*') { k = skip_comment(source, k); continue; }
            break;
        }
        return std::min(k, to);
    };
    auto emit = [&](std::size_t end, bool terminated) {
        Sentence s;
        s.text = std::string(source.substr(start, end - start));
        s.first_line = line_of(starts, first_content(start, end));
        s.last_line = line_of(starts, end == 0 ? 0 : end - (terminated ? 0 : 1));
        s.terminated = terminated;
        out.push_back(std::move(s));
    };

    while (i < n) {
        char c = source[i];
        if (c == '(' && i + 1 < n && source[i + 1] == '*') { i = skip_comment(source, i); continue; }
        if (c == '"') { i = skip_string(source, i); continue; }
        if (c == '.') {
            bool at_end = i + 1 >= n;
            bool terminator = at_end || std::isspace(static_cast<unsigned char>(source[i + 1]));
            if (!terminator && strip_comments_and_space(source.substr(start, i - start)) == "Proof")
                terminator = true;
            if (terminator) {
                emit(i, true);
                start = i + 1;
            }
        }
        ++i;
    }
    if (start < n && !strip_comments_and_space(source.substr(start)).empty()) emit(n, false);
    return out;
}

std::vector<ProofStep> split_steps(std::string_view proof_body) {
    LemmaRecord scratch;
    int index = 0;
    for (const Sentence& s : split_sentences(proof_body)) {
        if (is_blank_sentence(s)) throw Error(ErrorKind::EmptyStep, "empty command line", {}, s.first_line);
        scratch.steps.push_back(parse_step(s.text, ++index, s.first_line, {}));
    }
    classify_arguments(scratch);
    return std::move(scratch.steps);
}

void classify_arguments(LemmaRecord& lemma) {
    ScopeWalker walker(lemma.parameters);
    for (ProofStep& step : lemma.steps)
        for (TacticApplication& tac : step.tactics) walker.visit(tac);
}

ArgumentToken classify_argument(std::string_view token, const LemmaRecord& lemma, int step_index, int tactic_position,
                                bool intro) {
    ScopeWalker walker(lemma.parameters);
    for (const ProofStep& step : lemma.steps) {
        if (step.index > step_index) break;
        for (std::size_t t = 0; t < step.tactics.size(); ++t) {
            if (step.index == step_index && static_cast<int>(t) >= tactic_position) break;
            TacticApplication copy = step.tactics[t];
            walker.visit(copy);
        }
    }
    std::string tok(token);
    std::vector<std::string> flags;
    if (!is_wildcard(tok) && !(intro && (tok == "->" || tok == "<-"))) tok = strip_flags(std::move(tok), flags);
    if (tok.empty()) return {std::string(token), ArgumentKind::TermExpr};
    ArgumentKind kind = classify_stripped(tok, intro, walker.scope());
    return {std::move(tok), kind};
}

std::vector<LemmaRecord> parse_library(std::string_view source, std::string_view library_tag,
                                       const ParseOptions& options) {
    const std::string& file = options.file;
    std::vector<Sentence> sentences = split_sentences(source);
    std::vector<LemmaRecord> out;
    std::set<std::string, std::less<>> seen;

    std::size_t idx = 0;
    const std::size_t count = sentences.size();
    while (idx < count) {
        const Sentence& head_sentence = sentences[idx];
        std::string keyword = first_word(head_sentence.text);
        if (!contains(kLemmaKeywords, keyword)) {
            ++idx;
            continue;
        }
        if (!head_sentence.terminated && !options.lenient)
            throw Error(ErrorKind::MalformedStatement, "statement is not terminated by '.'", file,
                        head_sentence.first_line);
        Header header = parse_header(head_sentence.text, keyword, file, head_sentence.first_line);
        LemmaRecord rec;
        rec.name = header.name;
        rec.library = std::string(library_tag);
        rec.parameters = std::move(header.parameters);
        rec.source_span = {file, head_sentence.first_line, head_sentence.last_line};
        try {
            rec.statement = parse_term_tree(header.statement_text);
        } catch (const Error& e) {
            throw Error(e.kind(), e.message() + " (statement of '" + rec.name + "')", file, head_sentence.first_line);
        }
        ++idx;

        bool has_body = false;
        if (idx < count && first_word(sentences[idx].text) == "Proof") {
            has_body = true;
            ++idx;
        } else if (idx < count && !is_blank_sentence(sentences[idx])) {
            std::string w = first_word(sentences[idx].text);
            has_body = !contains(kLemmaKeywords, w) && !contains(kVernacular, w) && !contains(kProofEnders, w);
        }
        if (!has_body) continue;

        bool closed = false;
        int step_index = 0;
        while (idx < count) {
            const Sentence& s = sentences[idx];
            std::string w = first_word(s.text);
            if (contains(kProofEnders, w)) {
                rec.source_span.last_line = s.last_line;
                ++idx;
                closed = true;
                break;
            }
            if (contains(kLemmaKeywords, w) || contains(kVernacular, w)) break;
            if (contains(kQueryCommands, w)) {
                ++idx;
                continue;
            }
            if (is_blank_sentence(s)) throw Error(ErrorKind::EmptyStep, "empty command line", file, s.first_line);
            if (!s.terminated && !options.lenient)
                throw Error(ErrorKind::UnterminatedProof, "command line without terminating '.' at end of input",
                            file, s.first_line);
            rec.steps.push_back(parse_step(s.text, ++step_index, s.first_line, file));
            rec.source_span.last_line = s.last_line;
            ++idx;
        }
        if (!closed && !options.lenient)
            throw Error(ErrorKind::UnterminatedProof, "proof of '" + rec.name + "' has no Qed.", file,
                        rec.source_span.first_line);
        if (seen.count(rec.name))
            throw Error(ErrorKind::DuplicateLemmaName, "lemma '" + rec.name + "' defined twice", file,
                        rec.source_span.first_line);
        seen.insert(rec.name);
        if (!rec.steps.empty()) rec.steps.front().goal_before = rec.statement;
        classify_arguments(rec);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<LemmaRecord> parse_trace(std::string_view source, std::string_view library_tag,
                                     const ParseOptions& options) {
    using nlohmann::json;
    const std::string& file = options.file;
    std::vector<LemmaRecord> out;
    std::map<std::string, std::size_t, std::less<>> by_name;
    std::map<std::string, std::map<int, int>, std::less<>> step_lines;  // lemma -> step index -> line

    auto fail = [&](int line, const std::string& msg) -> Error {
        return Error(ErrorKind::MalformedTrace, msg, file, line);
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= source.size()) {
        std::size_t nl = source.find('\n', pos);
        if (nl == std::string_view::npos) nl = source.size();
        std::string_view raw = trim(source.substr(pos, nl - pos));
        ++line_no;
        pos = nl + 1;
        if (raw.empty()) continue;

        json rec = json::parse(raw, nullptr, false);
        if (rec.is_discarded() || !rec.is_object()) throw fail(line_no, "record is not a JSON object");
        for (const char* key : {"lemma", "library", "tactic_line", "goal_before"})
            if (!rec.contains(key) || !rec[key].is_string())
                throw fail(line_no, std::string("field '") + key + "' missing or not a string");
        for (const char* key : {"step_index", "subgoals_after"})
            if (!rec.contains(key) || !rec[key].is_number_integer())
                throw fail(line_no, std::string("field '") + key + "' missing or not an integer");

        std::string name = rec["lemma"].get<std::string>();
        int step_index = rec["step_index"].get<int>();
        int subgoals = rec["subgoals_after"].get<int>();
        if (name.empty()) throw fail(line_no, "empty lemma name");
        if (step_index < 1) throw fail(line_no, "step_index must be >= 1");
        if (subgoals < 0) throw fail(line_no, "subgoals_after must be >= 0");

        std::string tactic_line = rec["tactic_line"].get<std::string>();
        std::string_view tl = trim(tactic_line);
        std::string sentence_src(tl);
        if (sentence_src.empty() || sentence_src.back() != '.') sentence_src += '.';
        std::vector<Sentence> sentences = split_sentences(sentence_src);
        if (sentences.size() != 1 || is_blank_sentence(sentences[0]))
            throw fail(line_no, "tactic_line must hold exactly one command line");

        ProofStep step = parse_step(sentences[0].text, step_index, line_no, file);
        try {
            step.goal_before = parse_term_tree(rec["goal_before"].get<std::string>());
        } catch (const Error& e) {
            throw fail(line_no, "goal_before: " + e.message());
        }
        step.subgoals_after = subgoals;

        auto it = by_name.find(name);
        if (it == by_name.end()) {
            LemmaRecord fresh;
            fresh.name = name;
            fresh.library = std::string(library_tag.empty() ? rec["library"].get<std::string>() : library_tag);
            fresh.source_span = {file, line_no, line_no};
            it = by_name.emplace(name, out.size()).first;
            out.push_back(std::move(fresh));
        }
        if (!step_lines[name].emplace(step_index, line_no).second)
            throw fail(line_no, "step " + std::to_string(step_index) + " of '" + name + "' appears twice");
        LemmaRecord& lemma = out[it->second];
        lemma.source_span.last_line = line_no;
        lemma.steps.push_back(std::move(step));
    }

    for (LemmaRecord& lemma : out) {
        std::sort(lemma.steps.begin(), lemma.steps.end(),
                  [](const ProofStep& a, const ProofStep& b) { return a.index < b.index; });
        for (std::size_t i = 0; i < lemma.steps.size(); ++i)
            if (lemma.steps[i].index != static_cast<int>(i + 1))
                throw fail(lemma.source_span.first_line, "steps of '" + lemma.name + "' are not numbered 1.." +
                                                             std::to_string(lemma.steps.size()));
        lemma.statement = *lemma.steps.front().goal_before;
        classify_arguments(lemma);
    }
    return out;
}

}  // namespace proofmine
