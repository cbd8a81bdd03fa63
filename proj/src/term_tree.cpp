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

#include "proofmine/term_tree.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "proofmine/error.hpp"
#include "proofmine/text.hpp"

namespace proofmine {

namespace {

enum class Tok { Ident, Number, Op, LParen, RParen, LBracket, LList, RBracket, LBrace, RBrace, Comma, Colon, Semi, End };

struct Token {
    Tok kind;
    std::string text;
};

constexpr std::string_view kOpChars = "+-*/\\<>=!&|^~@#$?.%`";

bool is_op_char(char c) { return kOpChars.find(c) != std::string_view::npos; }

constexpr std::array<std::string_view, 6> kBackslashOps = {"in", "notin", "subset", "proper", "is", "isn't"};

bool is_backslash_op_word(std::string_view w) {
    return std::find(kBackslashOps.begin(), kBackslashOps.end(), w) != kBackslashOps.end();
}

bool is_postfix_op(std::string_view op) { return !op.empty() && (op[0] == '`' || op[0] == '.'); }

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Lexer

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = s.size();
    auto at = [&](std::size_t k) -> char { return k < n ? s[k] : '\0'; };

    while (i < n) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c == '(' && at(i + 1) == '*') {
            i = skip_comment(s, i);
            continue;
        }
        switch (c) {
        case '(': out.push_back({Tok::LParen, "("}); ++i; continue;
        case ')': out.push_back({Tok::RParen, ")"}); ++i; continue;
        case '[':
            if (at(i + 1) == ':' && at(i + 2) == ':') { out.push_back({Tok::LList, "[::"}); i += 3; }
            else { out.push_back({Tok::LBracket, "["}); ++i; }
            continue;
        case ']': out.push_back({Tok::RBracket, "]"}); ++i; continue;
        case '{': out.push_back({Tok::LBrace, "{"}); ++i; continue;
        case '}': out.push_back({Tok::RBrace, "}"}); ++i; continue;
        case ',': out.push_back({Tok::Comma, ","}); ++i; continue;
        case ';': out.push_back({Tok::Semi, ";"}); ++i; continue;
        case ':':
            if (at(i + 1) == '=' || at(i + 1) == ':') {
                out.push_back({Tok::Op, std::string(s.substr(i, 2))});
                i += 2;
            } else {
                out.push_back({Tok::Colon, ":"});
                ++i;
            }
            continue;
        default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, std::string(s.substr(i, j - i))});
            i = j;
            continue;
        }
        if (c == '%' && is_ident_start(at(i + 1))) {
            // scope delimiter: dropped
            ++i;
            while (i < n && is_ident_char(s[i])) ++i;
            continue;
        }
        if (c == '\\' && std::isalpha(static_cast<unsigned char>(at(i + 1)))) {
            std::size_t j = i + 1;
            while (j < n && (is_ident_char(s[j]))) ++j;
            std::string word(s.substr(i, j - i));
            bool op = is_backslash_op_word(std::string_view(word).substr(1));
            out.push_back({op ? Tok::Op : Tok::Ident, std::move(word)});
            i = j;
            continue;
        }
        if (is_ident_start(c) || (c == '\'' && is_ident_start(at(i + 1)))) {
            std::size_t j = scan_identifier(s, i);
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i))});
            i = j;
            continue;
        }
        if (c == '.' && (at(i + 1) == '+' || at(i + 1) == '-' || at(i + 1) == '*') &&
            std::isdigit(static_cast<unsigned char>(at(i + 2)))) {
            std::size_t j = i + 2;
            while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Op, std::string(s.substr(i, j - i))});
            i = j;
            continue;
        }
        if (is_op_char(c)) {
            std::size_t j = i;
            while (j < n && is_op_char(s[j]) && !(s[j] == '%' && is_ident_start(at(j + 1)))) ++j;
            std::string op(s.substr(i, j - i));
            if (op == "*" && at(j) == 'm' && !is_ident_char(at(j + 1))) {
                op = "*m";
                ++j;
            }
            out.push_back({Tok::Op, std::move(op)});
            i = j;
            continue;
        }
        throw Error(ErrorKind::MalformedStatement, "unexpected character '" + std::string(1, c) + "' in term");
    }
    out.push_back({Tok::End, ""});
    return out;
}

void check_balanced(const std::vector<Token>& toks) {
    std::vector<Tok> stack;
    for (const Token& t : toks) {
        switch (t.kind) {
        case Tok::LParen: stack.push_back(Tok::RParen); break;
        case Tok::LBracket:
        case Tok::LList: stack.push_back(Tok::RBracket); break;
        case Tok::LBrace: stack.push_back(Tok::RBrace); break;
        case Tok::RParen:
        case Tok::RBracket:
        case Tok::RBrace:
            if (stack.empty() || stack.back() != t.kind)
                throw Error(ErrorKind::UnbalancedDelimiters, "unexpected '" + t.text + "'");
            stack.pop_back();
            break;
        default: break;
        }
    }
    if (!stack.empty()) throw Error(ErrorKind::UnbalancedDelimiters, "unclosed delimiter");
}

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Parser

constexpr int kArrowLevel = 1;
constexpr int kTightestBinary = 6;

int binary_level(std::string_view op) {
    if (op == "->" || op == "<->") return 1;
    if (op == "||" || op == "\\/") return 2;
    if (op == "&&" || op == "/\\") return 3;
    if (op == "=" || op == "==" || op == "!=" || op == "<>" || op == "<" || op == "<=" || op == ">" ||
        op == ">=" || op == "=i" || (op.size() > 1 && op[0] == '\\'))
        return 4;
    if (op == "+" || op == "-" || op == "++" || op == "::") return 5;
    return kTightestBinary;
}

TermTree leaf(std::string symbol) { return TermTree{std::move(symbol), {}}; }

TermTree node(std::string symbol, std::vector<TermTree> children) {
    return TermTree{std::move(symbol), std::move(children)};
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    TermTree parse_all() {
        TermTree t = expr();
        if (peek().kind != Tok::End)
            throw Error(ErrorKind::MalformedStatement, "unexpected '" + peek().text + "' after term");
        return t;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token take() { return toks_[pos_++]; }

    bool peek_op(std::string_view op) const { return peek().kind == Tok::Op && peek().text == op; }

    bool at_binder() const {
        return peek().kind == Tok::Ident && is_binder_symbol(peek().text);
    }

    void expect(Tok kind, std::string_view what) {
        if (peek().kind != kind)
            throw Error(ErrorKind::MalformedStatement,
                        "expected " + std::string(what) + ", found '" + peek().text + "'");
        ++pos_;
    }

    TermTree expr() {
        if (at_binder()) return binder();
        return binary(kArrowLevel);
    }

    bool binary_op_here(int level) const {
        if (peek().kind != Tok::Op) return false;
        const std::string& op = peek().text;
        if (is_postfix_op(op)) return false;
        if (op == "=>" && stop_at_fat_arrow_ > 0) return false;
        return binary_level(op) == level;
    }

    TermTree operand(int level) {
        if (at_binder()) return binder();
        return level > kTightestBinary ? unary() : binary(level);
    }

    TermTree binary(int level) {
        if (level > kTightestBinary) return unary();
        TermTree lhs = binary(level + 1);
        while (binary_op_here(level)) {
            std::string op = take().text;
            if (level == kArrowLevel) {
                TermTree rhs = operand(kArrowLevel);
                return node(std::move(op), {std::move(lhs), std::move(rhs)});
            }
            TermTree rhs = operand(level + 1);
            lhs = node(std::move(op), {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    TermTree unary() {
        if (peek().kind == Tok::Op && !is_postfix_op(peek().text)) {
            std::string op = take().text;
            TermTree child = at_binder() ? binder() : unary();
            return node(std::move(op), {std::move(child)});
        }
        return application();
    }

    bool starts_atom() const {
        switch (peek().kind) {
        case Tok::Ident: return !is_binder_symbol(peek().text);
        case Tok::Number:
        case Tok::LParen:
        case Tok::LBracket:
        case Tok::LList:
        case Tok::LBrace: return true;
        default: return false;
        }
    }

    TermTree application() {
        if (!starts_atom()) {
            if (at_binder()) return binder();
            throw Error(ErrorKind::MalformedStatement,
                        peek().kind == Tok::End ? "unexpected end of term"
                                                : "unexpected '" + peek().text + "'");
        }
        bool head_is_ident = peek().kind == Tok::Ident;
        TermTree head = postfixed();
        std::vector<TermTree> args;
        while (starts_atom()) args.push_back(postfixed());
        if (args.empty()) return head;
        if (head_is_ident && head.children.empty()) {
            head.children = std::move(args);
            return head;
        }
        args.insert(args.begin(), std::move(head));
        return node("@app", std::move(args));
    }

    TermTree postfixed() {
        TermTree a = atom();
        while (peek().kind == Tok::Op && is_postfix_op(peek().text))
            a = node(take().text, {std::move(a)});
        return a;
    }

    TermTree atom() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Ident:
        case Tok::Number: return leaf(take().text);
        case Tok::LParen: return parenthesized();
        case Tok::LList: return bracketed("[::]", Tok::RBracket);
        case Tok::LBracket: return bracketed("[]", Tok::RBracket);
        case Tok::LBrace: return bracketed("{}", Tok::RBrace);
        default: break;
        }
        throw Error(ErrorKind::MalformedStatement, "unexpected '" + t.text + "'");
    }

    TermTree parenthesized() {
        take();
        if (peek().kind == Tok::RParen) {
            take();
            return leaf("()");
        }
        int saved = stop_at_fat_arrow_;
        stop_at_fat_arrow_ = 0;
        TermTree e = expr();
        if (peek().kind == Tok::Colon) {
            take();
            TermTree type = expr();
            e = node(":", {std::move(e), std::move(type)});
        } else if (peek().kind == Tok::Comma) {
            std::vector<TermTree> items;
            items.push_back(std::move(e));
            while (peek().kind == Tok::Comma) {
                take();
                items.push_back(expr());
            }
            e = node("(,)", std::move(items));
        }
        stop_at_fat_arrow_ = saved;
        expect(Tok::RParen, "')'");
        return e;
    }

    TermTree bracketed(std::string symbol, Tok close) {
        take();
        std::vector<TermTree> items;
        int saved = stop_at_fat_arrow_;
        stop_at_fat_arrow_ = 0;
        while (peek().kind != close) {
            items.push_back(expr());
            if (peek().kind == Tok::Semi || peek().kind == Tok::Comma) {
                take();
                continue;
            }
            if (peek().kind != close) throw Error(ErrorKind::MalformedStatement, "unexpected '" + peek().text + "' in brackets");
        }
        take();
        stop_at_fat_arrow_ = saved;
        return node(std::move(symbol), std::move(items));
    }

    TermTree binder() {
        std::string keyword = take().text;
        bool is_fun = keyword == "fun";
        std::vector<TermTree> groups;
        ++stop_at_fat_arrow_;
        for (;;) {
            if (peek().kind == Tok::LParen) {
                take();
                std::vector<TermTree> names;
                while (peek().kind == Tok::Ident) names.push_back(leaf(take().text));
                if (names.empty()) throw Error(ErrorKind::MalformedStatement, "binder group without names");
                expect(Tok::Colon, "':' in binder group");
                TermTree type = expr();
                expect(Tok::RParen, "')'");
                names.insert(names.begin(), std::move(type));
                groups.push_back(node(":", std::move(names)));
            } else if (peek().kind == Tok::Ident && !is_binder_symbol(peek().text)) {
                std::vector<TermTree> names;
                while (peek().kind == Tok::Ident && !is_binder_symbol(peek().text)) names.push_back(leaf(take().text));
                if (peek().kind == Tok::Colon) {
                    take();
                    TermTree type = expr();
                    names.insert(names.begin(), std::move(type));
                    groups.push_back(node(":", std::move(names)));
                } else {
                    for (auto& n : names) groups.push_back(std::move(n));
                }
            } else {
                break;
            }
        }
        --stop_at_fat_arrow_;
        if (groups.empty()) throw Error(ErrorKind::MalformedStatement, "'" + keyword + "' without binders");
        if (peek().kind == Tok::Comma) take();
        else if (is_fun && peek_op("=>")) take();
        else throw Error(ErrorKind::MalformedStatement, "expected ',' after binders of '" + keyword + "'");
        TermTree body = expr();
        groups.insert(groups.begin(), std::move(body));
        return node(std::move(keyword), std::move(groups));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int stop_at_fat_arrow_ = 0;
};

//mmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmmm
// Printer

bool is_operator_symbol(std::string_view s) {
    if (s.empty()) return false;
    if (s[0] == '\\') return s.size() > 1 && (s[1] == '/' || is_backslash_op_word(s.substr(1)));
    return is_op_char(s[0]) || s == ":=" || s == "::";
}

void print_into(const TermTree& t, std::string& out);

void print_binder_group(const TermTree& g, std::string& out) {
    if (g.children.empty()) {
        out += g.symbol;
        return;
    }
    out += '(';
    for (std::size_t i = 1; i < g.children.size(); ++i) {
        out += g.children[i].symbol;
        out += ' ';
    }
    out += ": ";
    print_into(g.children[0], out);
    out += ')';
}

void print_joined(const std::vector<TermTree>& items, std::string_view sep, std::string& out) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        print_into(items[i], out);
    }
}

void print_into(const TermTree& t, std::string& out) {
    const std::string& s = t.symbol;
    if (s == "[::]") {
        if (t.children.empty()) { out += "[::]"; return; }
        out += "[:: ";
        print_joined(t.children, "; ", out);
        out += ']';
        return;
    }
    if (s == "[]" || s == "{}") {
        out += s[0];
        print_joined(t.children, "; ", out);
        out += s[1];
        return;
    }
    if (t.children.empty()) {
        out += s;
        return;
    }
    if (is_binder_symbol(s)) {
        out += '(';
        out += s;
        for (std::size_t i = 1; i < t.children.size(); ++i) {
            out += ' ';
            print_binder_group(t.children[i], out);
        }
        out += s == "fun" ? " => " : ", ";
        print_into(t.children[0], out);
        out += ')';
        return;
    }
    out += '(';
    if (s == ":" && t.children.size() == 2) {
        print_into(t.children[0], out);
        out += " : ";
        print_into(t.children[1], out);
    } else if (s == "(,)") {
        print_joined(t.children, ", ", out);
    } else if (s == "@app") {
        print_joined(t.children, " ", out);
    } else if (is_operator_symbol(s) && t.children.size() == 1) {
        if (is_postfix_op(s)) {
            print_into(t.children[0], out);
            out += ' ';
            out += s;
        } else {
            out += s;
            out += ' ';
            print_into(t.children[0], out);
        }
    } else if (is_operator_symbol(s) && t.children.size() == 2) {
        print_into(t.children[0], out);
        out += ' ';
        out += s;
        out += ' ';
        print_into(t.children[1], out);
    } else {
        out += s;
        out += ' ';
        print_joined(t.children, " ", out);
    }
    out += ')';
}

}  // namespace

bool is_binder_symbol(std::string_view symbol) {
    return symbol == "forall" || symbol == "exists" || symbol == "fun";
}

TermTree parse_term_tree(std::string_view statement_text) {
    std::vector<Token> toks = lex(statement_text);
    if (toks.size() == 1) throw Error(ErrorKind::EmptyStatement, "statement has no tokens");
    check_balanced(toks);
    return Parser(std::move(toks)).parse_all();
}

std::string print_term_tree(const TermTree& tree) {
    std::string out;
    print_into(tree, out);
    return out;
}

std::size_t node_count(const TermTree& tree) {
    std::size_t n = 1;
    for (const auto& c : tree.children) n += node_count(c);
    return n;
}

std::size_t depth(const TermTree& tree) {
    std::size_t d = 0;
    for (const auto& c : tree.children) d = std::max(d, depth(c));
    return d + 1;
}

void collect_symbols(const TermTree& tree, std::vector<std::string>& out) {
    out.push_back(tree.symbol);
    for (const auto& c : tree.children) collect_symbols(c, out);
}

}  // namespace proofmine
