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

// Character-level helpers shared by the sentence splitter, the tactic lexer
// and the term lexer.

#ifndef PROOFMINE_TEXT_HPP
#define PROOFMINE_TEXT_HPP

#include <cstddef>
#include <string>
#include <string_view>

namespace proofmine {

// Bytes >= 0x80 count as identifier characters so UTF-8 names lex whole.
inline bool is_ident_start(char c) {
    auto u = static_cast<unsigned char>(c);
    return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u == '_' || u >= 0x80;
}

inline bool is_ident_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return is_ident_start(c) || (u >= '0' && u <= '9') || u == '\'';
}

// Scans an identifier starting at 'pos' and returns one past its end. A '.'
// between two identifier characters continues the name ('Finite.axiom').
std::size_t scan_identifier(std::string_view s, std::size_t pos);

// 'pos' points at "(*"; returns the index one past the matching "*)", or
// s.size() when the comment never closes. Comments nest.
std::size_t skip_comment(std::string_view s, std::size_t pos);

// 'pos' points at '"'; returns one past the closing quote ("" escapes a quote).
std::size_t skip_string(std::string_view s, std::size_t pos);

std::string_view trim(std::string_view s);

// Removes comments and collapses every whitespace run to nothing.
std::string strip_comments_and_space(std::string_view s);

int count_newlines(std::string_view s);

}  // namespace proofmine

#endif
