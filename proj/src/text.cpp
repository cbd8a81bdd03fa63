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

#include "proofmine/text.hpp"

#include <algorithm>
#include <cctype>

namespace proofmine {

std::size_t scan_identifier(std::string_view s, std::size_t pos) {
    std::size_t j = pos + 1;
    while (j < s.size()) {
        if (is_ident_char(s[j])) {
            ++j;
        } else if (s[j] == '.' && j + 1 < s.size() && is_ident_char(s[j + 1]) && s[j + 1] != '\'') {
            ++j;
        } else {
            break;
        }
    }
    return j;
}

std::size_t skip_comment(std::string_view s, std::size_t pos) {
    int level = 0;
    std::size_t i = pos;
    while (i < s.size()) {
        if (s[i] == '(' && i + 1 < s.size() && s[i + 1] == '*') {
            ++level;
            i += 2;
        } else if (s[i] == '*' && i + 1 < s.size() && s[i + 1] == ')') {
            --level;
            i += 2;
            if (level == 0) return i;
        } else {
            ++i;
        }
    }
    return s.size();
}

std::size_t skip_string(std::string_view s, std::size_t pos) {
    std::size_t i = pos + 1;
    while (i < s.size()) {
        if (s[i] == '"') {
            if (i + 1 < s.size() && s[i + 1] == '"') {
                i += 2;
                continue;
            }
            return i + 1;
        }
        ++i;
    }
    return s.size();
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comments_and_space(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '(' && i + 1 < s.size() && s[i + 1] == '*') {
            i = skip_comment(s, i);
        } else if (s[i] == '"') {
            std::size_t j = skip_string(s, i);
            out.append(s.substr(i, j - i));
            i = j;
        } else {
            if (!std::isspace(static_cast<unsigned char>(s[i]))) out += s[i];
            ++i;
        }
    }
    return out;
}

int count_newlines(std::string_view s) {
    return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace proofmine
