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

#ifndef PROOFMINE_TERM_TREE_HPP
#define PROOFMINE_TERM_TREE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace proofmine {

/*
Shape of the trees produced by 'parse_term_tree':

  - identifiers and numerals are leaves;
  - 'f a b' becomes a node 'f' with children 'a', 'b' (left-associated
    application flattened onto its head); a non-identifier head yields an
    '@app' node whose first child is the head;
  - binary operators are nodes with two children, prefix/postfix operators
    nodes with one child;
  - 'forall'/'exists'/'fun' nodes have the body as first child, followed by
    one child per binder group: a leaf for an untyped name, or a ':' node
    whose first child is the type and whose remaining children are the names;
  - '(e : T)' is a ':' node with two children, '(a, b)' a '(,)' node,
    '[:: a; b]' a '[::]' node, other brackets '[]' / '{}' nodes.

Scope delimiters ('%Z') are dropped; notation is not resolved.
*/
struct TermTree {
    std::string symbol;
    std::vector<TermTree> children;

    bool operator==(const TermTree&) const = default;
};

// Throws Error{EmptyStatement} on blank input, Error{UnbalancedDelimiters} on
// mismatched brackets, and Error{MalformedStatement} on other syntax errors.
TermTree parse_term_tree(std::string_view statement_text);

// Fully parenthesized rendering; parse_term_tree(print_term_tree(t)) == t for
// every tree parse_term_tree produces.
std::string print_term_tree(const TermTree& tree);

std::size_t node_count(const TermTree& tree);
std::size_t depth(const TermTree& tree);

// Every symbol of the tree in pre-order.
void collect_symbols(const TermTree& tree, std::vector<std::string>& out);

bool is_binder_symbol(std::string_view symbol);

}  // namespace proofmine

#endif
