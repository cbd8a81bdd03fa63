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

#ifndef PROOFMINE_ERROR_HPP
#define PROOFMINE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace proofmine {

enum class ErrorKind {
    // script-parser
    UnterminatedProof,
    MalformedStatement,
    DuplicateLemmaName,
    EmptyStep,
    UnbalancedDelimiters,
    EmptyStatement,
    MalformedTrace,
    // feature-extractor
    EmptyCorpus,
    NoProofBody,
    // clustering / digest
    TooFewPoints,
    TooFewLemmas,
    InvalidArgument,
    UnknownLemma,
    // corpus-store
    VersionMismatch,
    CorruptFile,
    Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the library surfaces as this exception. Parse errors carry
// the originating file and 1-based line when known (line 0 = unknown).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message, std::string file = {}, int line = 0);

    ErrorKind kind() const { return kind_; }
    // The message without the file:line and kind decoration.
    const std::string& message() const { return message_; }
    const std::string& file() const { return file_; }
    int line() const { return line_; }

    bool is_parse_error() const;

private:
    ErrorKind kind_;
    std::string message_;
    std::string file_;
    int line_;
};

}  // namespace proofmine

#endif
