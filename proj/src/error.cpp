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

#include "proofmine/error.hpp"

namespace proofmine {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::UnterminatedProof:    return "UnterminatedProof";
    case ErrorKind::MalformedStatement:   return "MalformedStatement";
    case ErrorKind::DuplicateLemmaName:   return "DuplicateLemmaName";
    case ErrorKind::EmptyStep:            return "EmptyStep";
    case ErrorKind::UnbalancedDelimiters: return "UnbalancedDelimiters";
    case ErrorKind::EmptyStatement:       return "EmptyStatement";
    case ErrorKind::MalformedTrace:       return "MalformedTrace";
    case ErrorKind::EmptyCorpus:          return "EmptyCorpus";
    case ErrorKind::NoProofBody:          return "NoProofBody";
    case ErrorKind::TooFewPoints:         return "TooFewPoints";
    case ErrorKind::TooFewLemmas:         return "TooFewLemmas";
    case ErrorKind::InvalidArgument:      return "InvalidArgument";
    case ErrorKind::UnknownLemma:         return "UnknownLemma";
    case ErrorKind::VersionMismatch:      return "VersionMismatch";
    case ErrorKind::CorruptFile:          return "CorruptFile";
    case ErrorKind::Io:                   return "Io";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message, const std::string& file, int line) {
    std::string out;
    if (!file.empty()) {
        out += file;
        if (line > 0) out += ":" + std::to_string(line);
        out += ": ";
    } else if (line > 0) {
        out += "line " + std::to_string(line) + ": ";
    }
    out += to_string(kind);
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string message, std::string file, int line)
    : std::runtime_error(decorate(kind, message, file, line)),
      kind_(kind), message_(std::move(message)), file_(std::move(file)), line_(line) {}

bool Error::is_parse_error() const {
    switch (kind_) {
    case ErrorKind::UnterminatedProof:
    case ErrorKind::MalformedStatement:
    case ErrorKind::DuplicateLemmaName:
    case ErrorKind::EmptyStep:
    case ErrorKind::UnbalancedDelimiters:
    case ErrorKind::EmptyStatement:
    case ErrorKind::MalformedTrace:
    case ErrorKind::NoProofBody:
        return true;
    default:
        return false;
    }
}

}  // namespace proofmine
