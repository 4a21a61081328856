// Copyright 2026 The layoutret Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace layoutret {

enum class ErrorCode {
  // container
  not_zip,
  corrupt_archive,
  missing_content_types,
  malformed_relationship_xml,
  part_not_found,
  // extractor
  unsupported_type,
  parse_failure,
  // store
  io_failure,
  schema_mismatch,
  malformed_record,
  // query
  syntax_error,
  unknown_field,
  unit_error,
  empty_query,
  validation_error,
  not_found,
  // matcher
  type_mismatch,
  invalid_config,
  // eval
  unknown_group,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_zip: return "NotZip";
    case ErrorCode::corrupt_archive: return "CorruptArchive";
    case ErrorCode::missing_content_types: return "MissingContentTypes";
    case ErrorCode::malformed_relationship_xml: return "MalformedRelationshipXml";
    case ErrorCode::part_not_found: return "PartNotFound";
    case ErrorCode::unsupported_type: return "UnsupportedType";
    case ErrorCode::parse_failure: return "ParseFailure";
    case ErrorCode::io_failure: return "IoFailure";
    case ErrorCode::schema_mismatch: return "SchemaMismatch";
    case ErrorCode::malformed_record: return "MalformedRecord";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::unknown_field: return "UnknownField";
    case ErrorCode::unit_error: return "UnitError";
    case ErrorCode::empty_query: return "EmptyQuery";
    case ErrorCode::validation_error: return "ValidationError";
    case ErrorCode::not_found: return "NotFound";
    case ErrorCode::type_mismatch: return "TypeMismatch";
    case ErrorCode::invalid_config: return "InvalidConfig";
    case ErrorCode::unknown_group: return "UnknownGroup";
  }
  return "Unknown";
}

// Every failure raised by the library carries a stable code so callers
// (the CLI in particular) can map it to an exit status without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Load errors that point at a line of a line-delimited file.
class RecordError : public Error {
 public:
  RecordError(ErrorCode code, std::size_t line, const std::string& message)
      : Error(code, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace layoutret
