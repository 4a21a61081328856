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

#include <string>

#include "layoutret/container.hpp"
#include "layoutret/extract/common.hpp"
#include "layoutret/extract/presentation.hpp"
#include "layoutret/extract/spreadsheet.hpp"
#include "layoutret/extract/wordprocessing.hpp"
#include "layoutret/feature.hpp"

namespace layoutret {

using extract::ExtractResult;
using extract::extract_presentation;
using extract::extract_spreadsheet;
using extract::extract_wordprocessing;

// One PageFeature per slide, section or worksheet, in document order. A page
// that fails to parse is reported in `warnings` and left out.
inline ExtractResult extract_document(const OpcPackage& pkg, const std::string& doc_id) {
  switch (detect_doc_type(pkg)) {
    case DocType::presentation: return extract_presentation(pkg, doc_id);
    case DocType::wordprocessing: return extract_wordprocessing(pkg, doc_id);
    case DocType::spreadsheet: return extract_spreadsheet(pkg, doc_id);
    case DocType::unknown: break;
  }
  throw Error(ErrorCode::unsupported_type, pkg.source_path() + ": not a presentation, document or workbook");
}

}  // namespace layoutret
