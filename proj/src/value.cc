// Copyright 2026 The tablefv Authors.
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

#include <algorithm>
#include <cmath>
#include <string>

#include "tablefv/dsl.h"

namespace tablefv {

std::string_view type_name(TypeTag tag) {
  switch (tag) {
    case TypeTag::kNum:
      return "Num";
    case TypeTag::kStr:
      return "Str";
    case TypeTag::kBool:
      return "Bool";
    case TypeTag::kView:
      return "View";
    case TypeTag::kCol:
      return "Col";
    case TypeTag::kVal:
      return "Val";
  }
  return "?";
}

bool num_equal(double a, double b) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= kNumTolerance * scale;
}

TypeTag TypedValue::type() const {
  if (is_num()) return TypeTag::kNum;
  if (is_str()) return TypeTag::kStr;
  if (is_bool()) return TypeTag::kBool;
  return TypeTag::kView;
}

std::string TypedValue::to_string() const {
  if (is_num()) return format_number(as_num());
  if (is_str()) return quote_string(as_str());
  if (is_bool()) return as_bool() ? "true" : "false";
  std::string out = "view[rows=";
  const auto& rows = as_view().rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(rows[i]);
  }
  out += ']';
  return out;
}

std::string_view exec_error_name(ExecErrorKind kind) {
  switch (kind) {
    case ExecErrorKind::kEmptyViewAggregate:
      return "EmptyViewAggregate";
    case ExecErrorKind::kNonNumericColumn:
      return "NonNumericColumn";
    case ExecErrorKind::kDivergentValue:
      return "DivergentValue";
    case ExecErrorKind::kMultiRowHop:
      return "MultiRowHop";
    case ExecErrorKind::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ExecErrorKind::kUnknownColumn:
      return "UnknownColumn";
    case ExecErrorKind::kTypeMismatch:
      return "TypeMismatch";
  }
  return "Unknown";
}

}  // namespace tablefv
