// Copyright 2026 The qlsid Authors
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

#include <json.hpp>

#include "qlsid/identification.hpp"

namespace qls {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "qls/1";

Json to_json(Complex z);
Json to_json(const CMatrix& m);
Json to_json(const RationalFn& f);
Json to_json(const TransferFunctionSISO& tf);
Json to_json(const QlsSystem& sys);
Json to_json(const GaussianInput& in);
Json to_json(const PowerSpectrumSISO& ps);

// Parsers throw ParseError naming the offending field.
Complex complex_from_json(const Json& j, const std::string& field);
CMatrix cmatrix_from_json(const Json& j, const std::string& field);
RationalFn rational_from_json(const Json& j, const std::string& field);
TransferFunctionSISO tf_from_json(const Json& j);
QlsSystem system_from_json(const Json& j);
GaussianInput input_from_json(const Json& j);
PowerSpectrumSISO spectrum_from_json(const Json& j);

/// Parses text, reporting line and column on malformed input.
Json parse_json(const std::string& text, const std::string& source);
/// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);

}  // namespace qls
