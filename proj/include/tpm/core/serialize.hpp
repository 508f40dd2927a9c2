// Copyright 2026 The tpmem Authors
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

#include "json.hpp"
#include "tpm/core/operator.hpp"

namespace tpm {

// Matrix JSON schema:
//   {"labels": [{"name": str, "dim": int}, ...],
//    "entries": [[[re, im], ...], ...]}   (row-major)
nlohmann::json operator_to_json(const Operator& x);
// Throws ParseError on schema violations and DimensionError on shape errors.
Operator operator_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const CMat& m);
CMat matrix_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace tpm
