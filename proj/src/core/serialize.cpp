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

#include "tpm/core/serialize.hpp"

#include <fstream>

#include "tpm/core/errors.hpp"

namespace tpm {

nlohmann::json matrix_to_json(const CMat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) {
    throw ParseError("entries must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw ParseError("entries rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("entries rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto& e = row[c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() &&
                 e[1].is_number()) {
        m(r, c) = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

nlohmann::json operator_to_json(const Operator& x) {
  nlohmann::json labels = nlohmann::json::array();
  for (const auto& p : x.space().parts()) {
    labels.push_back({{"name", p.name}, {"dim", p.dim}});
  }
  return {{"labels", labels}, {"entries", matrix_to_json(x.matrix())}};
}

Operator operator_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("labels") || !j.contains("entries")) {
    throw ParseError("operator JSON needs 'labels' and 'entries'");
  }
  if (!j["labels"].is_array()) throw ParseError("'labels' must be an array");
  std::vector<Subsystem> parts;
  for (const auto& l : j["labels"]) {
    if (!l.is_object() || !l.contains("name") || !l.contains("dim") ||
        !l["name"].is_string() || !l["dim"].is_number_integer()) {
      throw ParseError("labels must be {\"name\": str, \"dim\": int}");
    }
    parts.push_back({l["name"].get<std::string>(), l["dim"].get<int>()});
  }
  return Operator(Space(std::move(parts)), matrix_from_json(j["entries"]));
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace tpm
