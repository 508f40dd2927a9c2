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

#include "tpm/core/space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "tpm/core/errors.hpp"

namespace tpm {

Space::Space(std::initializer_list<Subsystem> parts) : parts_(parts) {
  check_unique();
}

Space::Space(std::vector<Subsystem> parts) : parts_(std::move(parts)) {
  check_unique();
}

void Space::check_unique() const {
  std::set<std::string> seen;
  for (const auto& p : parts_) {
    if (p.dim < 1) {
      throw DimensionError("subsystem '" + p.name + "' has dimension < 1");
    }
    if (!seen.insert(p.name).second) {
      throw LabelError("duplicate subsystem label '" + p.name + "'");
    }
  }
}

int Space::dim() const {
  int d = 1;
  for (const auto& p : parts_) d *= p.dim;
  return d;
}

std::vector<std::string> Space::names() const {
  std::vector<std::string> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p.name);
  return out;
}

std::optional<std::size_t> Space::find(const std::string& name) const {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i].name == name) return i;
  }
  return std::nullopt;
}

int Space::dim_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw LabelError("unknown subsystem label '" + name + "'");
  return parts_[*i].dim;
}

Space Space::concat(const Space& other) const {
  std::vector<Subsystem> parts = parts_;
  for (const auto& p : other.parts_) {
    if (contains(p.name)) {
      throw LabelError("label collision on '" + p.name + "'");
    }
    parts.push_back(p);
  }
  return Space(std::move(parts));
}

Space Space::without(const std::vector<std::string>& names) const {
  for (const auto& n : names) dim_of(n);
  std::vector<Subsystem> parts;
  for (const auto& p : parts_) {
    if (std::find(names.begin(), names.end(), p.name) == names.end()) {
      parts.push_back(p);
    }
  }
  return Space(std::move(parts));
}

Space Space::select(const std::vector<std::string>& names) const {
  std::vector<Subsystem> parts;
  for (const auto& n : names) parts.push_back({n, dim_of(n)});
  return Space(std::move(parts));
}

Space Space::renamed(const std::string& from, const std::string& to) const {
  auto i = find(from);
  if (!i) throw LabelError("unknown subsystem label '" + from + "'");
  std::vector<Subsystem> parts = parts_;
  parts[*i].name = to;
  return Space(std::move(parts));
}

std::string Space::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ", ";
    os << parts_[i].name << ":" << parts_[i].dim;
  }
  os << "]";
  return os.str();
}

}  // namespace tpm
