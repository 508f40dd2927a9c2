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

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace tpm {

// A named tensor factor of a Hilbert space.
struct Subsystem {
  std::string name;
  int dim = 1;

  bool operator==(const Subsystem&) const = default;
};

// Ordered list of uniquely named subsystems. The order fixes the Kronecker
// layout of every operator living on the space (first factor is the most
// significant index).
class Space {
 public:
  Space() = default;
  Space(std::initializer_list<Subsystem> parts);
  explicit Space(std::vector<Subsystem> parts);

  // Total dimension (1 for the empty space).
  int dim() const;
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  const Subsystem& operator[](std::size_t i) const { return parts_[i]; }
  const std::vector<Subsystem>& parts() const { return parts_; }
  std::vector<std::string> names() const;

  std::optional<std::size_t> find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name).has_value(); }
  // Dimension of the named factor; throws LabelError if absent.
  int dim_of(const std::string& name) const;

  // Concatenation; throws LabelError on a name collision.
  Space concat(const Space& other) const;
  // Space with the given labels removed (order of the rest preserved).
  Space without(const std::vector<std::string>& names) const;
  // Space consisting of the given labels in the given order.
  Space select(const std::vector<std::string>& names) const;
  // Same factors, one label renamed.
  Space renamed(const std::string& from, const std::string& to) const;

  bool operator==(const Space&) const = default;

  std::string to_string() const;

 private:
  void check_unique() const;

  std::vector<Subsystem> parts_;
};

}  // namespace tpm
