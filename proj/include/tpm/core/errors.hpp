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

#include <stdexcept>
#include <string>

namespace tpm {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown, duplicated or colliding subsystem labels.
class LabelError : public Error {
 public:
  using Error::Error;
};

// Shape or dimension mismatch between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input expected to be Hermitian (or unitary) is not, beyond tolerance.
class NotHermitianError : public Error {
 public:
  using Error::Error;
};

// A physical object (process, channel, tester, retriever, witness) violates
// its defining constraints.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numerical procedure failed (solver stall, insufficient truncation, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tpm
