// Copyright 2026 the meanineq authors
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

namespace meanineq {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed inputs: bad weights, mismatched spaces, bad specs.
class validation_error : public error {
 public:
  using error::error;
};

/// Argument outside the mathematical domain of an operation.
class domain_error : public error {
 public:
  using error::error;
};

/// Target value outside the represented range (inversion, tabulated knots).
class range_error : public error {
 public:
  using error::error;
};

/// Requested object too large to represent (product-space overflow).
class size_error : public error {
 public:
  using error::error;
};

/// Degenerate input for which the operation is undefined (e.g. g == 0).
class degenerate_error : public error {
 public:
  using error::error;
};

}  // namespace meanineq
