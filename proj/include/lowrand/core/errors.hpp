// Copyright 2026 The lowrand Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lowrand {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatches, out-of-range parameters.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// The operation is not defined for this kind of game (e.g. zero-sum solver on
// a general-sum game).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An engine guard was exceeded (tree size, combinatorial enumeration).
class ResourceError : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

// Raised when an invariant that cannot fail by construction is violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lowrand
