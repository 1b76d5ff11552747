// Copyright 2026 The Chaoscope Authors
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

#ifndef CHAOSCOPE_ERRORS_H_
#define CHAOSCOPE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace chaoscope {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: shape mismatch, out-of-range index, bad parameter.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A dense enumeration would exceed the configured profile budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A trajectory produced a dual coordinate that is non-finite or larger than
// the overflow guard. `last_finite_index` is the last time step whose state
// was fully finite and within the guard.
class OverflowAbort : public Error {
 public:
  OverflowAbort(const std::string& what, int last_finite_index)
      : Error(what), last_finite_index_(last_finite_index) {}
  int last_finite_index() const { return last_finite_index_; }

 private:
  int last_finite_index_;
};

}  // namespace chaoscope

#endif  // CHAOSCOPE_ERRORS_H_
