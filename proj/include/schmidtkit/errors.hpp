// Copyright 2026 The schmidtkit Authors
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

#include <cstdio>
#include <stdexcept>
#include <string>

namespace schmidtkit {

/// Base class for every error raised on bad caller input.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix/vector shapes do not fit the requested bipartition or operation.
class DimensionError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Malformed or unreadable input file.
class InputError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A matrix required to be Hermitian deviates by more than the tolerance.
class NotHermitianError : public InvalidArgument {
 public:
  NotHermitianError(double deviation)
      : InvalidArgument("matrix is not Hermitian (max |H - H^dagger| = " +
                        std::to_string(deviation) + ")"),
        deviation_(deviation) {}
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// A named domain invariant (unit trace, positivity, normalization ...) fails.
/// `amount` is how far outside the tolerance band the value landed.
class InvariantViolation : public InvalidArgument {
 public:
  InvariantViolation(std::string invariant, double amount)
      : InvalidArgument("invariant violated: " + invariant + " (off by " +
                        to_string_precise(amount) + ")"),
        invariant_(std::move(invariant)),
        amount_(amount) {}

  const std::string& invariant() const noexcept { return invariant_; }
  double amount() const noexcept { return amount_; }

 private:
  static std::string to_string_precise(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
  }

  std::string invariant_;
  double amount_;
};

/// An iterative numerical routine failed in a way that is not the caller's
/// fault.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace schmidtkit
