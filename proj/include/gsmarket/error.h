// Copyright 2026 The Authors.
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

#ifndef GSMARKET_ERROR_H_
#define GSMARKET_ERROR_H_

#include <stdexcept>
#include <string>

namespace gsmarket {

enum class ErrorCode {
  kBundleOutOfBounds,
  kLengthMismatch,
  kInvalidInstance,
  kInvalidValuation,
  kNotPreferredBundle,
  kModeMismatch,
  kEnumerationLimit,
  kInternalInvariant,
  kRoundLimitExceeded,
  kStalledNotWalrasian,
  kNotWalrasian,
  kParse,
};

const char* ErrorCodeName(ErrorCode code);

class MarketError : public std::runtime_error {
 public:
  MarketError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Throws kInternalInvariant. Used for checks that must hold in release
// builds too (the debug suites rely on them).
[[noreturn]] void InvariantFailure(const std::string& what);

#define GSM_CHECK(cond, msg)                                   \
  do {                                                         \
    if (!(cond)) ::gsmarket::InvariantFailure(                 \
        std::string(#cond " at " __FILE__ ": ") + (msg));      \
  } while (0)

}  // namespace gsmarket

#endif  // GSMARKET_ERROR_H_
