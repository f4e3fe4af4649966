// Copyright 2026 The qlsid Authors
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

namespace qls {

enum class ErrorKind {
  kShapeMismatch,
  kNotHurwitz,
  kNotDoubledUp,
  kNonSemisimple,
  kNotACovariance,
  kNotSymplectic,
  kChannelMismatch,
  kPoleHit,
  kDegenerateSpectrum,
  kNotPassive,
  kNotStable,
  kRealPole,
  kRepeatedPole,
  kResidueRankExceedsOne,
  kSingularTransform,
  kNonPhysical,
  kNotMinimal,
  kNotPure,
  kVacuumInput,
  kNotGloballyMinimal,
  kInconsistent,
  kSingularInput,
  kIllConditioned,
  kInvalidArgument,
  kParseError,
  kRangeError,
};

/// Stable name of an error kind, e.g. "NotHurwitz".
const char* ErrorKindName(ErrorKind kind);

/// All failures raised by the library carry a kind so callers (and the CLI)
/// can dispatch on the violated condition rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qls
