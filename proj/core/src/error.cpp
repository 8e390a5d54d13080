// Copyright 2026 The avgsim Authors
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
//
#include "avgsim/error.hpp"

namespace avgsim {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParams:
      return "InvalidParams";
    case ErrorKind::kParity:
      return "ParityError";
    case ErrorKind::kRetryExhausted:
      return "RetryExhausted";
    case ErrorKind::kEmptyGraph:
      return "EmptyGraph";
    case ErrorKind::kNotConverged:
      return "NotConverged";
    case ErrorKind::kDegenerateGap:
      return "DegenerateGap";
    case ErrorKind::kInvalidEdge:
      return "InvalidEdge";
    case ErrorKind::kNotYetReached:
      return "NotYetReached";
    case ErrorKind::kConfig:
      return "ConfigError";
    case ErrorKind::kDeltaOutOfRange:
      return "DeltaOutOfRange";
    case ErrorKind::kZeroAlpha2:
      return "ZeroAlpha2";
    case ErrorKind::kMissingObserver:
      return "MissingObserver";
    case ErrorKind::kScheduleTooShort:
      return "ScheduleTooShort";
    case ErrorKind::kInvariantBreach:
      return "InvariantBreach";
  }
  return "Unknown";
}

}  // namespace avgsim
