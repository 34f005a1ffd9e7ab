/* Copyright 2026 The Subcloud Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "subcloud/error.hpp"

namespace subcloud {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::Io: return "IoError";
    case Errc::Format: return "FormatError";
    case Errc::EmptyCloud: return "EmptyCloud";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Unreachable: return "Unreachable";
    case Errc::NonMonotoneDetected: return "NonMonotoneDetected";
    case Errc::Unsatisfiable: return "Unsatisfiable";
    case Errc::IterationCap: return "IterationCap";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::ClassCountMismatch: return "ClassCountMismatch";
    case Errc::ClassOutOfRange: return "ClassOutOfRange";
    case Errc::NoDefinedClasses: return "NoDefinedClasses";
    case Errc::EmptyThresholdSet: return "EmptyThresholdSet";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::GridOverflow: return "GridOverflow";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace subcloud
