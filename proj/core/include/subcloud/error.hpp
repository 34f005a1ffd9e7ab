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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace subcloud {

enum class Errc {
  Io,
  Format,
  EmptyCloud,
  InvalidSpec,
  InvalidArgument,
  Unreachable,
  NonMonotoneDetected,
  Unsatisfiable,
  IterationCap,
  ShapeMismatch,
  ClassCountMismatch,
  ClassOutOfRange,
  NoDefinedClasses,
  EmptyThresholdSet,
  InvalidConfig,
  GridOverflow,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

}  // namespace subcloud
