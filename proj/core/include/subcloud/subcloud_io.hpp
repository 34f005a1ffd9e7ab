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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "subcloud/crop.hpp"

namespace subcloud {

inline constexpr std::uint16_t kSubcloudFormatVersion = 1;

/// Little-endian record:
///   "SUBC" | version u16 | center 3 x f64 | kind u8 | parameter f64 |
///   seed u64 | center_id u64 | count u64 | count x u64 indices | count x f32 probs
std::string encode_subcloud(const Subcloud& subcloud);
Subcloud decode_subcloud(std::string_view bytes);

void write_subcloud(const Subcloud& subcloud, const std::filesystem::path& path);
Subcloud read_subcloud(const std::filesystem::path& path);

/// "<center_id>.subc"
std::string subcloud_file_name(std::uint64_t center_id);

}  // namespace subcloud
