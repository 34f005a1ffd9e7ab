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

#include "subcloud/subcloud_io.hpp"

#include <cstring>

#include "subcloud/byte_io.hpp"
#include "subcloud/error.hpp"
#include "subcloud/io.hpp"

namespace subcloud {

std::string encode_subcloud(const Subcloud& sub) {
  if (sub.probs.size() != sub.parent_indices.size()) {
    raise(Errc::ShapeMismatch, "subcloud probs and indices differ in length");
  }
  std::string out = "SUBC";
  bytes::put(out, kSubcloudFormatVersion);
  bytes::put(out, sub.center.x);
  bytes::put(out, sub.center.y);
  bytes::put(out, sub.center.z);
  bytes::put(out, static_cast<std::uint8_t>(sub.spec.kind()));
  bytes::put(out, sub.spec.parameter());
  bytes::put(out, sub.seed_tag);
  bytes::put(out, sub.center_id);
  bytes::put(out, static_cast<std::uint64_t>(sub.parent_indices.size()));
  for (std::size_t i : sub.parent_indices) bytes::put(out, static_cast<std::uint64_t>(i));
  for (float p : sub.probs) bytes::put(out, p);
  return out;
}

Subcloud decode_subcloud(std::string_view data) {
  bytes::Reader in(data);
  if (in.take(4) != "SUBC") raise(Errc::Format, "missing SUBC magic");
  const auto version = in.get<std::uint16_t>();
  if (version != kSubcloudFormatVersion) {
    raise(Errc::Format, "unsupported subcloud version " + std::to_string(version));
  }
  Subcloud sub;
  sub.center.x = in.get<double>();
  sub.center.y = in.get<double>();
  sub.center.z = in.get<double>();
  const auto kind = in.get<std::uint8_t>();
  if (kind > static_cast<std::uint8_t>(CropKind::Linear)) {
    raise(Errc::Format, "unknown crop kind tag " + std::to_string(kind));
  }
  const double parameter = in.get<double>();
  sub.spec = CropSpec(static_cast<CropKind>(kind), parameter);
  sub.seed_tag = in.get<std::uint64_t>();
  sub.center_id = in.get<std::uint64_t>();
  const auto count = in.get<std::uint64_t>();
  if (count > in.remaining() / 12) raise(Errc::Format, "subcloud count exceeds record size");
  sub.parent_indices.resize(count);
  sub.probs.resize(count);
  for (auto& i : sub.parent_indices) {
    i = static_cast<std::size_t>(in.get<std::uint64_t>());
  }
  for (auto& p : sub.probs) p = in.get<float>();
  if (in.remaining() != 0) raise(Errc::Format, "trailing bytes after subcloud record");
  for (std::size_t k = 1; k < count; ++k) {
    if (sub.parent_indices[k] <= sub.parent_indices[k - 1]) {
      raise(Errc::Format, "subcloud indices are not strictly increasing");
    }
  }
  return sub;
}

void write_subcloud(const Subcloud& subcloud, const std::filesystem::path& path) {
  write_file_atomic(path, encode_subcloud(subcloud));
}

Subcloud read_subcloud(const std::filesystem::path& path) {
  return decode_subcloud(read_file(path));
}

std::string subcloud_file_name(std::uint64_t center_id) {
  return std::to_string(center_id) + ".subc";
}

}  // namespace subcloud
