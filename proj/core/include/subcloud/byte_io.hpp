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

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstring>
#include <string>
#include <string_view>

#include "subcloud/error.hpp"

namespace subcloud::bytes {

template <typename T>
void put(std::string& out, T value) {
  char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    std::reverse(raw, raw + sizeof(T));
  }
  out.append(raw, sizeof(T));
}

/// Bounds-checked little-endian reader; overruns raise FormatError.
class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T value;
    char raw[sizeof(T)];
    std::memcpy(raw, data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
      std::reverse(raw, raw + sizeof(T));
    }
    std::memcpy(&value, raw, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string_view take(std::size_t n) {
    need(n);
    auto view = data_.substr(pos_, n);
    pos_ += n;
    return view;
  }

  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) raise(Errc::Format, "record truncated");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace subcloud::bytes
