// Copyright (c) 2026 The vclone Authors
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

#ifndef VCLONE_COMMON_BINARY_IO_H_
#define VCLONE_COMMON_BINARY_IO_H_

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "common/error.h"

namespace vclone {

// Little-endian byte buffer builder. Assumes a little-endian host.
class BinaryWriter {
 public:
  template <typename T>
  void Put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    const char* p = reinterpret_cast<const char*>(&value);
    buffer_.append(p, sizeof(T));
  }
  void PutBytes(const void* data, size_t size) {
    buffer_.append(static_cast<const char*>(data), size);
  }
  void PutString(std::string_view s) {
    Put<uint32_t>(static_cast<uint32_t>(s.size()));
    buffer_.append(s.data(), s.size());
  }

  const std::string& buffer() const { return buffer_; }
  std::string& buffer() { return buffer_; }

 private:
  std::string buffer_;
};

// Bounds-checked reader; every overrun raises `error_code`.
class BinaryReader {
 public:
  BinaryReader(std::string_view data, ErrorCode error_code)
      : data_(data), error_code_(error_code) {}

  template <typename T>
  T Get() {
    static_assert(std::is_trivially_copyable_v<T>);
    Need(sizeof(T));
    T value;
    std::memcpy(&value, data_.data() + offset_, sizeof(T));
    offset_ += sizeof(T);
    return value;
  }
  void GetBytes(void* out, size_t size) {
    Need(size);
    std::memcpy(out, data_.data() + offset_, size);
    offset_ += size;
  }
  std::string GetString(size_t max_size = 1u << 26) {
    const uint32_t size = Get<uint32_t>();
    if (size > max_size) Fail(error_code_, "string length out of range");
    Need(size);
    std::string s(data_.substr(offset_, size));
    offset_ += size;
    return s;
  }

  size_t offset() const { return offset_; }
  size_t remaining() const { return data_.size() - offset_; }

 private:
  void Need(size_t size) const {
    if (size > data_.size() - offset_) Fail(error_code_, "unexpected end of data");
  }

  std::string_view data_;
  ErrorCode error_code_;
  size_t offset_ = 0;
};

std::string ReadFileBytes(const std::string& path);
// Writes through a temporary file and renames, so readers never see a
// partially written file.
void WriteFileAtomic(const std::string& path, std::string_view bytes);

}  // namespace vclone

#endif  // VCLONE_COMMON_BINARY_IO_H_
