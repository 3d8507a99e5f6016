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

#ifndef VCLONE_COMMON_HASH_H_
#define VCLONE_COMMON_HASH_H_

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace vclone {

// 64-bit FNV-1a. Used for cache keys, config hashes and checkpoint checksums.
class Fnv1a {
 public:
  void Update(const void* data, size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < size; ++i) {
      state_ ^= bytes[i];
      state_ *= 0x100000001b3ULL;
    }
  }
  void Update(std::string_view s) { Update(s.data(), s.size()); }
  uint64_t Digest() const { return state_; }

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline uint64_t HashBytes(std::string_view s) {
  Fnv1a h;
  h.Update(s);
  return h.Digest();
}

inline std::string HexDigest(uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace vclone

#endif  // VCLONE_COMMON_HASH_H_
