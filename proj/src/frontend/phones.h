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

#ifndef VCLONE_FRONTEND_PHONES_H_
#define VCLONE_FRONTEND_PHONES_H_

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vclone {

inline constexpr std::string_view kSilence = "SIL";
inline constexpr std::string_view kShortPause = "SP";

struct Phone {
  std::string symbol;
  bool is_special = false;  // SIL or SP

  bool operator==(const Phone&) const = default;
};

using PhoneSequence = std::vector<Phone>;

Phone MakePhone(std::string_view symbol);

// Closed symbol set. SIL and SP always hold ids 0 and 1.
class PhoneInventory {
 public:
  PhoneInventory();
  // Remaining symbols keep their given order after SIL and SP; duplicates are
  // dropped.
  explicit PhoneInventory(const std::vector<std::string>& symbols);

  bool Contains(std::string_view symbol) const;
  // Throws UnknownPhone.
  int Id(std::string_view symbol) const;
  const std::string& Symbol(int id) const { return symbols_.at(static_cast<size_t>(id)); }
  int size() const { return static_cast<int>(symbols_.size()); }
  const std::vector<std::string>& symbols() const { return symbols_; }

  std::vector<int> Encode(const PhoneSequence& phones) const;
  std::vector<int> Encode(const std::vector<std::string>& symbols) const;

 private:
  void Add(const std::string& symbol);

  std::vector<std::string> symbols_;
  std::unordered_map<std::string, int> ids_;
};

}  // namespace vclone

#endif  // VCLONE_FRONTEND_PHONES_H_
