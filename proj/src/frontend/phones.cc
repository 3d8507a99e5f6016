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

#include "frontend/phones.h"

#include "common/error.h"

namespace vclone {

Phone MakePhone(std::string_view symbol) {
  return Phone{std::string(symbol), symbol == kSilence || symbol == kShortPause};
}

PhoneInventory::PhoneInventory() {
  Add(std::string(kSilence));
  Add(std::string(kShortPause));
}

PhoneInventory::PhoneInventory(const std::vector<std::string>& symbols)
    : PhoneInventory() {
  for (const std::string& s : symbols) {
    Require(!s.empty(), ErrorCode::kUnknownPhone, "empty phone symbol");
    if (!Contains(s)) Add(s);
  }
}

void PhoneInventory::Add(const std::string& symbol) {
  ids_.emplace(symbol, static_cast<int>(symbols_.size()));
  symbols_.push_back(symbol);
}

bool PhoneInventory::Contains(std::string_view symbol) const {
  return ids_.count(std::string(symbol)) > 0;
}

int PhoneInventory::Id(std::string_view symbol) const {
  auto it = ids_.find(std::string(symbol));
  if (it == ids_.end()) {
    Fail(ErrorCode::kUnknownPhone,
         "'" + std::string(symbol) + "' is not in the phone inventory");
  }
  return it->second;
}

std::vector<int> PhoneInventory::Encode(const PhoneSequence& phones) const {
  std::vector<int> ids;
  ids.reserve(phones.size());
  for (const Phone& p : phones) ids.push_back(Id(p.symbol));
  return ids;
}

std::vector<int> PhoneInventory::Encode(
    const std::vector<std::string>& symbols) const {
  std::vector<int> ids;
  ids.reserve(symbols.size());
  for (const std::string& s : symbols) ids.push_back(Id(s));
  return ids;
}

}  // namespace vclone
