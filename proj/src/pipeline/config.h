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

#ifndef VCLONE_PIPELINE_CONFIG_H_
#define VCLONE_PIPELINE_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace vclone {

// Sectioned key/value settings read from an INI file. Keys are addressed
// as "section.key"; every value is kept as text and parsed on access.
class Config {
 public:
  static Config Load(const std::string& path);
  static Config Parse(const std::string& text);

  // "section.key=value"; throws ConfigInvalid on a malformed override.
  void ApplyOverride(const std::string& assignment);
  void Set(const std::string& key, const std::string& value);
  bool Has(const std::string& key) const;

  std::string GetString(const std::string& key, const std::string& def) const;
  int64_t GetInt(const std::string& key, int64_t def) const;
  double GetDouble(const std::string& key, double def) const;
  bool GetBool(const std::string& key, bool def) const;
  std::vector<int> GetIntList(const std::string& key,
                              const std::vector<int>& def) const;

  const std::map<std::string, std::string>& values() const { return values_; }
  // Keys the program never asked for; reported so typos do not go unseen.
  std::vector<std::string> UnusedKeys() const;
  // Every key read so far with the value used, defaults included.
  const std::map<std::string, std::string>& resolved() const {
    return resolved_;
  }

 private:
  const std::string* Find(const std::string& key) const;

  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

std::string JoinInts(const std::vector<int>& values);

}  // namespace vclone

#endif  // VCLONE_PIPELINE_CONFIG_H_
