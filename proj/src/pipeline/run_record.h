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

#ifndef VCLONE_PIPELINE_RUN_RECORD_H_
#define VCLONE_PIPELINE_RUN_RECORD_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace vclone {

// What a stage did: timing, resolved config digest, losses, outputs.
struct RunRecord {
  std::string stage;
  std::string started_at;  // UTC, ISO 8601
  std::string finished_at;
  double seconds = 0.0;
  std::string config_hash;
  uint64_t seed = 0;
  std::map<std::string, double> losses;
  std::map<std::string, std::vector<double>> curves;
  std::map<std::string, std::string> info;
  std::vector<std::string> artifacts;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  std::string ToJson() const;
  static RunRecord FromJson(const std::string& text);
};

std::string UtcTimestamp();

void WriteRunRecord(const std::string& path, const RunRecord& record);
RunRecord ReadRunRecord(const std::string& path);

}  // namespace vclone

#endif  // VCLONE_PIPELINE_RUN_RECORD_H_
