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

#include "pipeline/run_record.h"

#include <chrono>
#include <cmath>
#include <ctime>

#include "common/binary_io.h"
#include "common/error.h"
#include "json.hpp"

namespace vclone {

using nlohmann::json;

namespace {

// JSON has no NaN or infinity.
json Number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double ToDouble(const json& j) {
  return j.is_number() ? j.get<double>() : std::nan("");
}

}  // namespace

std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string RunRecord::ToJson() const {
  json j;
  j["stage"] = stage;
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  j["seconds"] = Number(seconds);
  j["config_hash"] = config_hash;
  j["seed"] = seed;
  j["losses"] = json::object();
  for (const auto& [k, v] : losses) j["losses"][k] = Number(v);
  j["curves"] = json::object();
  for (const auto& [k, values] : curves) {
    json arr = json::array();
    for (double v : values) arr.push_back(Number(v));
    j["curves"][k] = arr;
  }
  j["info"] = info;
  j["artifacts"] = artifacts;
  j["errors"] = errors;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

RunRecord RunRecord::FromJson(const std::string& text) {
  RunRecord r;
  try {
    const json j = json::parse(text);
    r.stage = j.at("stage").get<std::string>();
    r.started_at = j.value("started_at", "");
    r.finished_at = j.value("finished_at", "");
    r.seconds = j.contains("seconds") ? ToDouble(j["seconds"]) : 0.0;
    r.config_hash = j.value("config_hash", "");
    r.seed = j.value("seed", uint64_t{0});
    if (j.contains("losses")) {
      for (const auto& [k, v] : j["losses"].items()) r.losses[k] = ToDouble(v);
    }
    if (j.contains("curves")) {
      for (const auto& [k, arr] : j["curves"].items()) {
        auto& out = r.curves[k];
        for (const auto& v : arr) out.push_back(ToDouble(v));
      }
    }
    r.info = j.value("info", std::map<std::string, std::string>{});
    r.artifacts = j.value("artifacts", std::vector<std::string>{});
    r.errors = j.value("errors", std::vector<std::string>{});
    r.warnings = j.value("warnings", std::vector<std::string>{});
  } catch (const json::exception& e) {
    Fail(ErrorCode::kCorruptCheckpoint,
         std::string("run record is not valid JSON: ") + e.what());
  }
  return r;
}

void WriteRunRecord(const std::string& path, const RunRecord& record) {
  WriteFileAtomic(path, record.ToJson());
}

RunRecord ReadRunRecord(const std::string& path) {
  return RunRecord::FromJson(ReadFileBytes(path));
}

}  // namespace vclone
