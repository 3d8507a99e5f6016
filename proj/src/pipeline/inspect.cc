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

#include "pipeline/inspect.h"

#include <filesystem>
#include <map>

#include "common/binary_io.h"
#include "common/error.h"
#include "common/hash.h"
#include "frontend/features.h"
#include "frontend/manifest.h"
#include "json.hpp"
#include "pipeline/checkpoint.h"
#include "pipeline/run_record.h"

namespace vclone {

namespace {

using json = nlohmann::json;

const char* DtypeName(FeatureDtype d) {
  switch (d) {
    case FeatureDtype::kFloat32: return "float32";
    case FeatureDtype::kFloat64: return "float64";
    case FeatureDtype::kInt32: return "int32";
  }
  return "unknown";
}

json CheckpointReport(const Checkpoint& c) {
  json j;
  j["type"] = "checkpoint";
  j["kind"] = CheckpointKindName(c.kind);
  j["version"] = c.version;
  j["config_hash"] = HexDigest(c.config_hash);
  j["step"] = c.step;
  j["speaker_count"] = c.speakers.size();
  j["speakers"] = c.speakers;
  int64_t params = 0;
  json tensors = json::array();
  for (const auto& [name, t] : c.tensors) {
    params += t.size();
    tensors.push_back({{"name", name}, {"shape", t.shape()}});
  }
  j["tensor_count"] = c.tensors.size();
  j["parameters"] = params;
  j["tensors"] = tensors;
  j["config"] = json::parse(c.config_json, nullptr, false);
  return j;
}

json FeatureReport(const Feature& f) {
  const FeatureHeader& h = f.header;
  return {{"type", "feature"},
          {"kind", FeatureKindName(h.kind)},
          {"version", kFeatureFormatVersion},
          {"dtype", DtypeName(h.dtype)},
          {"rows", h.rows},
          {"cols", h.cols},
          {"hop", h.hop},
          {"win", h.win},
          {"sample_rate", h.sample_rate},
          {"source_hash", HexDigest(h.source_hash)},
          {"dsp_hash", HexDigest(h.dsp_hash)}};
}

json ManifestReport(const Manifest& m) {
  std::map<std::string, int> per_speaker;
  for (const auto& r : m.records) ++per_speaker[r.speaker];
  json speakers = json::array();
  for (const auto& s : m.speakers) {
    speakers.push_back({{"name", s.name},
                        {"quality", s.quality},
                        {"utterances", per_speaker[s.name]}});
  }
  return {{"type", "manifest"},
          {"utterances", m.records.size()},
          {"speaker_count", m.speakers.size()},
          {"speakers", speakers}};
}

bool IsManifestText(const std::string& bytes) {
  const size_t end = bytes.find('\n');
  const json first = json::parse(bytes.substr(0, end), nullptr, false);
  return first.is_object() && first.contains("id") &&
         first.contains("speaker");
}

}  // namespace

std::string InspectArtifact(const std::string& path) {
  Require(std::filesystem::is_regular_file(path), ErrorCode::kIo,
          "no such file: " + path);
  const std::string bytes = ReadFileBytes(path);
  json report;
  if (LooksLikeCheckpoint(bytes)) {
    report = CheckpointReport(DecodeCheckpoint(bytes));
  } else if (LooksLikeFeature(bytes)) {
    report = FeatureReport(DecodeFeature(bytes));
  } else if (IsManifestText(bytes)) {
    try {
      report = ManifestReport(ReadManifest(path));
    } catch (const Error& e) {
      Fail(ErrorCode::kCorruptCheckpoint, "damaged manifest: " + e.detail());
    }
  } else {
    const json j = json::parse(bytes, nullptr, false);
    Require(j.is_object() && j.contains("stage") && j.contains("config_hash"),
            ErrorCode::kCorruptCheckpoint,
            path + " is not a recognized artifact or is corrupt");
    const RunRecord r = RunRecord::FromJson(bytes);
    report = {{"type", "run_record"},
              {"stage", r.stage},
              {"config_hash", r.config_hash},
              {"seconds", r.seconds},
              {"losses", r.losses},
              {"artifacts", r.artifacts.size()},
              {"errors", r.errors.size()},
              {"warnings", r.warnings.size()}};
  }
  report["path"] = path;
  return report.dump(2);
}

}  // namespace vclone
