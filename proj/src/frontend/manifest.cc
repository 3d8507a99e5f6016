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

#include "frontend/manifest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "common/binary_io.h"
#include "common/error.h"
#include "json.hpp"

namespace vclone {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string TrimCopy(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t b = 0;
  while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  return s.substr(b);
}

}  // namespace

int Manifest::SpeakerIndex(std::string_view name) const {
  for (size_t i = 0; i < speakers.size(); ++i) {
    if (speakers[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

void Manifest::Validate() const {
  std::set<std::string> ids;
  for (const auto& r : records) {
    Require(ids.insert(r.id).second, ErrorCode::kInvalidArgument,
            "duplicate utterance id " + r.id);
    Require(SpeakerIndex(r.speaker) >= 0, ErrorCode::kInvalidArgument,
            "utterance " + r.id + " has unknown speaker " + r.speaker);
  }
}

Manifest Manifest::FilterSpeakers(const std::vector<std::string>& names) const {
  Manifest out;
  for (const auto& s : speakers) {
    if (std::find(names.begin(), names.end(), s.name) != names.end()) {
      out.speakers.push_back(s);
    }
  }
  for (const auto& r : records) {
    if (out.SpeakerIndex(r.speaker) >= 0) out.records.push_back(r);
  }
  return out;
}

Manifest BuildManifest(const std::string& corpus_dir) {
  Require(fs::is_directory(corpus_dir), ErrorCode::kEmptyCorpus,
          "corpus directory " + corpus_dir + " does not exist");
  std::vector<fs::path> speaker_dirs;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (entry.is_directory()) speaker_dirs.push_back(entry.path());
  }
  std::sort(speaker_dirs.begin(), speaker_dirs.end());

  Manifest manifest;
  for (const fs::path& dir : speaker_dirs) {
    const std::string speaker = dir.filename().string();
    std::vector<fs::path> stems;
    std::set<std::string> seen;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      const std::string ext = entry.path().extension().string();
      if (ext != ".wav" && ext != ".txt" && ext != ".align") continue;
      if (entry.path().filename() == "quality.txt") continue;
      const fs::path stem = entry.path().parent_path() / entry.path().stem();
      if (seen.insert(stem.string()).second) stems.push_back(stem);
    }
    std::sort(stems.begin(), stems.end());
    int kept = 0;
    for (const fs::path& stem : stems) {
      const std::string id = speaker + "_" + stem.filename().string();
      fs::path wav = stem;
      wav += ".wav";
      fs::path txt = stem;
      txt += ".txt";
      fs::path align = stem;
      align += ".align";
      std::vector<std::string> missing;
      if (!fs::exists(wav)) missing.push_back("audio");
      if (!fs::exists(txt)) missing.push_back("text");
      if (!fs::exists(align)) missing.push_back("alignment");
      if (!missing.empty()) {
        std::string reason = "missing";
        for (const auto& m : missing) reason += " " + m;
        manifest.skipped.push_back(id + ": " + reason);
        continue;
      }
      UtteranceRecord r;
      r.id = id;
      r.speaker = speaker;
      r.text = TrimCopy(ReadFileBytes(txt.string()));
      r.audio = fs::absolute(wav).lexically_normal().string();
      r.alignment = fs::absolute(align).lexically_normal().string();
      manifest.records.push_back(std::move(r));
      ++kept;
    }
    if (kept > 0) {
      SpeakerInfo info;
      info.name = speaker;
      const fs::path quality = dir / "quality.txt";
      if (fs::exists(quality)) {
        const std::string q = TrimCopy(ReadFileBytes(quality.string()));
        Require(q == "high" || q == "low", ErrorCode::kInvalidArgument,
                quality.string() + " must contain 'high' or 'low'");
        info.quality = q;
      }
      manifest.speakers.push_back(std::move(info));
    }
  }
  if (manifest.records.empty()) {
    Fail(ErrorCode::kEmptyCorpus, "no complete utterances under " + corpus_dir);
  }
  manifest.Validate();
  return manifest;
}

std::string SpeakerTablePath(const std::string& manifest_path) {
  return (fs::path(manifest_path).parent_path() / "speakers.json").string();
}

void WriteManifest(const Manifest& manifest, const std::string& path) {
  std::string lines;
  for (const auto& r : manifest.records) {
    json j = {{"id", r.id},
              {"speaker", r.speaker},
              {"text", r.text},
              {"audio", r.audio},
              {"alignment", r.alignment}};
    lines += j.dump() + "\n";
  }
  WriteFileAtomic(path, lines);
  json speakers = json::array();
  for (const auto& s : manifest.speakers) {
    speakers.push_back({{"name", s.name}, {"quality", s.quality}});
  }
  json table = {{"speakers", speakers}};
  WriteFileAtomic(SpeakerTablePath(path), table.dump(2) + "\n");
}

Manifest ReadManifest(const std::string& path) {
  Require(fs::exists(path), ErrorCode::kEmptyCorpus,
          "manifest " + path + " does not exist");
  Manifest manifest;
  std::istringstream in(ReadFileBytes(path));
  std::string line;
  int line_no = 0;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (TrimCopy(line).empty()) continue;
      const json j = json::parse(line);
      UtteranceRecord r;
      r.id = j.at("id").get<std::string>();
      r.speaker = j.at("speaker").get<std::string>();
      r.text = j.at("text").get<std::string>();
      r.audio = j.at("audio").get<std::string>();
      r.alignment = j.at("alignment").get<std::string>();
      manifest.records.push_back(std::move(r));
    }
    const std::string table_path = SpeakerTablePath(path);
    if (fs::exists(table_path)) {
      const json table = json::parse(ReadFileBytes(table_path));
      for (const auto& s : table.at("speakers")) {
        SpeakerInfo info;
        info.name = s.at("name").get<std::string>();
        info.quality = s.value("quality", std::string("high"));
        manifest.speakers.push_back(std::move(info));
      }
    } else {
      for (const auto& r : manifest.records) {
        if (manifest.SpeakerIndex(r.speaker) < 0) {
          manifest.speakers.push_back({r.speaker, "high"});
        }
      }
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidArgument,
         path + " line " + std::to_string(line_no) + ": " + e.what());
  }
  manifest.Validate();
  return manifest;
}

}  // namespace vclone
