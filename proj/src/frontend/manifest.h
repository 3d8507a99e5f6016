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

#ifndef VCLONE_FRONTEND_MANIFEST_H_
#define VCLONE_FRONTEND_MANIFEST_H_

#include <string>
#include <string_view>
#include <vector>

namespace vclone {

struct UtteranceRecord {
  std::string id;
  std::string speaker;
  std::string text;
  std::string audio;      // path
  std::string alignment;  // path

  bool operator==(const UtteranceRecord&) const = default;
};

struct SpeakerInfo {
  std::string name;
  std::string quality = "high";  // "high" or "low"

  bool operator==(const SpeakerInfo&) const = default;
};

struct Manifest {
  std::vector<UtteranceRecord> records;
  std::vector<SpeakerInfo> speakers;
  // "<id>: <reason>" for utterances left out.
  std::vector<std::string> skipped;

  int SpeakerIndex(std::string_view name) const;  // -1 when absent
  // Unique ids, every speaker in the table. Throws InvalidArgument.
  void Validate() const;
  Manifest FilterSpeakers(const std::vector<std::string>& names) const;
};

// Layout: <corpus>/<speaker>/<stem>.wav with sibling <stem>.txt (text) and
// <stem>.align (alignment). An optional <corpus>/<speaker>/quality.txt
// holding "low" tags the speaker as low quality. Record ids are
// "<speaker>_<stem>". Utterances missing a file are skipped and reported.
// Throws EmptyCorpus when nothing usable is found.
Manifest BuildManifest(const std::string& corpus_dir);

// JSON lines {id, speaker, text, audio, alignment} plus the speaker table in
// speakers.json next to it.
void WriteManifest(const Manifest& manifest, const std::string& path);
Manifest ReadManifest(const std::string& path);
std::string SpeakerTablePath(const std::string& manifest_path);

}  // namespace vclone

#endif  // VCLONE_FRONTEND_MANIFEST_H_
