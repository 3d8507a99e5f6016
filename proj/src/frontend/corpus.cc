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

#include "frontend/corpus.h"

#include <filesystem>

#include "common/binary_io.h"
#include "common/error.h"
#include "common/hash.h"
#include "frontend/alignment.h"
#include "frontend/features.h"

namespace vclone {

namespace fs = std::filesystem;

uint64_t FrontendOptions::Hash() const {
  Fnv1a h;
  const uint64_t mel_hash = mel.Hash();
  h.Update(&mel_hash, sizeof(mel_hash));
  const std::string audio_canon =
      "sr=" + std::to_string(audio.target_sample_rate) +
      ";loudness=" + std::to_string(static_cast<int>(audio.loudness)) +
      ";peak=" + std::to_string(audio.peak_target) +
      ";rms=" + std::to_string(audio.rms_target);
  h.Update(audio_canon);
  return h.Digest();
}

std::string MelFeaturePath(const std::string& dir, const std::string& id) {
  return (fs::path(dir) / (id + ".mel")).string();
}
std::string DurationFeaturePath(const std::string& dir, const std::string& id) {
  return (fs::path(dir) / (id + ".dur")).string();
}
std::string WaveFeaturePath(const std::string& dir, const std::string& id) {
  return (fs::path(dir) / (id + ".pcm")).string();
}
std::string FeatureDirFor(const std::string& manifest_path) {
  return (fs::path(manifest_path).parent_path() / "features").string();
}

TrainingUtterance EnsureFeatures(const UtteranceRecord& record,
                                 const std::string& feature_dir,
                                 const PhoneInventory& inventory,
                                 const FrontendOptions& options,
                                 bool* cache_hit) {
  const MelConfig& mc = options.mel;
  const double frame_period = static_cast<double>(mc.hop) / mc.sample_rate;
  const std::string audio_bytes = ReadFileBytes(record.audio);
  const std::string align_bytes = ReadFileBytes(record.alignment);
  const uint64_t audio_hash = HashBytes(audio_bytes);
  Fnv1a dur_hasher;
  dur_hasher.Update(audio_bytes);
  dur_hasher.Update(align_bytes);
  const uint64_t dur_hash = dur_hasher.Digest();
  const uint64_t dsp_hash = options.Hash();

  AlignmentParseOptions parse;
  parse.inventory = &inventory;
  parse.frame_period = frame_period;
  const AlignmentTier tier = ParseAlignment(align_bytes, parse);

  TrainingUtterance utt;
  utt.id = record.id;
  utt.speaker = record.speaker;
  utt.phone_ids = inventory.Encode(tier.Phones());

  const std::string mel_path = MelFeaturePath(feature_dir, record.id);
  const std::string dur_path = DurationFeaturePath(feature_dir, record.id);
  const std::string wave_path = WaveFeaturePath(feature_dir, record.id);
  auto fresh = [dsp_hash](const std::string& path, uint64_t source) {
    const auto h = PeekFeatureHeader(path);
    return h && h->source_hash == source && h->dsp_hash == dsp_hash;
  };
  if (fresh(mel_path, audio_hash) && fresh(dur_path, dur_hash) &&
      fresh(wave_path, audio_hash)) {
    try {
      utt.mel = ReadFeature(mel_path).values;
      const Tensor dur = ReadFeature(dur_path).values;
      const Tensor wave = ReadFeature(wave_path).values;
      utt.durations.assign(dur.values().begin(), dur.values().end());
      utt.wave.assign(wave.values().begin(), wave.values().end());
      if (utt.durations.size() == utt.phone_ids.size()) {
        if (cache_hit) *cache_hit = true;
        return utt;
      }
    } catch (const Error&) {
      // Damaged cache entry; recompute below.
    }
  }
  if (cache_hit) *cache_hit = false;

  const Waveform wave = PrepareAudio(ParseWav(audio_bytes), options.audio);
  Require(wave.sample_rate == mc.sample_rate, ErrorCode::kConfigInvalid,
          "audio target rate differs from the mel sample rate");
  const MelExtractor extractor(mc);
  utt.mel = extractor.Compute(wave.samples);
  const int frames = utt.mel.rows();
  CheckAlignmentCoversAudio(tier, wave.seconds(), frame_period);
  utt.durations = DurationsToFrames(tier, mc.hop, mc.sample_rate, frames);
  utt.wave = wave.samples;
  utt.wave.resize(static_cast<size_t>(frames) * mc.hop, 0.0);

  FeatureHeader h;
  h.hop = static_cast<uint32_t>(mc.hop);
  h.win = static_cast<uint32_t>(mc.n_fft);
  h.sample_rate = static_cast<uint32_t>(mc.sample_rate);
  h.dsp_hash = dsp_hash;

  h.kind = FeatureKind::kMel;
  h.dtype = FeatureDtype::kFloat64;
  h.rows = static_cast<uint32_t>(frames);
  h.cols = static_cast<uint32_t>(mc.n_mels);
  h.source_hash = audio_hash;
  WriteFeature(mel_path, h, utt.mel);

  h.kind = FeatureKind::kDurations;
  h.dtype = FeatureDtype::kInt32;
  h.rows = 1;
  h.cols = static_cast<uint32_t>(utt.durations.size());
  h.source_hash = dur_hash;
  WriteFeature(dur_path, h,
               Tensor({1, static_cast<int>(utt.durations.size())},
                      std::vector<double>(utt.durations.begin(),
                                          utt.durations.end())));

  h.kind = FeatureKind::kWaveform;
  h.dtype = FeatureDtype::kFloat32;
  h.rows = 1;
  h.cols = static_cast<uint32_t>(utt.wave.size());
  h.source_hash = audio_hash;
  // Stored as float32; reload so the in-memory copy matches the cache.
  const Tensor wave_tensor({1, static_cast<int>(utt.wave.size())}, utt.wave);
  const std::string encoded = EncodeFeature(h, wave_tensor);
  WriteFileAtomic(wave_path, encoded);
  const Tensor rounded = DecodeFeature(encoded).values;
  utt.wave.assign(rounded.values().begin(), rounded.values().end());
  return utt;
}

PrepareSummary PrepareCorpus(const std::string& corpus_dir,
                             const std::string& out_dir, const Lexicon& lexicon,
                             const FrontendOptions& options) {
  Manifest manifest = BuildManifest(corpus_dir);
  const PhoneInventory inventory = lexicon.Inventory();
  const std::string feature_dir = (fs::path(out_dir) / "features").string();
  fs::create_directories(feature_dir);

  PrepareSummary summary;
  summary.skip_reasons = manifest.skipped;
  Manifest kept;
  for (const auto& record : manifest.records) {
    try {
      bool hit = false;
      const TrainingUtterance utt =
          EnsureFeatures(record, feature_dir, inventory, options, &hit);
      summary.total_frames += utt.mel.rows();
      hit ? ++summary.cache_hits : ++summary.computed;
      kept.records.push_back(record);
    } catch (const Error& e) {
      summary.skip_reasons.push_back(record.id + ": " + e.what());
    }
  }
  for (const auto& s : manifest.speakers) {
    for (const auto& r : kept.records) {
      if (r.speaker == s.name) {
        kept.speakers.push_back(s);
        break;
      }
    }
  }
  if (kept.records.empty()) {
    Fail(ErrorCode::kEmptyCorpus, "every utterance under " + corpus_dir +
                                      " was skipped");
  }
  summary.kept = static_cast<int>(kept.records.size());
  summary.skipped = static_cast<int>(summary.skip_reasons.size());
  summary.speakers = static_cast<int>(kept.speakers.size());
  summary.manifest_path = (fs::path(out_dir) / "manifest.jsonl").string();
  WriteManifest(kept, summary.manifest_path);
  return summary;
}

std::vector<TrainingUtterance> LoadUtterances(const Manifest& manifest,
                                              const std::string& feature_dir,
                                              const PhoneInventory& inventory,
                                              const FrontendOptions& options) {
  std::vector<TrainingUtterance> out;
  out.reserve(manifest.records.size());
  for (const auto& record : manifest.records) {
    out.push_back(EnsureFeatures(record, feature_dir, inventory, options));
  }
  return out;
}

}  // namespace vclone
