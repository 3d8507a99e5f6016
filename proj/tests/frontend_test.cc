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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "common/rng.h"
#include "dsp/wav.h"
#include "frontend/alignment.h"
#include "frontend/audio.h"
#include "frontend/corpus.h"
#include "frontend/features.h"
#include "frontend/lexicon.h"
#include "frontend/manifest.h"
#include "pipeline/toy_corpus.h"
#include "test_util.h"

namespace vclone {
namespace {

using testing::CodeOf;
using testing::TempDir;

Lexicon AbLexicon() {
  return Lexicon::Parse("a\taa\nb\tbb\n,\tSP\n.\tSP\n");
}

std::vector<std::string> Symbols(const PhoneSequence& phones) {
  std::vector<std::string> out;
  for (const auto& p : phones) out.push_back(p.symbol);
  return out;
}

// Rounds, floors at one frame, then moves single frames by largest
// remainder until the total matches.
std::vector<int> OracleFrames(const AlignmentTier& tier, int hop, int sr,
                              int target) {
  std::vector<double> real;
  std::vector<int> counts;
  for (const auto& iv : tier.intervals) {
    real.push_back((iv.end - iv.start) * sr / hop);
    counts.push_back(std::max(1, static_cast<int>(std::lround(real.back()))));
  }
  int total = 0;
  for (int c : counts) total += c;
  while (total < target) {
    size_t best = 0;
    for (size_t i = 1; i < counts.size(); ++i) {
      if (real[i] - counts[i] > real[best] - counts[best]) best = i;
    }
    ++counts[best];
    ++total;
  }
  while (total > target) {
    int best = -1;
    for (size_t i = 0; i < counts.size(); ++i) {
      if (counts[i] <= 1) continue;
      if (best < 0 || counts[i] - real[i] > counts[best] - real[best]) {
        best = static_cast<int>(i);
      }
    }
    --counts[best];
    --total;
  }
  return counts;
}

AlignmentTier RandomTier(Rng& rng, int phones, double seconds) {
  std::vector<double> cuts = {0.0, seconds};
  for (int i = 0; i < phones - 1; ++i) cuts.push_back(rng.Uniform() * seconds);
  std::sort(cuts.begin(), cuts.end());
  AlignmentTier tier;
  for (int i = 0; i < phones; ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-4) cuts[i + 1] = cuts[i] + 1e-4;
    tier.intervals.push_back({"aa", cuts[i], cuts[i + 1]});
  }
  return tier;
}

TEST(TextToPhones, LooksUpGraphemesAndPunctuation) {
  EXPECT_EQ(Symbols(TextToPhones("ab, ab", AbLexicon())),
            (std::vector<std::string>{"aa", "bb", "SP", "aa", "bb"}));
}

TEST(TextToPhones, CollapsesRunsOfShortPauses) {
  EXPECT_EQ(Symbols(TextToPhones("a,,b", AbLexicon())),
            (std::vector<std::string>{"aa", "SP", "bb"}));
}

TEST(TextToPhones, ReportsUnknownGraphemeAndPosition) {
  try {
    TextToPhones("a?b", AbLexicon());
    FAIL() << "no error";
  } catch (const UnknownGraphemeError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownGrapheme);
    EXPECT_EQ(e.token(), "?");
    EXPECT_EQ(e.position(), 1);
  }
}

TEST(TextToPhones, BoundarySilenceAbsorbsEdgePauses) {
  TextToPhonesOptions o;
  o.add_boundary_silence = true;
  EXPECT_EQ(Symbols(TextToPhones(", ab.", AbLexicon(), o)),
            (std::vector<std::string>{"SIL", "aa", "bb", "SIL"}));
}

TEST(TextToPhones, RandomTextNeverRepeatsPauseOrLeavesInventory) {
  const Lexicon lex = Lexicon::Parse(ToyLexiconText());
  const PhoneInventory inv = lex.Inventory();
  Rng rng(3);
  const std::string alphabet = "abcdefgh,. ";
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const int n = 1 + static_cast<int>(rng.UniformInt(30));
    for (int i = 0; i < n; ++i) text += alphabet[rng.UniformInt(alphabet.size())];
    if (text.find_first_of("abcdefgh") == std::string::npos) text += "a";
    const PhoneSequence phones = TextToPhones(text, lex);
    ASSERT_FALSE(phones.empty());
    for (size_t i = 0; i < phones.size(); ++i) {
      EXPECT_TRUE(inv.Contains(phones[i].symbol));
      if (i > 0) {
        EXPECT_FALSE(phones[i].symbol == "SP" && phones[i - 1].symbol == "SP")
            << text;
      }
    }
  }
}

TEST(PhoneInventory, SpecialSymbolsComeFirst) {
  const PhoneInventory inv = AbLexicon().Inventory();
  EXPECT_EQ(inv.Id("SIL"), 0);
  EXPECT_EQ(inv.Id("SP"), 1);
  EXPECT_EQ(CodeOf([&] { inv.Id("zz"); }), ErrorCode::kUnknownPhone);
}

TEST(Alignment, ParsesTwoIntervals) {
  const AlignmentTier tier = ParseAlignment("0.00 0.10 SIL\n0.10 0.25 aa\n");
  ASSERT_EQ(tier.intervals.size(), 2u);
  EXPECT_EQ(tier.intervals[1].phone, "aa");
  EXPECT_DOUBLE_EQ(tier.intervals[1].end, 0.25);
}

TEST(Alignment, RejectsOverlapAndEmptyInput) {
  EXPECT_EQ(CodeOf([] { ParseAlignment("0.0\t0.2\taa\n0.1\t0.3\tbb\n"); }),
            ErrorCode::kOverlappingIntervals);
  EXPECT_EQ(CodeOf([] { ParseAlignment(""); }),
            ErrorCode::kMalformedAlignment);
  EXPECT_EQ(CodeOf([] { ParseAlignment("0.0\t0.1\n"); }),
            ErrorCode::kMalformedAlignment);
  EXPECT_EQ(CodeOf([] { ParseAlignment("0.2\t0.1\taa\n"); }),
            ErrorCode::kMalformedAlignment);
}

TEST(Alignment, RejectsPhonesOutsideInventory) {
  const PhoneInventory inv = AbLexicon().Inventory();
  AlignmentParseOptions o;
  o.inventory = &inv;
  EXPECT_EQ(CodeOf([&] { ParseAlignment("0.0\t0.1\tqq\n", o); }),
            ErrorCode::kUnknownPhone);
}

TEST(Alignment, SerializeRoundTrip) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const AlignmentTier tier =
        RandomTier(rng, 1 + static_cast<int>(rng.UniformInt(15)),
                   0.2 + 3.0 * rng.Uniform());
    EXPECT_EQ(ParseAlignment(SerializeAlignment(tier)), tier);
  }
}

TEST(DurationsToFrames, NearlyTwoFramesRoundsToTarget) {
  AlignmentTier tier;
  tier.intervals.push_back({"aa", 0.0, 0.0232});
  EXPECT_EQ(DurationsToFrames(tier, 256, 22050, 2), std::vector<int>{2});
}

TEST(DurationsToFrames, EqualIntervalsGetEqualCounts) {
  AlignmentTier tier;
  const double frame = 256.0 / 22050.0;
  for (int i = 0; i < 4; ++i) {
    tier.intervals.push_back({"aa", 5 * i * frame, 5 * (i + 1) * frame});
  }
  EXPECT_EQ(DurationsToFrames(tier, 256, 22050, 20),
            (std::vector<int>{5, 5, 5, 5}));
}

TEST(DurationsToFrames, MorePhonesThanFramesIsInfeasible) {
  Rng rng(1);
  const AlignmentTier tier = RandomTier(rng, 5, 0.05);
  EXPECT_EQ(CodeOf([&] { DurationsToFrames(tier, 256, 22050, 3); }),
            ErrorCode::kInfeasibleDurations);
}

TEST(DurationsToFrames, MatchesRoundingOracleAndConservesFrames) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int phones = 1 + static_cast<int>(rng.UniformInt(25));
    const double seconds = 0.1 + 4.0 * rng.Uniform();
    const AlignmentTier tier = RandomTier(rng, phones, seconds);
    const int natural = static_cast<int>(std::lround(seconds * 22050 / 256));
    const int target =
        std::max(phones, natural + static_cast<int>(rng.UniformInt(5)) - 2);
    const std::vector<int> got = DurationsToFrames(tier, 256, 22050, target);
    EXPECT_EQ(got, OracleFrames(tier, 256, 22050, target));
    int sum = 0;
    for (int c : got) {
      EXPECT_GE(c, 1);
      sum += c;
    }
    EXPECT_EQ(sum, target);
  }
}

TEST(Audio, ResamplesToHalfLength) {
  for (int n : {44100, 44101, 1000, 12345}) {
    WavData wav;
    wav.sample_rate = 44100;
    wav.channels = 1;
    wav.bits_per_sample = 16;
    for (int i = 0; i < n; ++i) wav.samples.push_back(0.3 * std::sin(0.01 * i));
    const Waveform out = PrepareAudio(wav);
    EXPECT_EQ(out.sample_rate, 22050);
    EXPECT_NEAR(static_cast<double>(out.samples.size()), std::round(n / 2.0),
                1.0);
  }
}

TEST(Audio, PeakNormalisesToTarget) {
  WavData wav;
  wav.sample_rate = 22050;
  wav.channels = 1;
  for (int i = 0; i < 2000; ++i) wav.samples.push_back(0.5 * std::sin(0.05 * i));
  double peak_in = 0.0;
  for (double s : wav.samples) peak_in = std::max(peak_in, std::abs(s));
  const Waveform out = PrepareAudio(wav);
  double peak = 0.0;
  for (double s : out.samples) peak = std::max(peak, std::abs(s));
  EXPECT_NEAR(peak, 0.95, 1e-12);
  EXPECT_NEAR(out.samples[7] / wav.samples[7], 0.95 / peak_in, 1e-12);
}

TEST(Audio, RmsModeNeverClips) {
  WavData wav;
  wav.sample_rate = 22050;
  for (int i = 0; i < 2000; ++i) wav.samples.push_back(i == 5 ? 0.9 : 0.001);
  AudioOptions o;
  o.loudness = LoudnessMode::kRms;
  o.rms_target = 0.5;
  const Waveform out = PrepareAudio(wav, o);
  for (double s : out.samples) EXPECT_LE(std::abs(s), 1.0);
}

TEST(Audio, EmptyInputIsRejected) {
  WavData wav;
  wav.sample_rate = 22050;
  EXPECT_EQ(CodeOf([&] { PrepareAudio(wav); }), ErrorCode::kEmptyAudio);
  TempDir dir("empty_wav");
  const std::string path = dir / "e.wav";
  WriteWav16(path, std::vector<double>{}, 22050);
  EXPECT_EQ(CodeOf([&] { LoadAudio(path); }), ErrorCode::kEmptyAudio);
}

TEST(Wav, Pcm16RoundTrip) {
  std::vector<double> s;
  for (int i = 0; i < 500; ++i) s.push_back(std::sin(0.1 * i) * 0.7);
  const WavData back = ParseWav(EncodeWav16(s, 16000));
  EXPECT_EQ(back.sample_rate, 16000);
  ASSERT_EQ(back.samples.size(), s.size());
  for (size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(back.samples[i], s[i], 1.0 / 32767);
  EXPECT_EQ(CodeOf([] { ParseWav("RIFF....WAVEjunk"); }),
            ErrorCode::kUnsupportedFormat);
}

TEST(Features, EncodeDecodeRoundTripAndCorruption) {
  FeatureHeader h;
  h.kind = FeatureKind::kMel;
  h.rows = 3;
  h.cols = 2;
  h.hop = 256;
  h.win = 1024;
  h.sample_rate = 22050;
  h.source_hash = 42;
  Tensor t({3, 2}, std::vector<double>{1, 2, 3, 4, 5, 6.5});
  const std::string bytes = EncodeFeature(h, t);
  const Feature f = DecodeFeature(bytes);
  EXPECT_EQ(f.values.values(), t.values());
  EXPECT_EQ(f.header.source_hash, 42u);
  std::string bad = bytes;
  bad[bad.size() / 2] ^= 0x5a;
  EXPECT_EQ(CodeOf([&] { DecodeFeature(bad); }), ErrorCode::kCorruptCheckpoint);
  EXPECT_EQ(CodeOf([&] { DecodeFeature(bytes.substr(0, 20)); }),
            ErrorCode::kCorruptCheckpoint);
}

class ToyCorpusTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ToyCorpusOptions o;
    o.voices = {{"s1", 120.0, 1.0, "high"}, {"s2", 190.0, 1.2, "low"}};
    o.utterances_per_voice = 3;
    WriteToyCorpus(dir_ / "corpus", o);
    lexicon_ = Lexicon::Parse(ToyLexiconText());
  }

  TempDir dir_{"toy"};
  Lexicon lexicon_;
};

TEST_F(ToyCorpusTest, ManifestCountsRecordsAndSpeakers) {
  const Manifest m = BuildManifest(dir_ / "corpus");
  EXPECT_EQ(m.records.size(), 6u);
  ASSERT_EQ(m.speakers.size(), 2u);
  EXPECT_EQ(m.speakers[1].quality, "low");
  EXPECT_NO_THROW(m.Validate());
  WriteManifest(m, dir_ / "m.jsonl");
  const Manifest back = ReadManifest(dir_ / "m.jsonl");
  EXPECT_EQ(back.records, m.records);
  EXPECT_EQ(back.speakers, m.speakers);
}

TEST_F(ToyCorpusTest, MissingAlignmentIsSkipped) {
  std::filesystem::remove(dir_ / "corpus/s1/utt001.align");
  const Manifest m = BuildManifest(dir_ / "corpus");
  EXPECT_EQ(m.records.size(), 5u);
  EXPECT_EQ(m.skipped.size(), 1u);
}

TEST_F(ToyCorpusTest, EmptyDirectoryIsEmptyCorpus) {
  std::filesystem::create_directories(dir_ / "nothing");
  EXPECT_EQ(CodeOf([&] { BuildManifest(dir_ / "nothing"); }),
            ErrorCode::kEmptyCorpus);
}

TEST_F(ToyCorpusTest, PreparedDurationsSumToMelFrames) {
  FrontendOptions fo;
  const PrepareSummary s =
      PrepareCorpus(dir_ / "corpus", dir_ / "out", lexicon_, fo);
  EXPECT_EQ(s.kept, 6);
  EXPECT_EQ(s.speakers, 2);
  const auto utts = LoadUtterances(ReadManifest(s.manifest_path),
                                   FeatureDirFor(s.manifest_path),
                                   lexicon_.Inventory(), fo);
  int total = 0;
  for (const auto& u : utts) {
    int sum = 0;
    for (int d : u.durations) {
      EXPECT_GE(d, 1);
      sum += d;
    }
    EXPECT_EQ(sum, u.mel.rows());
    EXPECT_EQ(u.mel.cols(), 80);
    EXPECT_EQ(u.wave.size(), static_cast<size_t>(u.mel.rows()) * 256);
    EXPECT_EQ(u.phone_ids.size(), u.durations.size());
    for (double v : u.mel.values()) EXPECT_TRUE(std::isfinite(v));
    total += u.mel.rows();
  }
  EXPECT_EQ(total, s.total_frames);
}

TEST_F(ToyCorpusTest, RerunHitsCache) {
  FrontendOptions fo;
  const PrepareSummary first =
      PrepareCorpus(dir_ / "corpus", dir_ / "out", lexicon_, fo);
  EXPECT_EQ(first.computed, 6);
  const PrepareSummary second =
      PrepareCorpus(dir_ / "corpus", dir_ / "out", lexicon_, fo);
  EXPECT_EQ(second.cache_hits, 6);
  EXPECT_EQ(second.computed, 0);
  // A different DSP configuration invalidates the cache.
  fo.audio.peak_target = 0.5;
  const PrepareSummary third =
      PrepareCorpus(dir_ / "corpus", dir_ / "out", lexicon_, fo);
  EXPECT_EQ(third.computed, 6);
}

TEST_F(ToyCorpusTest, CorruptWavIsSkippedAndReported) {
  std::ofstream(dir_ / "corpus/s2/utt002.wav", std::ios::binary) << "garbage";
  const PrepareSummary s =
      PrepareCorpus(dir_ / "corpus", dir_ / "out", lexicon_, FrontendOptions{});
  EXPECT_EQ(s.kept, 5);
  EXPECT_EQ(s.skipped, 1);
  ASSERT_EQ(s.skip_reasons.size(), 1u);
  EXPECT_NE(s.skip_reasons[0].find("s2_utt002"), std::string::npos);
}

}  // namespace
}  // namespace vclone
