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

// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acoustic/acoustic_trainer.h"
#include "acoustic/length_regulator.h"
#include "common/binary_io.h"
#include "common/rng.h"
#include "dsp/mel.h"
#include "dsp/stft.h"
#include "dsp/wav.h"
#include "duration/duration_model.h"
#include "frontend/alignment.h"
#include "frontend/corpus.h"
#include "frontend/lexicon.h"
#include "frontend/manifest.h"
#include "pipeline/checkpoint.h"
#include "pipeline/model_io.h"
#include "pipeline/stages.h"
#include "pipeline/toy_corpus.h"
#include "test_util.h"
#include "vocoder/griffin_lim.h"
#include "vocoder/vocoder_trainer.h"

namespace vclone {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Loads the first utterance of a one-voice toy corpus.
TrainingUtterance ToyUtterance(const TempDir& dir, uint64_t seed, int words) {
  ToyCorpusOptions o;
  o.voices = {{"voice", 140.0, 1.0, "high"}};
  o.utterances_per_voice = 1;
  o.min_words = words;
  o.max_words = words;
  o.seed = seed;
  WriteToyCorpus(dir / "corpus", o);
  const Lexicon lexicon = Lexicon::Parse(ToyLexiconText());
  const FrontendOptions fo;
  const PrepareSummary s = PrepareCorpus(dir / "corpus", dir / "prepared", lexicon, fo);
  return LoadUtterances(ReadManifest(s.manifest_path), FeatureDirFor(s.manifest_path),
                        lexicon.Inventory(), fo)
      .front();
}

// ---------------------------------------------------------------------------

Outcome DurationConservation() {
  Outcome out;
  Rng rng(2026);
  int cases = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int phones = 1 + rng.UniformInt(40);
    const double seconds = 0.05 + 6.0 * rng.Uniform();
    std::vector<double> cuts = {0.0, seconds};
    for (int i = 0; i < phones - 1; ++i) cuts.push_back(rng.Uniform() * seconds);
    std::sort(cuts.begin(), cuts.end());
    AlignmentTier tier;
    for (int i = 0; i < phones; ++i) tier.intervals.push_back({"aa", cuts[i], cuts[i + 1]});
    const int natural = static_cast<int>(std::lround(seconds * 22050.0 / 256.0));
    const int target = std::max(phones, natural + rng.UniformInt(5) - 2);
    const std::vector<int> frames = DurationsToFrames(tier, 256, 22050, target);
    int sum = 0;
    bool positive = true;
    for (int f : frames) {
      sum += f;
      positive = positive && f >= 1;
    }
    out.Expect(frames.size() == static_cast<size_t>(phones) && sum == target && positive,
               "trial " + std::to_string(trial));
    ++cases;
  }
  out.detail = std::to_string(cases) + " tiers" + (out.pass ? "" : ": " + out.detail);
  return out;
}

Outcome LengthRegulatorOracle() {
  Outcome out;
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int l = 1 + rng.UniformInt(20);
    std::vector<int> durations(l);
    for (int& d : durations) d = 1 + rng.UniformInt(10);
    const Tensor enc = NormalTensor({l, 5}, 1.0, rng);
    const Tensor spk = NormalTensor({1, 3}, 1.0, rng);
    const Tensor got = LengthRegulate(enc, durations, spk);
    std::vector<double> expected;
    for (int i = 0; i < l; ++i) {
      for (int j = 0; j < durations[i]; ++j) {
        for (int c = 0; c < 5; ++c) expected.push_back(enc.at(i, c));
        expected.push_back(durations[i] == 1 ? 0.0 : double(j) / (durations[i] - 1));
        for (int c = 0; c < 3; ++c) expected.push_back(spk.at(0, c));
      }
    }
    out.Expect(got.values() == expected, "case " + std::to_string(trial));
  }
  if (out.pass) out.detail = "500 cases exact";
  return out;
}

Outcome GradientChecks() {
  Outcome out;
  AcousticConfig ac;
  ac.vocab_size = 8;
  ac.embedding_dim = 8;
  ac.encoder_channels = 8;
  ac.encoder_kernel = 3;
  ac.encoder_layers = 2;
  ac.encoder_hidden = 4;
  ac.speaker_count = 2;
  ac.speaker_dim = 4;
  ac.prenet_dims = {8, 8};
  ac.decoder_hidden = 8;
  ac.postnet_channels = 8;
  ac.postnet_kernel = 3;
  ac.postnet_layers = 3;
  ac.mel_dim = 8;
  const AcousticModel am(ac, 11);
  const std::vector<int> ids = {1, 5, 2, 7};
  const std::vector<int> durations = {1, 2, 1, 2};
  Rng rng(3);
  const Tensor gt = NormalTensor({6, 8}, 1.0, rng);
  DecodeOptions o;
  o.seed = 5;
  const auto ra = testing::CheckGradients(am.Parameters(), [&] {
    return AcousticLoss(am.TeacherForced(am.Expand(ids, durations, 1), gt, o), gt);
  });
  out.Expect(ra.worst_relative < 1e-4, "acoustic " + ra.worst_param);

  DurationConfig dc;
  dc.vocab_size = 8;
  dc.embedding_dim = 8;
  dc.hidden = 8;
  const DurationModel dm(dc, 12);
  const std::vector<int> target = {3, 1, 6, 2, 9, 4};
  const std::vector<int> dids = {0, 3, 7, 1, 1, 5};
  const auto rd = testing::CheckGradients(dm.Parameters(), [&] {
    return DurationLoss(dm.Forward(dids), target);
  });
  out.Expect(rd.worst_relative < 1e-4, "duration " + rd.worst_param);
  out.detail = "acoustic rel " + Num(ra.worst_relative) + " over " +
               std::to_string(ra.checked) + " params, duration rel " +
               Num(rd.worst_relative) + " over " + std::to_string(rd.checked) +
               (out.pass ? "" : " (" + out.detail + ")");
  return out;
}

Outcome DspRoundTrip() {
  Outcome out;
  std::vector<double> sine(22050);
  // Crest start: reflect padding then continues the waveform smoothly.
  for (size_t i = 0; i < sine.size(); ++i) {
    sine[i] = 0.5 * std::sin(2 * M_PI * 440.0 * i / 22050.0 + M_PI / 2);
  }
  const MelConfig config;
  MelExtractor ex(config);
  const Tensor mel = ex.Compute(sine);
  // Band whose triangle peaks nearest 440 Hz on the Slaney scale.
  const auto slaney = [](double hz) {
    return hz < 1000.0 ? hz * 3.0 / 200.0
                       : 15.0 + std::log(hz / 1000.0) / (std::log(6.4) / 27.0);
  };
  const double step = slaney(config.fmax) / (config.n_mels + 1);
  const int band = static_cast<int>(std::lround(slaney(440.0) / step)) - 1;
  for (int t = 0; t < mel.rows(); ++t) {
    int arg = 0;
    for (int b = 1; b < mel.cols(); ++b) {
      if (mel.at(t, b) > mel.at(t, arg)) arg = b;
    }
    out.Expect(arg == band, "frame " + std::to_string(t) + " argmax " + std::to_string(arg));
  }
  const GriffinLimResult gl = GriffinLim(mel, 60, config);
  const auto spec = StftNoPad(gl.samples, StftConfig{});
  std::vector<double> mag(spec.cols(), 0.0);
  for (int t = 0; t < spec.rows(); ++t) {
    for (int k = 0; k < spec.cols(); ++k) mag[k] += std::abs(spec(t, k));
  }
  const int peak = static_cast<int>(std::max_element(mag.begin(), mag.end()) - mag.begin());
  const double expected_bin = 440.0 * config.n_fft / config.sample_rate;
  out.Expect(std::abs(peak - expected_bin) <= 1.0, "peak bin " + std::to_string(peak));
  out.detail = "mel band " + std::to_string(band) + ", reconstruction peak bin " +
               std::to_string(peak) + " vs " + Num(expected_bin) +
               (out.pass ? "" : " (" + out.detail + ")");
  return out;
}

Outcome AcousticOverfit() {
  Outcome out;
  TempDir dir("accept_acoustic");
  const TrainingUtterance u = ToyUtterance(dir, 3, 3);
  AcousticConfig c;
  c.vocab_size = Lexicon::Parse(ToyLexiconText()).Inventory().size();
  AcousticModel model(c, 1);
  AcousticExample ex{u.phone_ids, u.durations, 0, u.mel};
  model.SetOutputBias(MeanFrame({ex}));
  AcousticTrainOptions o;
  o.steps = 2000;
  o.batch_size = 1;
  o.learning_rate = 2e-3;
  o.final_lr_ratio = 0.01;
  const AcousticTrainReport r = TrainAcoustic(&model, {ex}, o);
  out.Expect(r.final_loss < 0.01, "teacher-forced loss " + Num(r.final_loss));
  NoGradGuard no_grad;
  DecodeOptions decode;
  decode.seed = 5;
  const Tensor mel =
      model.Autoregressive(model.Expand(u.phone_ids, u.durations, 0), decode)
          .after_postnet.value();
  const double mae = (mel.AsMatrix() - u.mel.AsMatrix()).cwiseAbs().mean();
  out.Expect(mae < 0.5, "autoregressive MAE " + Num(mae));
  out.detail = "T=" + std::to_string(u.mel.rows()) + ", teacher-forced loss " +
               Num(r.final_loss) + " after " + std::to_string(r.steps) +
               " steps, autoregressive MAE " + Num(mae);
  return out;
}

Outcome VocoderOverfit() {
  Outcome out;
  TempDir dir("accept_vocoder");
  const TrainingUtterance u = ToyUtterance(dir, 4, 4);
  // Exactly one second of the utterance, looped if it is shorter.
  std::vector<double> second(22050);
  for (size_t i = 0; i < second.size(); ++i) second[i] = u.wave[i % u.wave.size()];
  MelExtractor ex;
  const Tensor mel = ex.Compute(second);
  second.resize(static_cast<size_t>(mel.rows()) * 256, 0.0);
  const VocoderPair pair{mel, second};
  Generator generator(GeneratorConfig{}, 1);
  Discriminators critics(DiscriminatorConfig{}, 2);
  // Overfitting a single pair: train on all of it rather than random crops.
  VocoderTrainOptions o;
  o.segment_frames = mel.rows();
  o.learning_rate = 1e-3;
  o.final_lr_ratio = 0.1;
  const VocoderTrainReport r = TrainVocoder(&generator, &critics, {pair}, 1000, o);
  out.Expect(r.final_mel_error < 1.0, "mel MAE " + Num(r.final_mel_error));
  bool lengths = true;
  Rng rng(9);
  for (int t = 1; t <= 64; ++t) {
    const Tensor m = NormalTensor({t, 80}, 1.0, rng);
    lengths = lengths && generator.Generate(m).size() == static_cast<size_t>(t) * 256;
  }
  out.Expect(lengths, "length contract");
  out.detail = "T=" + std::to_string(mel.rows()) + ", mel MAE " +
               Num(r.initial_mel_error) + " -> " + Num(r.final_mel_error) +
               " in 1000 steps, lengths T*256 for T=1..64 " + (lengths ? "hold" : "broken");
  return out;
}

Outcome EndToEnd() {
  Outcome out;
  TempDir dir("accept_e2e");
  ToyCorpusOptions train;
  train.voices = {{"spk1", 120.0, 1.0, "high"}, {"spk2", 190.0, 1.15, "high"}};
  train.utterances_per_voice = 20;
  train.seed = 1;
  WriteToyCorpus(dir / "corpus", train);
  ToyCorpusOptions target;
  target.voices = {{"target1", 160.0, 0.9, "high"}};
  target.utterances_per_voice = 10;
  target.seed = 77;
  WriteToyCorpus(dir / "target", target);
  std::ofstream(dir / "lexicon.txt") << ToyLexiconText();
  const Config config = Config::Parse(
      "[paths]\ncorpus = " + dir / "corpus" + "\ntarget_corpus = " + dir / "target" +
      "\nlexicon = " + dir / "lexicon.txt" + "\nout_dir = " + dir / "out" +
      "\n[adapt]\nacoustic_steps = 3000\nvocoder_steps = 3000\n");
  const auto log = [](const std::string& line) {
    if (line.find("step=") == std::string::npos ||
        line.find("000 ") != std::string::npos) {
      std::fprintf(stderr, "  %s\n", line.c_str());
    }
  };
  const RunRecord s1 = RunTrainStage(config, log);
  const RunRecord s2 = RunAdaptStage(config, log);
  const double pre = s2.losses.at("acoustic_pre_adaptation");
  const double post = s2.losses.at("acoustic_post_adaptation");
  out.Expect(post < pre, "adapted loss " + Num(post) + " not below " + Num(pre));
  const std::vector<std::string> texts = {"abc def", "hag, bed.", "faced a cab"};
  const RunRecord s3 = RunSynthStage(config, texts, log);
  out.Expect(s3.artifacts.size() == texts.size() && s3.errors.empty(), "wav count");
  for (size_t i = 0; i < s3.artifacts.size(); ++i) {
    const WavData wav = ParseWav(ReadFileBytes(s3.artifacts[i]));
    const double frames = std::stod(s3.info.at("frames_" + std::to_string(i)));
    bool finite = true;
    double peak = 0.0;
    for (double s : wav.samples) {
      finite = finite && std::isfinite(s);
      peak = std::max(peak, std::abs(s));
    }
    out.Expect(wav.sample_rate == 22050 && finite && peak > 0.0,
               "wav " + std::to_string(i) + " unplayable");
    out.Expect(std::abs(static_cast<double>(wav.samples.size()) - frames * 256) <= 256,
               "wav " + std::to_string(i) + " length");
  }
  out.detail = "stage1 acoustic " + Num(s1.losses.at("acoustic_initial")) + " -> " +
               Num(s1.losses.at("acoustic_final")) + ", target loss " + Num(pre) +
               " -> " + Num(post) + ", vocoder mel " +
               Num(s2.losses.at("vocoder_mel_error_initial")) + " -> " +
               Num(s2.losses.at("vocoder_mel_error_final")) + ", " +
               std::to_string(s3.artifacts.size()) + " wavs" +
               (out.pass ? "" : " (" + out.detail + ")");
  return out;
}

Outcome DecodeEquivalence() {
  Outcome out;
  AcousticConfig c;
  c.vocab_size = 10;
  const AcousticModel model(c, 3);
  Rng rng(4);
  for (int t = 1; t <= 8; ++t) {
    std::vector<int> ids;
    std::vector<int> durations;
    int left = t;
    while (left > 0) {
      const int d = std::min(left, 1 + rng.UniformInt(3));
      ids.push_back(rng.UniformInt(10));
      durations.push_back(d);
      left -= d;
    }
    const Var expanded = model.Expand(ids, durations, 0);
    const Tensor gt = NormalTensor({t, 80}, 1.0, rng);
    DecodeOptions o;
    o.prenet_dropout = false;
    const MelPrediction tf = model.TeacherForced(expanded, gt, o);
    const MelPrediction ar = model.Autoregressive(expanded, o, &gt);
    out.Expect(tf.before_postnet.value().values() == ar.before_postnet.value().values() &&
                   tf.after_postnet.value().values() == ar.after_postnet.value().values(),
               "T=" + std::to_string(t));
  }
  if (out.pass) out.detail = "bitwise equal for T=1..8";
  return out;
}

Outcome Persistence() {
  Outcome out;
  TempDir dir("accept_ckpt");
  const std::vector<std::string> phones = {"SIL", "SP", "AA", "EH"};
  DurationConfig dc;
  dc.vocab_size = 4;
  dc.embedding_dim = 8;
  dc.hidden = 8;
  AcousticConfig ac;
  ac.vocab_size = 4;
  GeneratorConfig gc;
  DiscriminatorConfig xc;
  const DurationModel dm(dc, 1);
  const AcousticModel am(ac, 2, {"a", "b"});
  const Generator gm(gc, 3);
  const Discriminators xm(xc, 4);
  const std::vector<std::pair<std::string, Checkpoint>> ckpts = {
      {"duration", MakeCheckpoint(dm, phones, 1)},
      {"acoustic", MakeCheckpoint(am, phones, 2)},
      {"generator", MakeCheckpoint(gm, 3)},
      {"discriminator", MakeCheckpoint(xm, 4)}};
  const auto same = [](const NamedParams& a, const NamedParams& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].first != b[i].first ||
          a[i].second.value().shape() != b[i].second.value().shape() ||
          a[i].second.value().values() != b[i].second.value().values()) {
        return false;
      }
    }
    return true;
  };
  int rejected = 0;
  int corruptions = 0;
  Rng rng(8);
  for (const auto& [name, ckpt] : ckpts) {
    const std::string path = dir / (name + ".ckpt");
    SaveCheckpoint(path, ckpt);
    const Checkpoint loaded = LoadCheckpoint(path);
    bool ok = false;
    switch (loaded.kind) {
      case CheckpointKind::kDuration:
        ok = same(dm.Parameters(), RestoreDurationModel(loaded).Parameters());
        break;
      case CheckpointKind::kAcoustic:
        ok = same(am.Parameters(), RestoreAcousticModel(loaded).Parameters());
        break;
      case CheckpointKind::kGenerator:
        ok = same(gm.Parameters(), RestoreGenerator(loaded).Parameters());
        break;
      case CheckpointKind::kDiscriminator:
        ok = same(xm.Parameters(), RestoreDiscriminators(loaded).Parameters());
        break;
    }
    out.Expect(ok, name + " round trip");
    const std::string bytes = ReadFileBytes(path);
    std::vector<std::string> damaged = {bytes.substr(0, bytes.size() / 3),
                                        bytes.substr(0, bytes.size() - 1)};
    for (int k = 0; k < 8; ++k) {
      std::string flipped = bytes;
      flipped[12 + rng.UniformInt(static_cast<int>(bytes.size()) - 12)] ^= 0x10;
      damaged.push_back(flipped);
    }
    for (const auto& bad : damaged) {
      const std::string bad_path = dir / (name + ".bad");
      WriteFileAtomic(bad_path, bad);
      ++corruptions;
      try {
        LoadCheckpoint(bad_path);
      } catch (const Error& e) {
        if (e.category() == ErrorCategory::kCheckpoint &&
            e.code() == ErrorCode::kCorruptCheckpoint) {
          ++rejected;
        }
      }
    }
  }
  out.Expect(rejected == corruptions, "rejected " + std::to_string(rejected) + "/" +
                                          std::to_string(corruptions));
  out.detail = "4 kinds identical after reload, " + std::to_string(rejected) + "/" +
               std::to_string(corruptions) + " damaged files rejected as " +
               CategoryName(ErrorCategory::kCheckpoint) +
               (out.pass ? "" : " (" + out.detail + ")");
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace vclone

int main(int argc, char** argv) {
  using namespace vclone;
  const std::vector<Criterion> criteria = {
      {1, "duration conservation", 10, DurationConservation},
      {2, "length regulator oracle", 10, LengthRegulatorOracle},
      {3, "gradient checks", 60, GradientChecks},
      {4, "dsp round trip", 30, DspRoundTrip},
      {5, "acoustic overfit", 600, AcousticOverfit},
      {6, "vocoder overfit", 900, VocoderOverfit},
      {7, "three-stage end to end", 2700, EndToEnd},
      {8, "teacher-forced/autoregressive equivalence", 10, DecodeEquivalence},
      {9, "persistence", 10, Persistence},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("threw: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      o.pass = false;
      o.detail += " (over the " + Num(c.budget_seconds) + " s budget)";
    }
    std::printf("[%s] criterion %d: %s | %s | %.1f s\n", o.pass ? "PASS" : "FAIL",
                c.id, c.name, o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
