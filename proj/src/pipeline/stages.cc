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

#include "pipeline/stages.h"

#include <chrono>
#include <cstdio>
#include <filesystem>

#include "acoustic/acoustic_trainer.h"
#include "common/error.h"
#include "common/hash.h"
#include "dsp/wav.h"
#include "duration/duration_model.h"
#include "frontend/lexicon.h"
#include "frontend/manifest.h"
#include "pipeline/checkpoint.h"
#include "pipeline/lock.h"
#include "pipeline/model_io.h"
#include "pipeline/settings.h"
#include "vocoder/vocoder_trainer.h"

namespace vclone {

namespace fs = std::filesystem;

namespace {

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void Emit(const LogFn& log, const std::string& line) {
  if (log) log(line);
}

// Resolves settings and starts a record. Unknown keys become warnings.
struct StageRun {
  Config config;
  PipelineSettings settings;
  RunRecord record;
  int log_every = 50;
  std::chrono::steady_clock::time_point start;

  StageRun(const Config& c, const std::string& stage) : config(c) {
    settings = ResolveSettings(config);
    record.stage = stage;
    record.started_at = UtcTimestamp();
    record.config_hash = HexDigest(ConfigHash(config));
    record.seed = settings.seed;
    log_every = static_cast<int>(
        std::max<int64_t>(1, config.GetInt("log.every", 50)));
    for (const auto& key : config.UnusedKeys()) {
      record.warnings.push_back("unknown config key " + key);
    }
    start = std::chrono::steady_clock::now();
  }

  void Finish(const std::string& dir) {
    record.finished_at = UtcTimestamp();
    record.seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    const std::string path = (fs::path(dir) / kRunRecordFile).string();
    WriteRunRecord(path, record);
  }
};

void RequireDir(const std::string& path, const std::string& key) {
  Require(!path.empty(), ErrorCode::kConfigInvalid, key + " is not set");
  Require(fs::is_directory(path), ErrorCode::kConfigInvalid,
          key + " = " + path + " is not a directory");
}

Lexicon LoadLexicon(const PipelineSettings& s) {
  Require(!s.lexicon.empty(), ErrorCode::kConfigInvalid,
          "paths.lexicon is not set");
  Require(fs::is_regular_file(s.lexicon), ErrorCode::kConfigInvalid,
          "paths.lexicon = " + s.lexicon + " does not exist");
  return Lexicon::Load(s.lexicon);
}

std::string InDir(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

void SaveArtifact(const std::string& path, const Checkpoint& c,
                  RunRecord* record) {
  SaveCheckpoint(path, c);
  record->artifacts.push_back(path);
}

Checkpoint LoadChecked(const std::string& path, CheckpointKind kind,
                       uint64_t expected_hash, bool force) {
  Checkpoint c = LoadCheckpoint(path);
  CheckCompatible(c, kind, expected_hash, force);
  return c;
}

std::vector<AcousticExample> AcousticExamples(
    const std::vector<TrainingUtterance>& utts, const AcousticModel& model) {
  std::vector<AcousticExample> out;
  for (const auto& u : utts) {
    AcousticExample ex;
    ex.phone_ids = u.phone_ids;
    ex.durations = u.durations;
    ex.speaker = std::max(0, model.SpeakerIndex(u.speaker));
    ex.mel = u.mel;
    out.push_back(std::move(ex));
  }
  return out;
}

AcousticProgressFn AcousticLog(const LogFn& log, const std::string& stage,
                               int every) {
  return [log, stage, every](int64_t step, double loss) {
    if (log && step % every == 0) {
      log("stage=" + stage + " model=acoustic step=" + std::to_string(step) +
          " loss=" + Fmt(loss));
    }
  };
}

VocoderProgressFn VocoderLog(const LogFn& log, const std::string& stage,
                             int every) {
  return [log, stage, every](int64_t step, const VocoderLosses& l) {
    if (log && step % every == 0) {
      log("stage=" + stage + " model=vocoder step=" + std::to_string(step) +
          " disc=" + Fmt(l.discriminator) + " adv=" + Fmt(l.adversarial) +
          " fm=" + Fmt(l.feature_matching) + " mel=" + Fmt(l.mel));
    }
  };
}

}  // namespace

PrepareSummary RunPrepare(const std::string& corpus_dir,
                          const std::string& out_dir, const Config& config,
                          const LogFn& log) {
  const PipelineSettings s = ResolveSettings(config);
  RequireDir(corpus_dir, "corpus directory");
  const Lexicon lexicon = LoadLexicon(s);
  DirectoryLock lock(out_dir);
  PrepareSummary summary = PrepareCorpus(corpus_dir, out_dir, lexicon, s.frontend);
  for (const auto& reason : summary.skip_reasons) {
    Emit(log, "event=skip reason=\"" + reason + "\"");
  }
  return summary;
}

RunRecord RunTrainStage(const Config& config, const LogFn& log) {
  StageRun run(config, "train");
  const PipelineSettings& s = run.settings;
  RequireDir(s.corpus, "paths.corpus");
  const Lexicon lexicon = LoadLexicon(s);
  const PhoneInventory inventory = lexicon.Inventory();
  const std::string dir = s.Stage1Dir();
  DirectoryLock lock(dir);
  const int every = run.log_every;

  const std::string prepared = s.PreparedDir("train");
  const PrepareSummary prep =
      PrepareCorpus(s.corpus, prepared, lexicon, s.frontend);
  Emit(log, "stage=train event=prepared kept=" + std::to_string(prep.kept) +
                " skipped=" + std::to_string(prep.skipped) +
                " cache_hits=" + std::to_string(prep.cache_hits));
  Manifest manifest = ReadManifest(prep.manifest_path);
  if (s.high_quality_only) {
    std::vector<std::string> keep;
    for (const auto& sp : manifest.speakers) {
      if (sp.quality == "high") keep.push_back(sp.name);
    }
    manifest = manifest.FilterSpeakers(keep);
  }
  Require(!manifest.records.empty(), ErrorCode::kEmptyCorpus,
          "no training utterances left after the speaker policy");
  const std::vector<TrainingUtterance> utts = LoadUtterances(
      manifest, FeatureDirFor(prep.manifest_path), inventory, s.frontend);
  std::vector<std::string> speakers;
  for (const auto& sp : manifest.speakers) speakers.push_back(sp.name);
  run.record.info["speakers"] = std::to_string(speakers.size());
  run.record.info["utterances"] = std::to_string(utts.size());
  const std::vector<std::string>& phones = inventory.symbols();

  // Duration model.
  DurationConfig dc = s.duration;
  dc.vocab_size = inventory.size();
  DurationModel duration(dc, s.seed);
  std::vector<DurationExample> dur_data;
  for (const auto& u : utts) dur_data.push_back({u.phone_ids, u.durations});
  const DurationTrainReport dr = TrainDurationModel(
      &duration, dur_data, s.duration_train, [&](int64_t step, double loss) {
        if (step % every == 0) {
          Emit(log, "stage=train model=duration step=" + std::to_string(step) +
                        " loss=" + Fmt(loss));
        }
      });
  run.record.losses["duration_initial"] = dr.initial_loss;
  run.record.losses["duration_final"] = dr.final_train_loss;
  run.record.losses["duration_holdout_best"] = dr.best_holdout_loss;
  run.record.curves["duration"] = dr.train_curve;
  SaveArtifact(InDir(dir, kDurationCheckpoint),
               MakeCheckpoint(duration, phones, dr.steps), &run.record);

  // Acoustic model.
  AcousticConfig ac = s.acoustic;
  ac.vocab_size = inventory.size();
  AcousticModel acoustic(ac, s.seed + 10, speakers);
  const std::vector<AcousticExample> examples = AcousticExamples(utts, acoustic);
  acoustic.SetOutputBias(MeanFrame(examples));
  AcousticTrainOptions at = s.acoustic_train;
  at.log_every = every;
  const AcousticTrainReport ar = TrainAcoustic(&acoustic, examples, at,
                                               AcousticLog(log, "train", every));
  run.record.losses["acoustic_initial"] = ar.initial_loss;
  run.record.losses["acoustic_final"] = ar.final_loss;
  run.record.curves["acoustic"] = ar.curve;
  SaveArtifact(InDir(dir, kAcousticCheckpoint),
               MakeCheckpoint(acoustic, phones, ar.steps), &run.record);

  // Vocoder on ground-truth pairs.
  Generator generator(s.generator, s.seed + 20);
  Discriminators discriminators(s.discriminator, s.seed + 30);
  std::vector<VocoderPair> pairs;
  for (const auto& u : utts) pairs.push_back({u.mel, u.wave});
  const VocoderTrainReport vr =
      TrainVocoder(&generator, &discriminators, pairs, s.vocoder_steps,
                   s.vocoder_train, VocoderLog(log, "train", every));
  run.record.losses["vocoder_mel_error_initial"] = vr.initial_mel_error;
  run.record.losses["vocoder_mel_error_final"] = vr.final_mel_error;
  run.record.curves["vocoder_mel"] = vr.mel_curve;
  SaveArtifact(InDir(dir, kGeneratorCheckpoint),
               MakeCheckpoint(generator, vr.steps), &run.record);
  SaveArtifact(InDir(dir, kDiscriminatorCheckpoint),
               MakeCheckpoint(discriminators, vr.steps), &run.record);

  run.Finish(dir);
  Emit(log, "stage=train event=done record=" + InDir(dir, kRunRecordFile));
  return run.record;
}

RunRecord RunAdaptStage(const Config& config, const LogFn& log) {
  StageRun run(config, "adapt");
  const PipelineSettings& s = run.settings;
  const std::string stage1 = s.Stage1Dir();
  for (const char* name : {kAcousticCheckpoint, kGeneratorCheckpoint,
                           kDiscriminatorCheckpoint}) {
    Require(fs::exists(InDir(stage1, name)), ErrorCode::kMissingCheckpoint,
            "stage 1 artifact " + InDir(stage1, name) +
                " is missing; run `train` first");
  }
  RequireDir(s.target_corpus, "paths.target_corpus");
  const Lexicon lexicon = LoadLexicon(s);
  const PhoneInventory inventory = lexicon.Inventory();
  const std::vector<std::string>& phones = inventory.symbols();
  const std::string dir = s.Stage2Dir();
  DirectoryLock lock(dir);
  const int every = run.log_every;

  // Architecture hashes come from the current config so a changed config
  // is caught unless forced.
  AcousticConfig ac = s.acoustic;
  ac.vocab_size = inventory.size();
  const Checkpoint ac_ckpt = LoadChecked(
      InDir(stage1, kAcousticCheckpoint), CheckpointKind::kAcoustic,
      ConfigJsonHash(AcousticConfigJson(ac, phones)), s.force);
  const Checkpoint g_ckpt = LoadChecked(
      InDir(stage1, kGeneratorCheckpoint), CheckpointKind::kGenerator,
      ConfigJsonHash(GeneratorConfigJson(s.generator)), s.force);
  const Checkpoint d_ckpt = LoadChecked(
      InDir(stage1, kDiscriminatorCheckpoint), CheckpointKind::kDiscriminator,
      ConfigJsonHash(DiscriminatorConfigJson(s.discriminator)), s.force);
  std::vector<std::string> ckpt_phones;
  const AcousticModel base = RestoreAcousticModel(ac_ckpt, &ckpt_phones);
  Require(ckpt_phones == phones, ErrorCode::kConfigMismatch,
          "lexicon phones differ from the stage 1 acoustic model");
  const Generator base_generator = RestoreGenerator(g_ckpt);
  const Discriminators base_discriminators = RestoreDiscriminators(d_ckpt);

  PrepareSummary prep;
  try {
    prep = PrepareCorpus(s.target_corpus, s.PreparedDir("target"), lexicon,
                         s.frontend);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyCorpus) throw;
    Fail(ErrorCode::kEmptyTargetCorpus, e.detail());
  }
  Manifest manifest = ReadManifest(prep.manifest_path);
  std::string target = s.target_speaker;
  if (target.empty()) {
    Require(manifest.speakers.size() == 1, ErrorCode::kConfigInvalid,
            "target corpus has " + std::to_string(manifest.speakers.size()) +
                " speakers; set adapt.speaker");
    target = manifest.speakers.front().name;
  }
  manifest = manifest.FilterSpeakers({target});
  Require(!manifest.records.empty(), ErrorCode::kEmptyTargetCorpus,
          "no utterances for target speaker " + target);
  const std::vector<TrainingUtterance> utts = LoadUtterances(
      manifest, FeatureDirFor(prep.manifest_path), inventory, s.frontend);
  run.record.info["target_speaker"] = target;
  run.record.info["target_utterances"] = std::to_string(utts.size());
  Emit(log, "stage=adapt event=prepared speaker=" + target +
                " utterances=" + std::to_string(utts.size()));

  // Acoustic adaptation.
  std::vector<AcousticExample> examples = AcousticExamples(utts, base);
  AcousticTrainOptions at = s.acoustic_adapt;
  at.log_every = every;
  AcousticTrainReport ar;
  const AcousticModel adapted = AdaptAcoustic(
      base, examples, target, at, &ar, AcousticLog(log, "adapt", every));
  if (at.steps > 0) {
    run.record.losses["acoustic_pre_adaptation"] = ar.initial_loss;
    run.record.losses["acoustic_post_adaptation"] = ar.final_loss;
    run.record.curves["acoustic"] = ar.curve;
  }
  SaveArtifact(InDir(dir, kAcousticCheckpoint),
               MakeCheckpoint(adapted, phones, ac_ckpt.step + ar.steps),
               &run.record);

  // Vocoder adaptation on teacher-forced mels of the adapted model.
  const int speaker = std::max(0, adapted.SpeakerIndex(target));
  std::vector<VocoderPair> pairs;
  {
    NoGradGuard no_grad;
    for (size_t i = 0; i < utts.size(); ++i) {
      DecodeOptions decode;
      decode.prenet_dropout = s.prenet_dropout_at_synthesis;
      decode.seed = s.synthesis_seed + i;
      const Var expanded = adapted.SpeakerIndex(target) >= 0
                               ? adapted.Expand(utts[i].phone_ids,
                                                utts[i].durations, speaker)
                               : adapted.Expand(utts[i].phone_ids,
                                                utts[i].durations,
                                                adapted.MeanSpeakerVector());
      const MelPrediction p =
          adapted.TeacherForced(expanded, utts[i].mel, decode);
      pairs.push_back({p.after_postnet.value(), utts[i].wave});
    }
  }
  const AdaptedVocoder av =
      AdaptVocoder(base_generator, base_discriminators, pairs,
                   s.vocoder_adapt_steps, s.vocoder_adapt,
                   VocoderLog(log, "adapt", every));
  if (s.vocoder_adapt_steps > 0) {
    run.record.losses["vocoder_mel_error_initial"] = av.report.initial_mel_error;
    run.record.losses["vocoder_mel_error_final"] = av.report.final_mel_error;
    run.record.curves["vocoder_mel"] = av.report.mel_curve;
  }
  SaveArtifact(InDir(dir, kGeneratorCheckpoint),
               MakeCheckpoint(av.generator, g_ckpt.step + av.report.steps),
               &run.record);
  SaveArtifact(
      InDir(dir, kDiscriminatorCheckpoint),
      MakeCheckpoint(av.discriminators, d_ckpt.step + av.report.steps),
      &run.record);

  run.Finish(dir);
  Emit(log, "stage=adapt event=done record=" + InDir(dir, kRunRecordFile));
  return run.record;
}

RunRecord RunSynthStage(const Config& config,
                        const std::vector<std::string>& texts,
                        const LogFn& log) {
  StageRun run(config, "synth");
  const PipelineSettings& s = run.settings;
  const std::string stage1 = s.Stage1Dir();
  std::string model_dir = s.Stage2Dir();
  if (!fs::exists(InDir(model_dir, kAcousticCheckpoint)) ||
      !fs::exists(InDir(model_dir, kGeneratorCheckpoint))) {
    Require(s.allow_stage1_baseline, ErrorCode::kMissingCheckpoint,
            "stage 2 artifacts are missing under " + model_dir +
                "; run `adapt` first or set synth.allow_stage1_baseline");
    model_dir = stage1;
    run.record.warnings.push_back("synthesizing with stage 1 models");
  }
  Require(fs::exists(InDir(stage1, kDurationCheckpoint)),
          ErrorCode::kMissingCheckpoint,
          "duration model " + InDir(stage1, kDurationCheckpoint) +
              " is missing; run `train` first");
  const Lexicon lexicon = LoadLexicon(s);
  const PhoneInventory inventory = lexicon.Inventory();
  const std::vector<std::string>& phones = inventory.symbols();
  const std::string dir = s.Stage3Dir();
  DirectoryLock lock(dir);

  DurationConfig dc = s.duration;
  dc.vocab_size = inventory.size();
  AcousticConfig ac = s.acoustic;
  ac.vocab_size = inventory.size();
  std::vector<std::string> dur_phones;
  std::vector<std::string> ac_phones;
  const DurationModel duration = RestoreDurationModel(
      LoadChecked(InDir(stage1, kDurationCheckpoint), CheckpointKind::kDuration,
                  ConfigJsonHash(DurationConfigJson(dc, phones)), s.force),
      &dur_phones);
  const AcousticModel acoustic = RestoreAcousticModel(
      LoadChecked(InDir(model_dir, kAcousticCheckpoint),
                  CheckpointKind::kAcoustic,
                  ConfigJsonHash(AcousticConfigJson(ac, phones)), s.force),
      &ac_phones);
  Require(dur_phones == phones && ac_phones == phones,
          ErrorCode::kConfigMismatch,
          "lexicon phones differ from the trained models");
  const Generator generator = RestoreGenerator(
      LoadChecked(InDir(model_dir, kGeneratorCheckpoint),
                  CheckpointKind::kGenerator,
                  ConfigJsonHash(GeneratorConfigJson(s.generator)), s.force));

  std::string speaker = s.synth_speaker;
  if (speaker.empty()) speaker = s.target_speaker;
  if (speaker.empty() && model_dir == s.Stage2Dir() &&
      fs::exists(InDir(model_dir, kRunRecordFile))) {
    const RunRecord adapt = ReadRunRecord(InDir(model_dir, kRunRecordFile));
    const auto it = adapt.info.find("target_speaker");
    if (it != adapt.info.end()) speaker = it->second;
  }
  Var speaker_vector;
  const int index = acoustic.SpeakerIndex(speaker);
  if (index >= 0) {
    speaker_vector = acoustic.SpeakerVector(index);
  } else {
    speaker_vector = acoustic.MeanSpeakerVector();
    run.record.warnings.push_back(
        "speaker '" + speaker +
        "' is not in the acoustic model; using the mean speaker embedding");
  }
  run.record.info["speaker"] = speaker;
  run.record.info["models"] = model_dir;

  TextToPhonesOptions tp;
  tp.add_boundary_silence = s.add_boundary_silence;
  const int hop = s.frontend.mel.hop;
  const int sample_rate = s.frontend.mel.sample_rate;
  int written = 0;
  for (size_t i = 0; i < texts.size(); ++i) {
    try {
      NoGradGuard no_grad;
      const std::vector<int> ids =
          inventory.Encode(TextToPhones(texts[i], lexicon, tp));
      const std::vector<int> frames = PredictDurations(duration, ids);
      int total = 0;
      for (int f : frames) total += f;
      DecodeOptions decode;
      decode.prenet_dropout = s.prenet_dropout_at_synthesis;
      decode.seed = s.synthesis_seed + i;
      const Tensor mel =
          acoustic
              .Autoregressive(acoustic.Expand(ids, frames, speaker_vector),
                              decode)
              .after_postnet.value();
      const std::vector<double> wave = generator.Generate(mel);
      Require(wave.size() == static_cast<size_t>(total) * hop,
              ErrorCode::kLengthMismatch, "generator output length is off");
      char name[32];
      std::snprintf(name, sizeof(name), "utt_%03zu.wav", i);
      const std::string path = InDir(dir, name);
      WriteWav16(path, wave, sample_rate);
      run.record.artifacts.push_back(path);
      run.record.info["frames_" + std::to_string(i)] = std::to_string(total);
      ++written;
      Emit(log, "stage=synth index=" + std::to_string(i) +
                    " frames=" + std::to_string(total) + " wav=" + path);
    } catch (const Error& e) {
      run.record.errors.push_back("text " + std::to_string(i) + ": " +
                                  e.what());
      Emit(log, "stage=synth index=" + std::to_string(i) + " error=" +
                    ErrorCodeName(e.code()));
    }
  }
  run.record.info["texts"] = std::to_string(texts.size());
  run.record.info["written"] = std::to_string(written);
  run.Finish(dir);
  Emit(log, "stage=synth event=done record=" + InDir(dir, kRunRecordFile));
  return run.record;
}

}  // namespace vclone
