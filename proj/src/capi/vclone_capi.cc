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

#include "vclone/vclone.h"

#include <filesystem>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "common/error.h"
#include "json.hpp"
#include "pipeline/config.h"
#include "pipeline/inspect.h"
#include "pipeline/stages.h"
#include "pipeline/toy_corpus.h"

struct vc_context {
  vclone::Config config;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string error;
  std::string error_code;
  std::string result = "{}";
  std::string scratch;
  vc_progress_fn progress = nullptr;
  void* progress_user = nullptr;
};

namespace {

using json = nlohmann::json;

vc_status StatusOf(vclone::ErrorCategory category) {
  switch (category) {
    case vclone::ErrorCategory::kUsage: return VC_ERR_USAGE;
    case vclone::ErrorCategory::kConfig: return VC_ERR_CONFIG;
    case vclone::ErrorCategory::kCorpus: return VC_ERR_CORPUS;
    case vclone::ErrorCategory::kFrontend: return VC_ERR_FRONTEND;
    case vclone::ErrorCategory::kModel: return VC_ERR_MODEL;
    case vclone::ErrorCategory::kCheckpoint: return VC_ERR_CHECKPOINT;
    case vclone::ErrorCategory::kIo: return VC_ERR_IO;
    case vclone::ErrorCategory::kLocked: return VC_ERR_LOCKED;
    case vclone::ErrorCategory::kInternal: return VC_ERR_INTERNAL;
  }
  return VC_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the context's
// error fields.
template <typename F>
vc_status Guard(vc_context* ctx, F&& body) {
  if (ctx == nullptr) return VC_ERR_USAGE;
  ctx->error.clear();
  ctx->error_code.clear();
  try {
    body();
    return VC_OK;
  } catch (const vclone::Error& e) {
    ctx->error = e.what();
    ctx->error_code = vclone::ErrorCodeName(e.code());
    return StatusOf(e.category());
  } catch (const std::bad_alloc&) {
    ctx->error = "out of memory";
    ctx->error_code = "Internal";
  } catch (const std::exception& e) {
    ctx->error = e.what();
    ctx->error_code = "Internal";
  }
  return VC_ERR_INTERNAL;
}

vclone::LogFn Logger(const vc_context* ctx) {
  if (ctx->progress == nullptr) return {};
  vc_progress_fn fn = ctx->progress;
  void* user = ctx->progress_user;
  return [fn, user](const std::string& line) { fn(line.c_str(), user); };
}

void RequireArg(const char* value, const char* name) {
  vclone::Require(value != nullptr && *value != '\0',
                  vclone::ErrorCode::kInvalidArgument,
                  std::string(name) + " is required");
}

}  // namespace

extern "C" {

const char* vc_version(void) { return "0.1.0"; }

const char* vc_status_category(vc_status status) {
  switch (status) {
    case VC_OK: return "ok";
    case VC_ERR_USAGE: return "usage";
    case VC_ERR_CONFIG: return "config";
    case VC_ERR_CORPUS: return "corpus";
    case VC_ERR_CHECKPOINT: return "checkpoint";
    case VC_ERR_FRONTEND: return "frontend";
    case VC_ERR_IO: return "io";
    case VC_ERR_LOCKED: return "locked";
    case VC_ERR_MODEL: return "model";
    case VC_ERR_INTERNAL: return "internal";
  }
  return "internal";
}

vc_context* vc_context_create(void) {
  return new (std::nothrow) vc_context();
}

void vc_context_destroy(vc_context* ctx) { delete ctx; }

const char* vc_last_error(const vc_context* ctx) {
  return ctx == nullptr ? "null context" : ctx->error.c_str();
}

const char* vc_last_error_code(const vc_context* ctx) {
  return ctx == nullptr ? "InvalidArgument" : ctx->error_code.c_str();
}

const char* vc_result_json(const vc_context* ctx) {
  return ctx == nullptr ? "{}" : ctx->result.c_str();
}

void vc_set_progress_callback(vc_context* ctx, vc_progress_fn fn,
                              void* user_data) {
  if (ctx == nullptr) return;
  ctx->progress = fn;
  ctx->progress_user = user_data;
}

vc_status vc_config_load(vc_context* ctx, const char* path) {
  return Guard(ctx, [&] {
    RequireArg(path, "config path");
    vclone::Config loaded = vclone::Config::Load(path);
    for (const auto& o : ctx->overrides) loaded.ApplyOverride(o);
    ctx->config = std::move(loaded);
    ctx->config_path = path;
  });
}

vc_status vc_config_set(vc_context* ctx, const char* assignment) {
  return Guard(ctx, [&] {
    RequireArg(assignment, "override");
    ctx->config.ApplyOverride(assignment);
    ctx->overrides.push_back(assignment);
  });
}

const char* vc_config_get(vc_context* ctx, const char* key) {
  if (ctx == nullptr || key == nullptr) return nullptr;
  const auto& values = ctx->config.values();
  const auto it = values.find(key);
  if (it == values.end()) return nullptr;
  ctx->scratch = it->second;
  return ctx->scratch.c_str();
}

vc_status vc_prepare(vc_context* ctx, const char* corpus_dir,
                     const char* out_dir) {
  return Guard(ctx, [&] {
    RequireArg(corpus_dir, "corpus directory");
    RequireArg(out_dir, "output directory");
    const vclone::PrepareSummary s =
        vclone::RunPrepare(corpus_dir, out_dir, ctx->config, Logger(ctx));
    json j = {{"kept", s.kept},
              {"skipped", s.skipped},
              {"speakers", s.speakers},
              {"total_frames", s.total_frames},
              {"cache_hits", s.cache_hits},
              {"computed", s.computed},
              {"skip_reasons", s.skip_reasons},
              {"manifest", s.manifest_path}};
    ctx->result = j.dump(2);
  });
}

vc_status vc_train(vc_context* ctx) {
  return Guard(ctx, [&] {
    ctx->result = vclone::RunTrainStage(ctx->config, Logger(ctx)).ToJson();
  });
}

vc_status vc_adapt(vc_context* ctx) {
  return Guard(ctx, [&] {
    ctx->result = vclone::RunAdaptStage(ctx->config, Logger(ctx)).ToJson();
  });
}

vc_status vc_synthesize(vc_context* ctx, const char* const* texts,
                        size_t count) {
  return Guard(ctx, [&] {
    vclone::Require(texts != nullptr || count == 0,
                    vclone::ErrorCode::kInvalidArgument, "texts is NULL");
    std::vector<std::string> list;
    for (size_t i = 0; i < count; ++i) {
      list.emplace_back(texts[i] == nullptr ? "" : texts[i]);
    }
    ctx->result =
        vclone::RunSynthStage(ctx->config, list, Logger(ctx)).ToJson();
  });
}

vc_status vc_inspect(vc_context* ctx, const char* path) {
  return Guard(ctx, [&] {
    RequireArg(path, "artifact path");
    ctx->result = vclone::InspectArtifact(path);
  });
}

vc_status vc_make_toy_corpus(vc_context* ctx, const char* dir,
                             const char* options_json) {
  return Guard(ctx, [&] {
    RequireArg(dir, "corpus directory");
    vclone::ToyCorpusOptions o;
    o.voices = {{"spk1", 120.0, 1.0, "high"}, {"spk2", 190.0, 1.15, "high"}};
    if (options_json != nullptr && *options_json != '\0') {
      const json j = json::parse(options_json, nullptr, false);
      vclone::Require(j.is_object(), vclone::ErrorCode::kInvalidArgument,
                      "toy corpus options are not a JSON object");
      try {
        if (j.contains("voices")) {
          o.voices.clear();
          for (const auto& v : j.at("voices")) {
            vclone::ToyVoice voice;
            voice.name = v.at("name").get<std::string>();
            voice.f0 = v.value("f0", voice.f0);
            voice.formant_scale = v.value("formant_scale", 1.0);
            voice.quality = v.value("quality", std::string("high"));
            o.voices.push_back(voice);
          }
        }
        o.utterances_per_voice =
            j.value("utterances_per_voice", o.utterances_per_voice);
        o.min_words = j.value("min_words", o.min_words);
        o.max_words = j.value("max_words", o.max_words);
        o.seed = j.value("seed", o.seed);
        o.noise_floor = j.value("noise_floor", o.noise_floor);
      } catch (const json::exception& e) {
        vclone::Fail(vclone::ErrorCode::kInvalidArgument,
                     std::string("toy corpus options: ") + e.what());
      }
    }
    vclone::WriteToyCorpus(dir, o);
    const std::string lexicon =
        (std::filesystem::path(dir) / "lexicon.txt").string();
    std::ofstream(lexicon) << vclone::ToyLexiconText();
    json voices = json::array();
    for (const auto& v : o.voices) voices.push_back(v.name);
    ctx->result = json{{"corpus", dir},
                       {"lexicon", lexicon},
                       {"voices", voices},
                       {"utterances_per_voice", o.utterances_per_voice}}
                      .dump(2);
  });
}

}  // extern "C"
