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

// C interface to the vclone voice cloning pipeline. All functions are
// safe to call with a NULL context only where noted. Strings returned by
// the library stay valid until the next call on the same context.

#ifndef VCLONE_VCLONE_H_
#define VCLONE_VCLONE_H_

#include <stddef.h>

#if defined(VCLONE_BUILDING_LIBRARY)
#define VC_API __attribute__((visibility("default")))
#else
#define VC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Status values are also the CLI exit codes.
typedef enum vc_status {
  VC_OK = 0,
  VC_ERR_INTERNAL = 1,
  VC_ERR_USAGE = 2,
  VC_ERR_CONFIG = 3,
  VC_ERR_CORPUS = 4,
  VC_ERR_CHECKPOINT = 5,
  VC_ERR_FRONTEND = 6,
  VC_ERR_IO = 7,
  VC_ERR_LOCKED = 8,
  VC_ERR_MODEL = 9,
} vc_status;

typedef struct vc_context vc_context;

// Called with one key=value progress line (no trailing newline).
typedef void (*vc_progress_fn)(const char* line, void* user_data);

VC_API const char* vc_version(void);
// "ok", "usage", "config", "corpus", "checkpoint", "frontend", "io",
// "locked", "model" or "internal".
VC_API const char* vc_status_category(vc_status status);

// Returns NULL on allocation failure.
VC_API vc_context* vc_context_create(void);
// Accepts NULL.
VC_API void vc_context_destroy(vc_context* ctx);

// Human-readable message and error code name (e.g. "EmptyCorpus") of the
// last failed call; empty strings after a success.
VC_API const char* vc_last_error(const vc_context* ctx);
VC_API const char* vc_last_error_code(const vc_context* ctx);
// JSON result of the last successful operation ("{}" if none).
VC_API const char* vc_result_json(const vc_context* ctx);

VC_API void vc_set_progress_callback(vc_context* ctx, vc_progress_fn fn,
                                     void* user_data);

// Replaces the context's configuration with the INI file at `path`.
VC_API vc_status vc_config_load(vc_context* ctx, const char* path);
// Applies one "section.key=value" override on top of the loaded file.
VC_API vc_status vc_config_set(vc_context* ctx, const char* assignment);
// Resolved value of `key` or NULL when it was never set.
VC_API const char* vc_config_get(vc_context* ctx, const char* key);

// Builds the manifest and feature cache of `corpus_dir` under `out_dir`.
// Result: kept, skipped, speakers, total_frames, cache_hits, computed,
// skip_reasons, manifest.
VC_API vc_status vc_prepare(vc_context* ctx, const char* corpus_dir,
                            const char* out_dir);

// Pipeline stages. Results are the stage run records.
VC_API vc_status vc_train(vc_context* ctx);
VC_API vc_status vc_adapt(vc_context* ctx);
VC_API vc_status vc_synthesize(vc_context* ctx, const char* const* texts,
                               size_t count);

// Describes a checkpoint, feature cache file, manifest or run record.
VC_API vc_status vc_inspect(vc_context* ctx, const char* path);

// Writes a synthetic corpus plus lexicon.txt into `dir`. `options_json`
// may be NULL or hold any of: voices [{name, f0, formant_scale, quality}],
// utterances_per_voice, min_words, max_words, seed, noise_floor.
VC_API vc_status vc_make_toy_corpus(vc_context* ctx, const char* dir,
                                    const char* options_json);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // VCLONE_VCLONE_H_
