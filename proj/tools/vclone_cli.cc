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

// vclone command-line tool. Talks to the pipeline only through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vclone/vclone.h"

namespace {

using json = nlohmann::json;

struct ContextDeleter {
  void operator()(vc_context* ctx) const { vc_context_destroy(ctx); }
};
using ContextPtr = std::unique_ptr<vc_context, ContextDeleter>;

int verbosity = 1;

void PrintProgress(const char* line, void*) {
  if (verbosity > 0) std::fprintf(stderr, "%s\n", line);
}

// Machine-readable failure line on stderr; returns the exit code.
int Report(vc_context* ctx, vc_status status) {
  std::fprintf(stderr, "error category=%s code=%s message=\"%s\"\n",
               vc_status_category(status), vc_last_error_code(ctx),
               vc_last_error(ctx));
  return static_cast<int>(status);
}

int UsageError(const std::string& message) {
  std::fprintf(stderr, "error category=usage code=Usage message=\"%s\"\n",
               message.c_str());
  return VC_ERR_USAGE;
}

void PrintValue(const std::string& key, const json& v, int indent) {
  const std::string pad(indent * 2, ' ');
  if (v.is_object()) {
    std::printf("%s%s:\n", pad.c_str(), key.c_str());
    for (const auto& [k, item] : v.items()) PrintValue(k, item, indent + 1);
  } else if (v.is_array() && !v.empty() && v.front().is_structured()) {
    std::printf("%s%s: (%zu)\n", pad.c_str(), key.c_str(), v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      PrintValue(std::to_string(i), v[i], indent + 1);
    }
  } else {
    std::printf("%s%s: %s\n", pad.c_str(), key.c_str(),
                v.is_string() ? v.get<std::string>().c_str()
                              : v.dump().c_str());
  }
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--text-file", "cannot read " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vclone: multi-speaker TTS training, speaker adaptation and "
               "synthesis"};
  app.require_subcommand(1);
  // Global flags may also follow the subcommand.
  app.fallthrough();
  app.set_version_flag("--version", vc_version());

  std::string config_path;
  std::vector<std::string> overrides;
  bool quiet = false;
  bool json_output = false;
  app.add_option("-c,--config", config_path,
                 "INI config file (default: $VCLONE_CONFIG)");
  app.add_option("--set", overrides, "Override a config key: section.key=value")
      ->take_all();
  app.add_flag("-q,--quiet", quiet, "Suppress progress lines");
  app.add_flag("--json", json_output, "Print the result as JSON");

  // Flags below each override one config key.
  std::vector<std::pair<std::string, std::string>> flag_overrides;
  auto key_option = [&](CLI::App* cmd, const std::string& flag,
                        const std::string& key, const std::string& help) {
    return cmd->add_option_function<std::string>(
        flag,
        [&flag_overrides, key](const std::string& v) {
          flag_overrides.emplace_back(key, v);
        },
        help + " (" + key + ")");
  };
  auto key_flag = [&](CLI::App* cmd, const std::string& flag,
                      const std::string& key, const std::string& help) {
    return cmd->add_flag_callback(
        flag, [&flag_overrides, key] { flag_overrides.emplace_back(key, "true"); },
        help + " (" + key + "=true)");
  };

  CLI::App* prepare = app.add_subcommand(
      "prepare", "Build the manifest and feature cache of a corpus");
  std::string corpus_dir;
  std::string out_dir;
  prepare->add_option("corpus_dir", corpus_dir, "Corpus directory")
      ->required();
  prepare->add_option("out_dir", out_dir, "Output directory")->required();
  key_option(prepare, "--lexicon", "paths.lexicon", "Lexicon file");

  CLI::App* train = app.add_subcommand(
      "train", "Stage 1: multi-speaker training");
  key_option(train, "--corpus", "paths.corpus", "Training corpus");
  key_option(train, "--out-dir", "paths.out_dir", "Output directory");
  key_option(train, "--seed", "train.seed", "Random seed");
  key_option(train, "--acoustic-steps", "train.acoustic_steps",
             "Acoustic model steps");
  key_option(train, "--vocoder-steps", "train.vocoder_steps",
             "Vocoder steps");

  CLI::App* adapt = app.add_subcommand(
      "adapt", "Stage 2: target speaker adaptation");
  key_option(adapt, "--target-corpus", "paths.target_corpus",
             "Target speaker corpus");
  key_option(adapt, "--out-dir", "paths.out_dir", "Output directory");
  key_option(adapt, "--speaker", "adapt.speaker", "Target speaker name");
  key_option(adapt, "--acoustic-steps", "adapt.acoustic_steps",
             "Acoustic adaptation steps");
  key_option(adapt, "--vocoder-steps", "adapt.vocoder_steps",
             "Vocoder adaptation steps");
  key_flag(adapt, "--force", "checkpoint.force",
           "Load checkpoints despite a config mismatch");

  CLI::App* synth = app.add_subcommand("synth", "Stage 3: synthesis");
  std::string text_file;
  std::vector<std::string> texts;
  synth->add_option("--text-file", text_file, "One prompt per line");
  synth->add_option("-t,--text", texts, "Prompt text (repeatable)");
  key_option(synth, "--out-dir", "paths.out_dir", "Output directory");
  key_option(synth, "--speaker", "synth.speaker", "Speaker to synthesize");
  key_flag(synth, "--allow-stage1", "synth.allow_stage1_baseline",
           "Fall back to stage 1 models");
  key_flag(synth, "--force", "checkpoint.force",
           "Load checkpoints despite a config mismatch");

  CLI::App* inspect = app.add_subcommand(
      "inspect", "Describe a checkpoint, feature file, manifest or run record");
  std::string artifact;
  inspect->add_option("path", artifact, "Artifact path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return UsageError(e.what());
  }
  verbosity = quiet ? 0 : 1;

  ContextPtr ctx(vc_context_create());
  if (!ctx) return VC_ERR_INTERNAL;
  vc_set_progress_callback(ctx.get(), PrintProgress, nullptr);

  const bool needs_config = !prepare->parsed() && !inspect->parsed();
  if (config_path.empty()) {
    if (const char* env = std::getenv("VCLONE_CONFIG")) config_path = env;
  }
  if (config_path.empty()) {
    if (needs_config) {
      return UsageError("a config file is required (--config or VCLONE_CONFIG)");
    }
  } else {
    if (!std::ifstream(config_path)) {
      return UsageError("config file " + config_path + " does not exist");
    }
    const vc_status s = vc_config_load(ctx.get(), config_path.c_str());
    if (s != VC_OK) return Report(ctx.get(), s);
  }
  for (const auto& o : overrides) {
    const vc_status s = vc_config_set(ctx.get(), o.c_str());
    if (s != VC_OK) return Report(ctx.get(), s);
  }
  for (const auto& [key, value] : flag_overrides) {
    const std::string assignment = key + "=" + value;
    const vc_status s = vc_config_set(ctx.get(), assignment.c_str());
    if (s != VC_OK) return Report(ctx.get(), s);
  }

  vc_status status = VC_OK;
  if (prepare->parsed()) {
    status = vc_prepare(ctx.get(), corpus_dir.c_str(), out_dir.c_str());
  } else if (train->parsed()) {
    status = vc_train(ctx.get());
  } else if (adapt->parsed()) {
    status = vc_adapt(ctx.get());
  } else if (synth->parsed()) {
    if (!text_file.empty()) {
      try {
        for (auto& line : ReadLines(text_file)) texts.push_back(line);
      } catch (const CLI::ValidationError& e) {
        return UsageError(e.what());
      }
    }
    std::vector<const char*> ptrs;
    for (const auto& t : texts) ptrs.push_back(t.c_str());
    status = vc_synthesize(ctx.get(), ptrs.data(), ptrs.size());
  } else if (inspect->parsed()) {
    status = vc_inspect(ctx.get(), artifact.c_str());
  }
  if (status != VC_OK) return Report(ctx.get(), status);

  const json result = json::parse(vc_result_json(ctx.get()), nullptr, false);
  if (json_output || !result.is_object()) {
    std::printf("%s\n", vc_result_json(ctx.get()));
  } else if (synth->parsed() || train->parsed() || adapt->parsed()) {
    for (const auto& key : {"stage", "config_hash", "seconds"}) {
      if (result.contains(key)) PrintValue(key, result[key], 0);
    }
    for (const auto& key : {"losses", "info", "artifacts", "errors",
                            "warnings"}) {
      if (result.contains(key) && !result[key].empty()) {
        PrintValue(key, result[key], 0);
      }
    }
  } else {
    for (const auto& [k, v] : result.items()) {
      if (k == "config" || k == "tensors") continue;
      PrintValue(k, v, 0);
    }
  }
  return VC_OK;
}
