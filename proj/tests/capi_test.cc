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

#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "vclone/vclone.h"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class Context {
 public:
  Context() : ctx_(vc_context_create()) {}
  ~Context() { vc_context_destroy(ctx_); }
  vc_context* get() const { return ctx_; }

 private:
  vc_context* ctx_;
};

fs::path Scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("vclone_capi_" + name);
  fs::remove_all(p);
  return p;
}

TEST(CApi, NullContextIsUsageError) {
  EXPECT_EQ(vc_train(nullptr), VC_ERR_USAGE);
  vc_context_destroy(nullptr);
  EXPECT_STREQ(vc_status_category(VC_ERR_CHECKPOINT), "checkpoint");
  EXPECT_STREQ(vc_status_category(VC_OK), "ok");
  EXPECT_NE(std::string(vc_version()), "");
}

TEST(CApi, ConfigOverridesAndErrors) {
  Context ctx;
  EXPECT_EQ(vc_config_set(ctx.get(), "train.seed=5"), VC_OK);
  EXPECT_STREQ(vc_config_get(ctx.get(), "train.seed"), "5");
  EXPECT_EQ(vc_config_get(ctx.get(), "train.nothing"), nullptr);
  EXPECT_EQ(vc_config_set(ctx.get(), "bad"), VC_ERR_CONFIG);
  EXPECT_STREQ(vc_last_error_code(ctx.get()), "ConfigInvalid");
  EXPECT_EQ(vc_config_load(ctx.get(), "/nonexistent.ini"), VC_ERR_CONFIG);
  // Missing corpus path in the config.
  EXPECT_EQ(vc_train(ctx.get()), VC_ERR_CONFIG);
  EXPECT_NE(std::string(vc_last_error(ctx.get())), "");
}

TEST(CApi, ToyCorpusPrepareAndInspect) {
  Context ctx;
  const fs::path dir = Scratch("prep");
  ASSERT_EQ(vc_make_toy_corpus(ctx.get(), (dir / "corpus").c_str(),
                               "{\"utterances_per_voice\": 3}"),
            VC_OK);
  const std::string lex = "paths.lexicon=" + (dir / "corpus/lexicon.txt").string();
  ASSERT_EQ(vc_config_set(ctx.get(), lex.c_str()), VC_OK);
  ASSERT_EQ(vc_prepare(ctx.get(), (dir / "corpus").c_str(), (dir / "out").c_str()),
            VC_OK);
  const json summary = json::parse(vc_result_json(ctx.get()));
  EXPECT_EQ(summary["kept"], 6);
  EXPECT_EQ(summary["speakers"], 2);

  ASSERT_EQ(vc_inspect(ctx.get(), (dir / "out/manifest.jsonl").c_str()), VC_OK);
  const json report = json::parse(vc_result_json(ctx.get()));
  EXPECT_EQ(report["type"], "manifest");
  EXPECT_EQ(report["utterances"], 6);
  EXPECT_EQ(report["speaker_count"], 2);

  ASSERT_EQ(vc_inspect(ctx.get(), (dir / "out/features/spk1_utt000.mel").c_str()),
            VC_OK);
  const json feature = json::parse(vc_result_json(ctx.get()));
  EXPECT_EQ(feature["cols"], 80);
  EXPECT_EQ(feature["hop"], 256);

  std::ofstream(dir / "junk.bin", std::ios::binary) << std::string("\x01\x02\xff\x00zz", 6);
  EXPECT_EQ(vc_inspect(ctx.get(), (dir / "junk.bin").c_str()), VC_ERR_CHECKPOINT);
  EXPECT_STREQ(vc_last_error_code(ctx.get()), "CorruptCheckpoint");

  EXPECT_EQ(vc_prepare(ctx.get(), (dir / "nowhere").c_str(), (dir / "o2").c_str()),
            VC_ERR_CONFIG);
  fs::create_directories(dir / "empty");
  EXPECT_EQ(vc_prepare(ctx.get(), (dir / "empty").c_str(), (dir / "o3").c_str()),
            VC_ERR_CORPUS);
  EXPECT_STREQ(vc_last_error_code(ctx.get()), "EmptyCorpus");
  fs::remove_all(dir);
}

TEST(CApi, ProgressCallbackReceivesLines) {
  Context ctx;
  const fs::path dir = Scratch("progress");
  ASSERT_EQ(vc_make_toy_corpus(ctx.get(), (dir / "corpus").c_str(),
                               "{\"utterances_per_voice\": 1}"),
            VC_OK);
  std::ofstream(dir / "corpus/spk1/utt000.wav") << "broken";
  const std::string lex = "paths.lexicon=" + (dir / "corpus/lexicon.txt").string();
  vc_config_set(ctx.get(), lex.c_str());
  int lines = 0;
  vc_set_progress_callback(
      ctx.get(), [](const char*, void* user) { ++*static_cast<int*>(user); }, &lines);
  ASSERT_EQ(vc_prepare(ctx.get(), (dir / "corpus").c_str(), (dir / "out").c_str()),
            VC_OK);
  EXPECT_EQ(lines, 1);  // one skip event
  fs::remove_all(dir);
}

}  // namespace
