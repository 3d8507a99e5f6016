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

// Writes a synthetic multi-speaker corpus for smoke tests and demos.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "vclone/vclone.h"

int main(int argc, char** argv) {
  CLI::App app{"Write a synthetic vclone corpus"};
  std::string dir;
  std::string options = "{}";
  app.add_option("dir", dir, "Output directory")->required();
  app.add_option("--options", options,
                 "JSON: voices, utterances_per_voice, min_words, max_words, "
                 "seed, noise_floor");
  CLI11_PARSE(app, argc, argv);

  vc_context* ctx = vc_context_create();
  if (ctx == nullptr) return VC_ERR_INTERNAL;
  const vc_status s = vc_make_toy_corpus(ctx, dir.c_str(), options.c_str());
  if (s == VC_OK) {
    std::printf("%s\n", vc_result_json(ctx));
  } else {
    std::fprintf(stderr, "error category=%s code=%s message=\"%s\"\n",
                 vc_status_category(s), vc_last_error_code(ctx),
                 vc_last_error(ctx));
  }
  vc_context_destroy(ctx);
  return static_cast<int>(s);
}
