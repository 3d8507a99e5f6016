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

#ifndef VCLONE_PIPELINE_MODEL_IO_H_
#define VCLONE_PIPELINE_MODEL_IO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "acoustic/acoustic_model.h"
#include "duration/duration_model.h"
#include "pipeline/checkpoint.h"
#include "vocoder/discriminator.h"
#include "vocoder/generator.h"

namespace vclone {

// Canonical JSON of each architecture. The phone list is part of the
// duration and acoustic configs so a changed lexicon is caught on load.
// The acoustic speaker count is not: it lives in the speaker list.
std::string DurationConfigJson(const DurationConfig& config,
                               const std::vector<std::string>& phones);
std::string AcousticConfigJson(const AcousticConfig& config,
                               const std::vector<std::string>& phones);
std::string GeneratorConfigJson(const GeneratorConfig& config);
std::string DiscriminatorConfigJson(const DiscriminatorConfig& config);

uint64_t ConfigJsonHash(const std::string& json);

Checkpoint MakeCheckpoint(const DurationModel& model,
                          const std::vector<std::string>& phones, int64_t step);
Checkpoint MakeCheckpoint(const AcousticModel& model,
                          const std::vector<std::string>& phones, int64_t step);
Checkpoint MakeCheckpoint(const Generator& model, int64_t step);
Checkpoint MakeCheckpoint(const Discriminators& model, int64_t step);

// Rebuild a model from the architecture stored in the checkpoint. Throws
// ConfigMismatch on a wrong kind and CorruptCheckpoint when the tensors do
// not fit the stored architecture.
DurationModel RestoreDurationModel(const Checkpoint& checkpoint,
                                   std::vector<std::string>* phones = nullptr);
AcousticModel RestoreAcousticModel(const Checkpoint& checkpoint,
                                   std::vector<std::string>* phones = nullptr);
Generator RestoreGenerator(const Checkpoint& checkpoint);
Discriminators RestoreDiscriminators(const Checkpoint& checkpoint);

// Name-wise tensor copy with shape checks.
std::vector<std::pair<std::string, Tensor>> ExportTensors(
    const NamedParams& params);
void ImportTensors(const Checkpoint& checkpoint, const NamedParams& params);

}  // namespace vclone

#endif  // VCLONE_PIPELINE_MODEL_IO_H_
