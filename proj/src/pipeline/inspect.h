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

#ifndef VCLONE_PIPELINE_INSPECT_H_
#define VCLONE_PIPELINE_INSPECT_H_

#include <string>

namespace vclone {

// JSON report for a checkpoint, feature file, manifest or run record.
// Anything unrecognized or damaged throws CorruptCheckpoint.
std::string InspectArtifact(const std::string& path);

}  // namespace vclone

#endif  // VCLONE_PIPELINE_INSPECT_H_
