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

#include "common/error.h"

namespace vclone {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownGrapheme: return "UnknownGrapheme";
    case ErrorCode::kUnknownPhone: return "UnknownPhone";
    case ErrorCode::kMalformedAlignment: return "MalformedAlignment";
    case ErrorCode::kOverlappingIntervals: return "OverlappingIntervals";
    case ErrorCode::kInfeasibleDurations: return "InfeasibleDurations";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kEmptyAudio: return "EmptyAudio";
    case ErrorCode::kAudioTooShort: return "AudioTooShort";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kIndexOutOfVocab: return "IndexOutOfVocab";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kZeroDuration: return "ZeroDuration";
    case ErrorCode::kEmptyTargetCorpus: return "EmptyTargetCorpus";
    case ErrorCode::kMisalignedPair: return "MisalignedPair";
    case ErrorCode::kEmptyAdaptationSet: return "EmptyAdaptationSet";
    case ErrorCode::kUnknownSpeaker: return "UnknownSpeaker";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kMissingCheckpoint: return "MissingCheckpoint";
    case ErrorCode::kCorruptCheckpoint: return "CorruptCheckpoint";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kLocked: return "Locked";
  }
  return "Unknown";
}

ErrorCategory CategoryOf(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return ErrorCategory::kUsage;
    case ErrorCode::kConfigInvalid:
    case ErrorCode::kConfigMismatch:
      return ErrorCategory::kConfig;
    case ErrorCode::kEmptyCorpus:
    case ErrorCode::kEmptyTargetCorpus:
    case ErrorCode::kEmptyAdaptationSet:
    case ErrorCode::kUnknownSpeaker:
      return ErrorCategory::kCorpus;
    case ErrorCode::kUnknownGrapheme:
    case ErrorCode::kUnknownPhone:
    case ErrorCode::kMalformedAlignment:
    case ErrorCode::kOverlappingIntervals:
    case ErrorCode::kInfeasibleDurations:
    case ErrorCode::kUnsupportedFormat:
    case ErrorCode::kEmptyAudio:
    case ErrorCode::kAudioTooShort:
      return ErrorCategory::kFrontend;
    case ErrorCode::kIndexOutOfVocab:
    case ErrorCode::kLengthMismatch:
    case ErrorCode::kShapeMismatch:
    case ErrorCode::kZeroDuration:
    case ErrorCode::kMisalignedPair:
      return ErrorCategory::kModel;
    case ErrorCode::kMissingCheckpoint:
    case ErrorCode::kCorruptCheckpoint:
    case ErrorCode::kVersionMismatch:
      return ErrorCategory::kCheckpoint;
    case ErrorCode::kIo:
      return ErrorCategory::kIo;
    case ErrorCode::kLocked:
      return ErrorCategory::kLocked;
  }
  return ErrorCategory::kInternal;
}

const char* CategoryName(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::kUsage: return "usage";
    case ErrorCategory::kConfig: return "config";
    case ErrorCategory::kCorpus: return "corpus";
    case ErrorCategory::kFrontend: return "frontend";
    case ErrorCategory::kModel: return "model";
    case ErrorCategory::kCheckpoint: return "checkpoint";
    case ErrorCategory::kIo: return "io";
    case ErrorCategory::kLocked: return "locked";
    case ErrorCategory::kInternal: return "internal";
  }
  return "internal";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      detail_(message) {}

UnknownGraphemeError::UnknownGraphemeError(std::string token, int position)
    : Error(ErrorCode::kUnknownGrapheme,
            "'" + token + "' at position " + std::to_string(position)),
      token_(std::move(token)),
      position_(position) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace vclone
