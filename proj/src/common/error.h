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

#ifndef VCLONE_COMMON_ERROR_H_
#define VCLONE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace vclone {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownGrapheme,
  kUnknownPhone,
  kMalformedAlignment,
  kOverlappingIntervals,
  kInfeasibleDurations,
  kUnsupportedFormat,
  kEmptyAudio,
  kAudioTooShort,
  kEmptyCorpus,
  kIndexOutOfVocab,
  kLengthMismatch,
  kShapeMismatch,
  kZeroDuration,
  kEmptyTargetCorpus,
  kMisalignedPair,
  kEmptyAdaptationSet,
  kUnknownSpeaker,
  kConfigInvalid,
  kMissingCheckpoint,
  kCorruptCheckpoint,
  kVersionMismatch,
  kConfigMismatch,
  kIo,
  kLocked,
};

// Coarse grouping used for process exit codes and the C API status.
enum class ErrorCategory {
  kUsage,
  kConfig,
  kCorpus,
  kFrontend,
  kModel,
  kCheckpoint,
  kIo,
  kLocked,
  kInternal,
};

const char* ErrorCodeName(ErrorCode code);
ErrorCategory CategoryOf(ErrorCode code);
const char* CategoryName(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }
  ErrorCategory category() const { return CategoryOf(code_); }
  // The message without the code prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

class UnknownGraphemeError : public Error {
 public:
  UnknownGraphemeError(std::string token, int position);

  const std::string& token() const { return token_; }
  // Code point index into the input text.
  int position() const { return position_; }

 private:
  std::string token_;
  int position_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace vclone

#endif  // VCLONE_COMMON_ERROR_H_
