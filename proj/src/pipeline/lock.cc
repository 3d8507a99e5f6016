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

#include "pipeline/lock.h"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <cerrno>
#include <filesystem>
#include <fstream>

#include "common/error.h"

namespace vclone {

namespace fs = std::filesystem;

namespace {

bool ProcessAlive(long pid) {
  if (pid <= 0) return false;
  return kill(static_cast<pid_t>(pid), 0) == 0 || errno == EPERM;
}

}  // namespace

DirectoryLock::DirectoryLock(const std::string& dir)
    : path_((fs::path(dir) / ".lock").string()) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  Require(!ec, ErrorCode::kIo, "cannot create " + dir + ": " + ec.message());
  for (int attempt = 0; attempt < 2; ++attempt) {
    const int fd = open(path_.c_str(), O_WRONLY | O_CREAT | O_EXCL, 0644);
    if (fd >= 0) {
      const std::string pid = std::to_string(getpid()) + "\n";
      const ssize_t written = write(fd, pid.data(), pid.size());
      close(fd);
      Require(written == static_cast<ssize_t>(pid.size()), ErrorCode::kIo,
              "cannot write " + path_);
      owned_ = true;
      return;
    }
    Require(errno == EEXIST, ErrorCode::kIo, "cannot create " + path_);
    long owner = 0;
    std::ifstream in(path_);
    in >> owner;
    if (ProcessAlive(owner)) {
      Fail(ErrorCode::kLocked, dir + " is in use by process " +
                                   std::to_string(owner) + " (" + path_ + ")");
    }
    fs::remove(path_, ec);  // stale
  }
  Fail(ErrorCode::kLocked, "could not acquire " + path_);
}

DirectoryLock::~DirectoryLock() {
  if (owned_) {
    std::error_code ec;
    fs::remove(path_, ec);
  }
}

}  // namespace vclone
