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

#ifndef VCLONE_FRONTEND_LEXICON_H_
#define VCLONE_FRONTEND_LEXICON_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "frontend/phones.h"

namespace vclone {

// Grapheme-to-phone table. File format, one entry per line:
//
//   grapheme<TAB>phone phone ...
//
// An entry whose only phone is SP marks the grapheme as punctuation. Blank
// lines and lines starting with '#' are ignored.
class Lexicon {
 public:
  Lexicon() = default;

  static Lexicon Parse(std::string_view text);
  static Lexicon Load(const std::string& path);

  void AddEntry(const std::string& grapheme, std::vector<std::string> phones);
  void AddPunctuation(const std::string& grapheme);

  const std::map<std::string, std::vector<std::string>>& entries() const {
    return entries_;
  }
  const std::set<std::string>& punctuation() const { return punctuation_; }
  // Longest grapheme in code points.
  int max_grapheme_length() const { return max_length_; }

  // SIL, SP, then every phone used by an entry in first-seen order.
  PhoneInventory Inventory() const;
  // Throws UnknownPhone if an entry uses a symbol outside `inventory`.
  void ValidateAgainst(const PhoneInventory& inventory) const;

 private:
  std::map<std::string, std::vector<std::string>> entries_;
  std::set<std::string> punctuation_;
  std::vector<std::string> phone_order_;
  int max_length_ = 0;
};

struct TextToPhonesOptions {
  // Wrap the result in SIL ... SIL; an SP at either edge is absorbed.
  bool add_boundary_silence = false;
};

// Greedy longest-match segmentation over UTF-8 code points; whitespace only
// separates tokens. Punctuation becomes a single SP and runs of SP collapse.
// Throws UnknownGraphemeError with the code point position of the first
// unmapped token.
PhoneSequence TextToPhones(std::string_view text, const Lexicon& lexicon,
                           const TextToPhonesOptions& options = {});

// Splits UTF-8 into code points (invalid bytes pass through one at a time).
std::vector<std::string> SplitCodePoints(std::string_view text);

}  // namespace vclone

#endif  // VCLONE_FRONTEND_LEXICON_H_
