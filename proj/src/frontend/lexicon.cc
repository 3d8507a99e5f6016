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

#include "frontend/lexicon.h"

#include <algorithm>
#include <sstream>

#include "common/binary_io.h"
#include "common/error.h"

namespace vclone {
namespace {

bool IsSpace(const std::string& cp) {
  return cp.size() == 1 && (cp[0] == ' ' || cp[0] == '\t' || cp[0] == '\n' ||
                            cp[0] == '\r' || cp[0] == '\f' || cp[0] == '\v');
}

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

std::vector<std::string> SplitCodePoints(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    size_t len = 1;
    if (c >= 0xF0) len = 4;
    else if (c >= 0xE0) len = 3;
    else if (c >= 0xC0) len = 2;
    if (i + len > text.size()) len = 1;
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

Lexicon Lexicon::Parse(std::string_view text) {
  Lexicon lex;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    Require(tab != std::string::npos && tab > 0, ErrorCode::kInvalidArgument,
            "lexicon line " + std::to_string(line_no) +
                ": expected grapheme<TAB>phones");
    const std::string grapheme = line.substr(0, tab);
    std::istringstream phones_in(line.substr(tab + 1));
    std::vector<std::string> phones;
    std::string p;
    while (phones_in >> p) phones.push_back(p);
    Require(!phones.empty(), ErrorCode::kInvalidArgument,
            "lexicon line " + std::to_string(line_no) + ": no phones");
    if (phones.size() == 1 && phones[0] == kShortPause) {
      lex.AddPunctuation(grapheme);
    } else {
      lex.AddEntry(grapheme, std::move(phones));
    }
  }
  return lex;
}

Lexicon Lexicon::Load(const std::string& path) {
  return Parse(ReadFileBytes(path));
}

void Lexicon::AddEntry(const std::string& grapheme,
                       std::vector<std::string> phones) {
  Require(!grapheme.empty() && !phones.empty(), ErrorCode::kInvalidArgument,
          "empty lexicon entry");
  for (const std::string& p : phones) {
    if (std::find(phone_order_.begin(), phone_order_.end(), p) ==
        phone_order_.end()) {
      phone_order_.push_back(p);
    }
  }
  max_length_ = std::max(max_length_,
                         static_cast<int>(SplitCodePoints(grapheme).size()));
  entries_[grapheme] = std::move(phones);
}

void Lexicon::AddPunctuation(const std::string& grapheme) {
  Require(!grapheme.empty(), ErrorCode::kInvalidArgument,
          "empty punctuation token");
  max_length_ = std::max(max_length_,
                         static_cast<int>(SplitCodePoints(grapheme).size()));
  punctuation_.insert(grapheme);
}

PhoneInventory Lexicon::Inventory() const { return PhoneInventory(phone_order_); }

void Lexicon::ValidateAgainst(const PhoneInventory& inventory) const {
  for (const auto& [grapheme, phones] : entries_) {
    for (const std::string& p : phones) {
      Require(inventory.Contains(p), ErrorCode::kUnknownPhone,
              "lexicon entry '" + grapheme + "' uses unknown phone '" + p + "'");
    }
  }
}

PhoneSequence TextToPhones(std::string_view text, const Lexicon& lexicon,
                           const TextToPhonesOptions& options) {
  const std::vector<std::string> cps = SplitCodePoints(text);
  Require(std::any_of(cps.begin(), cps.end(),
                      [](const std::string& c) { return !IsSpace(c); }),
          ErrorCode::kInvalidArgument, "text is empty");

  PhoneSequence out;
  auto push_pause = [&out] {
    if (out.empty() || out.back().symbol != kShortPause) {
      out.push_back(MakePhone(kShortPause));
    }
  };

  size_t i = 0;
  while (i < cps.size()) {
    if (IsSpace(cps[i])) {
      ++i;
      continue;
    }
    bool matched = false;
    const size_t longest =
        std::min(cps.size() - i, static_cast<size_t>(lexicon.max_grapheme_length()));
    for (size_t len = longest; len >= 1 && !matched; --len) {
      std::string token;
      for (size_t k = 0; k < len; ++k) token += cps[i + k];
      if (lexicon.punctuation().count(token)) {
        push_pause();
        i += len;
        matched = true;
      } else if (auto it = lexicon.entries().find(token);
                 it != lexicon.entries().end()) {
        for (const std::string& p : it->second) {
          if (p == kShortPause) {
            push_pause();
          } else {
            out.push_back(MakePhone(p));
          }
        }
        i += len;
        matched = true;
      }
    }
    if (!matched) throw UnknownGraphemeError(cps[i], static_cast<int>(i));
  }

  if (options.add_boundary_silence) {
    while (!out.empty() && out.front().symbol == kShortPause) out.erase(out.begin());
    while (!out.empty() && out.back().symbol == kShortPause) out.pop_back();
    out.insert(out.begin(), MakePhone(kSilence));
    if (out.size() > 1) out.push_back(MakePhone(kSilence));
  }
  return out;
}

}  // namespace vclone
