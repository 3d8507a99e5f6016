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

#include "pipeline/config.h"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <sstream>

#include "common/binary_io.h"
#include "common/error.h"

namespace vclone {

namespace {

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

void CheckKey(const std::string& key) {
  const auto dot = key.find('.');
  Require(dot != std::string::npos && dot > 0 && dot + 1 < key.size() &&
              key.find('.', dot + 1) == std::string::npos,
          ErrorCode::kConfigInvalid,
          "config key '" + key + "' is not of the form section.key");
}

}  // namespace

Config Config::Parse(const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    Fail(ErrorCode::kConfigInvalid,
         "line " + std::to_string(e.line()) + ": " + e.message());
  }
  Config config;
  for (const auto& [section, body] : tree) {
    Require(!body.empty() || body.data().empty(), ErrorCode::kConfigInvalid,
            "key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      config.Set(section + "." + key, value.get_value<std::string>());
    }
  }
  return config;
}

Config Config::Load(const std::string& path) {
  std::string text;
  try {
    text = ReadFileBytes(path);
  } catch (const Error& e) {
    Fail(ErrorCode::kConfigInvalid, "cannot read config " + path);
  }
  return Parse(text);
}

void Config::ApplyOverride(const std::string& assignment) {
  const auto eq = assignment.find('=');
  Require(eq != std::string::npos, ErrorCode::kConfigInvalid,
          "override '" + assignment + "' is not key=value");
  Set(Trim(assignment.substr(0, eq)), Trim(assignment.substr(eq + 1)));
}

void Config::Set(const std::string& key, const std::string& value) {
  CheckKey(key);
  values_[key] = Trim(value);
}

bool Config::Has(const std::string& key) const {
  return values_.count(key) > 0;
}

const std::string* Config::Find(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

std::string Config::GetString(const std::string& key,
                              const std::string& def) const {
  const std::string* v = Find(key);
  return resolved_[key] = v ? *v : def;
}

int64_t Config::GetInt(const std::string& key, int64_t def) const {
  const std::string* found = Find(key);
  int64_t v = def;
  if (found) {
    const auto& s = *found;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    Require(r.ec == std::errc() && r.ptr == s.data() + s.size(),
            ErrorCode::kConfigInvalid, key + ": '" + s + "' is not an integer");
  }
  resolved_[key] = std::to_string(v);
  return v;
}

double Config::GetDouble(const std::string& key, double def) const {
  const std::string* found = Find(key);
  double v = def;
  if (found) {
    const auto& s = *found;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    Require(r.ec == std::errc() && r.ptr == s.data() + s.size(),
            ErrorCode::kConfigInvalid, key + ": '" + s + "' is not a number");
  }
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  resolved_[key] = std::string(buf, r.ptr);
  return v;
}

bool Config::GetBool(const std::string& key, bool def) const {
  const std::string* found = Find(key);
  bool v = def;
  if (found) {
    const auto& s = *found;
    if (s == "true" || s == "1" || s == "yes" || s == "on") {
      v = true;
    } else if (s == "false" || s == "0" || s == "no" || s == "off") {
      v = false;
    } else {
      Fail(ErrorCode::kConfigInvalid, key + ": '" + s + "' is not a boolean");
    }
  }
  resolved_[key] = v ? "true" : "false";
  return v;
}

std::vector<int> Config::GetIntList(const std::string& key,
                                    const std::vector<int>& def) const {
  const std::string* found = Find(key);
  if (!found) {
    resolved_[key] = JoinInts(def);
    return def;
  }
  std::vector<int> out;
  std::stringstream ss(*found);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    int v = 0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    Require(!item.empty() && r.ec == std::errc() &&
                r.ptr == item.data() + item.size(),
            ErrorCode::kConfigInvalid,
            key + ": '" + *found + "' is not a comma-separated int list");
    out.push_back(v);
  }
  resolved_[key] = JoinInts(out);
  return out;
}

std::vector<std::string> Config::UnusedKeys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) {
    if (!resolved_.count(key)) out.push_back(key);
  }
  return out;
}

std::string JoinInts(const std::vector<int>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace vclone
