// Copyright 2026 The softctrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "softctrl/common.hpp"

namespace softctrl::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "softctrl/1";

/// Parses a TOML config, or the "config" object of a JSON manifest, into JSON.
/// Throws SchemaError on syntax errors or a missing/unknown schema key.
Json load_config(const std::string& path);

/// Typed access to one config table. Every key read is recorded together with
/// the value actually used (default or given), so the effective configuration
/// can be written back out; finish() rejects keys nobody asked for.
class Section {
 public:
  Section(const Json& root, std::string name);

  double number(const std::string& key, double fallback);
  double positive(const std::string& key, double fallback);
  double non_negative(const std::string& key, double fallback);
  long integer(const std::string& key, long fallback, long min_value);
  bool boolean(const std::string& key, bool fallback);
  std::string choice(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  bool has(const std::string& key) const;

  /// Array of tables under `key`, each wrapped as its own Section.
  std::vector<Section> tables(const std::string& key);

  void finish();
  const Json& effective() const { return effective_; }
  Json& effective() { return effective_; }
  const std::string& name() const { return name_; }

 private:
  const Json* find(const std::string& key);
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  Json table_;
  std::string name_;
  std::set<std::string> used_;
  Json effective_ = Json::object();
};

/// Fails with SchemaError when `root` has top-level keys outside `allowed`.
void check_top_level(const Json& root, const std::vector<std::string>& allowed);

}  // namespace softctrl::cli
