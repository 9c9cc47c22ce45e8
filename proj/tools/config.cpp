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

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <toml.hpp>

namespace softctrl::cli {

namespace {

Json from_toml(const toml::node& node, const std::string& where) {
  if (auto t = node.as_table()) {
    Json out = Json::object();
    for (const auto& [k, v] : *t) out[std::string(k.str())] = from_toml(v, where + "." + std::string(k.str()));
    return out;
  }
  if (auto a = node.as_array()) {
    Json out = Json::array();
    for (const auto& v : *a) out.push_back(from_toml(v, where));
    return out;
  }
  if (auto v = node.as_integer()) return v->get();
  if (auto v = node.as_floating_point()) return v->get();
  if (auto v = node.as_boolean()) return v->get();
  if (auto v = node.as_string()) return v->get();
  throw SchemaError("unsupported value type at '" + where + "'");
}

std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

}  // namespace

Json load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot read config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  Json root;
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (is_json) {
    try {
      const Json manifest = Json::parse(text);
      if (!manifest.contains("config")) throw SchemaError("manifest '" + path + "' has no 'config' object");
      root = manifest.at("config");
    } catch (const Json::exception& e) {
      throw SchemaError("invalid JSON in '" + path + "': " + e.what());
    }
  } else {
    try {
      root = from_toml(toml::parse(text, path), "");
    } catch (const toml::parse_error& e) {
      std::ostringstream msg;
      msg << "TOML syntax error in '" << path << "' at line " << e.source().begin.line << ": "
          << e.description();
      throw SchemaError(msg.str());
    }
  }
  if (!root.is_object() || !root.contains("schema")) {
    throw SchemaError("config '" + path + "' lacks the 'schema' key (expected \"" + kSchema + "\")");
  }
  if (root.at("schema") != kSchema) {
    throw SchemaError("unsupported schema " + root.at("schema").dump() + " (expected \"" + kSchema + "\")");
  }
  return root;
}

Section::Section(const Json& root, std::string name) : name_(std::move(name)) {
  const Json* node = &root;
  if (!name_.empty()) {
    std::stringstream path(name_);
    std::string part;
    while (std::getline(path, part, '.')) {
      if (!node->is_object() || !node->contains(part)) {
        node = nullptr;
        break;
      }
      node = &node->at(part);
    }
  }
  if (node == nullptr) {
    table_ = Json::object();
  } else if (!node->is_object()) {
    throw SchemaError("'" + name_ + "' must be a table");
  } else {
    table_ = *node;
  }
}

const Json* Section::find(const std::string& key) {
  used_.insert(key);
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &*it;
}

bool Section::has(const std::string& key) const { return table_.contains(key); }

void Section::fail(const std::string& key, const std::string& what) const {
  throw SchemaError("config key '" + join(name_, key) + "' " + what);
}

double Section::number(const std::string& key, double fallback) {
  const Json* v = find(key);
  double x = fallback;
  if (v) {
    if (!v->is_number()) fail(key, "must be a number");
    x = v->get<double>();
  }
  if (!std::isfinite(x)) fail(key, "must be finite");
  effective_[key] = x;
  return x;
}

double Section::positive(const std::string& key, double fallback) {
  const double x = number(key, fallback);
  if (!(x > 0.0)) fail(key, "must be positive (got " + Json(x).dump() + ")");
  return x;
}

double Section::non_negative(const std::string& key, double fallback) {
  const double x = number(key, fallback);
  if (x < 0.0) fail(key, "must be non-negative (got " + Json(x).dump() + ")");
  return x;
}

long Section::integer(const std::string& key, long fallback, long min_value) {
  const Json* v = find(key);
  long x = fallback;
  if (v) {
    if (!v->is_number_integer()) fail(key, "must be an integer");
    x = v->get<long>();
  }
  if (x < min_value) fail(key, "must be >= " + std::to_string(min_value));
  effective_[key] = x;
  return x;
}

bool Section::boolean(const std::string& key, bool fallback) {
  const Json* v = find(key);
  bool x = fallback;
  if (v) {
    if (!v->is_boolean()) fail(key, "must be true or false");
    x = v->get<bool>();
  }
  effective_[key] = x;
  return x;
}

std::string Section::choice(const std::string& key, const std::string& fallback,
                            const std::vector<std::string>& allowed) {
  const Json* v = find(key);
  std::string x = fallback;
  if (v) {
    if (!v->is_string()) fail(key, "must be a string");
    x = v->get<std::string>();
  }
  if (std::find(allowed.begin(), allowed.end(), x) == allowed.end()) {
    std::string opts;
    for (const auto& a : allowed) opts += (opts.empty() ? "" : ", ") + a;
    fail(key, "must be one of {" + opts + "} (got '" + x + "')");
  }
  effective_[key] = x;
  return x;
}

std::vector<double> Section::numbers(const std::string& key, const std::vector<double>& fallback) {
  const Json* v = find(key);
  std::vector<double> x = fallback;
  if (v) {
    if (!v->is_array()) fail(key, "must be an array of numbers");
    x.clear();
    for (const auto& e : *v) {
      if (!e.is_number()) fail(key, "must be an array of numbers");
      x.push_back(e.get<double>());
    }
  }
  effective_[key] = x;
  return x;
}

std::vector<Section> Section::tables(const std::string& key) {
  const Json* v = find(key);
  std::vector<Section> out;
  if (!v) return out;
  if (!v->is_array()) fail(key, "must be an array of tables");
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_object()) fail(key, "must be an array of tables");
    Json wrapper = Json::object();
    wrapper["item"] = (*v)[i];
    Section s(wrapper, "item");
    s.name_ = join(name_, key) + "[" + std::to_string(i) + "]";
    out.push_back(std::move(s));
  }
  return out;
}

void Section::finish() {
  for (auto it = table_.begin(); it != table_.end(); ++it) {
    if (!used_.count(it.key())) fail(it.key(), "is not recognised");
  }
}

void check_top_level(const Json& root, const std::vector<std::string>& allowed) {
  for (auto it = root.begin(); it != root.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw SchemaError("config key '" + it.key() + "' is not recognised");
    }
  }
}

}  // namespace softctrl::cli
