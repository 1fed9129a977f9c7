// Copyright 2026 the geqdot authors
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

#include <algorithm>
#include <cctype>
#include <climits>
#include <fstream>
#include <sstream>

#include "geqdot/cli/config.hpp"

namespace geqdot::cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str());
}

ConfigFile ConfigFile::parse_string(const std::string& text) {
  ConfigFile cf;
  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("unterminated section header on line " +
                          std::to_string(line_no));
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty())
        throw ConfigError("empty section name on line " +
                          std::to_string(line_no));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value on line " +
                        std::to_string(line_no));
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("empty key on line " + std::to_string(line_no));
    if (section.empty())
      throw ConfigError("key outside any section on line " +
                        std::to_string(line_no));
    if (cf.data_[section].count(key))
      throw ConfigError("duplicate key " + section + "." + key);
    cf.data_[section][key] = value;
  }
  return cf;
}

bool ConfigFile::has(const std::string& section,
                     const std::string& key) const {
  const auto s = data_.find(lower(section));
  return s != data_.end() && s->second.count(lower(key)) > 0;
}

std::string ConfigFile::raw(const std::string& section,
                            const std::string& key, bool& found) {
  const std::string s = lower(section), k = lower(key);
  consumed_.insert(s + "." + k);
  const auto it = data_.find(s);
  if (it == data_.end()) {
    found = false;
    return {};
  }
  const auto kt = it->second.find(k);
  if (kt == it->second.end()) {
    found = false;
    return {};
  }
  found = true;
  return kt->second;
}

double ConfigFile::get_double(const std::string& section,
                              const std::string& key, double fallback) {
  bool found = false;
  const std::string v = raw(section, key, found);
  if (!found) return fallback;
  try {
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("not a number: " + section + "." + key + " = " + v);
  }
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) {
  bool found = false;
  const std::string v = raw(section, key, found);
  if (!found) return fallback;
  try {
    size_t pos = 0;
    const long l = std::stol(v, &pos);
    if (pos != v.size() || l < INT_MIN || l > INT_MAX)
      throw std::invalid_argument(v);
    return static_cast<int>(l);
  } catch (const std::exception&) {
    throw ConfigError("not an integer: " + section + "." + key + " = " + v);
  }
}

uint64_t ConfigFile::get_u64(const std::string& section,
                             const std::string& key, uint64_t fallback) {
  bool found = false;
  const std::string v = raw(section, key, found);
  if (!found) return fallback;
  try {
    size_t pos = 0;
    const uint64_t u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw ConfigError("not an unsigned integer: " + section + "." + key +
                      " = " + v);
  }
}

bool ConfigFile::get_bool(const std::string& section, const std::string& key,
                          bool fallback) {
  bool found = false;
  const std::string v = lower(raw(section, key, found));
  if (!found) return fallback;
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("not a boolean: " + section + "." + key + " = " + v);
}

std::string ConfigFile::get_string(const std::string& section,
                                   const std::string& key,
                                   const std::string& fallback) {
  bool found = false;
  const std::string v = raw(section, key, found);
  return found ? v : fallback;
}

std::vector<double> ConfigFile::get_list(const std::string& section,
                                         const std::string& key,
                                         const std::vector<double>& fallback) {
  bool found = false;
  const std::string v = raw(section, key, found);
  if (!found) return fallback;
  std::vector<double> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError("empty list element in " + section + "." + key);
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not a number in list " + section + "." + key +
                        ": " + item);
    }
  }
  if (out.empty())
    throw ConfigError("empty list: " + section + "." + key);
  return out;
}

std::vector<std::string> ConfigFile::unconsumed_keys() const {
  std::vector<std::string> out;
  for (const auto& [section, kv] : data_)
    for (const auto& [key, value] : kv)
      if (!consumed_.count(section + "." + key))
        out.push_back(section + "." + key);
  return out;
}

void ConfigFile::require_fully_consumed() const {
  const auto leftover = unconsumed_keys();
  if (leftover.empty()) return;
  std::string msg = "unknown configuration keys:";
  for (const auto& k : leftover) msg += " " + k;
  throw ConfigError(msg);
}

}  // namespace geqdot::cli
