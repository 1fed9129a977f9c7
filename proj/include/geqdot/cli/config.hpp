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

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace geqdot::cli {

// Raised for malformed or unknown configuration; mapped to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// INI-style configuration: "[section]" headers, "key = value" entries,
// comments starting with '#' or ';'.  Getters mark keys as consumed;
// anything left unconsumed after an experiment resolves its settings is an
// error, so typos never pass silently.
class ConfigFile {
 public:
  static ConfigFile parse_file(const std::string& path);
  static ConfigFile parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;

  double get_double(const std::string& section, const std::string& key,
                    double fallback);
  int get_int(const std::string& section, const std::string& key,
              int fallback);
  uint64_t get_u64(const std::string& section, const std::string& key,
                   uint64_t fallback);
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback);
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback);
  std::vector<double> get_list(const std::string& section,
                               const std::string& key,
                               const std::vector<double>& fallback);

  // "section.key" names never requested by any getter.
  std::vector<std::string> unconsumed_keys() const;
  void require_fully_consumed() const;

 private:
  std::string raw(const std::string& section, const std::string& key,
                  bool& found);
  std::map<std::string, std::map<std::string, std::string>> data_;
  std::set<std::string> consumed_;
};

}  // namespace geqdot::cli
