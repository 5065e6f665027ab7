// Copyright 2026 The defcheck authors
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

#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "defcheck/engine.hpp"
#include "defcheck/errors.hpp"

namespace defcheck::cli {

inline std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

struct LoadedFile {
  std::string path;
  std::string text;
  std::string hash;
};

inline LoadedFile load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  LoadedFile f;
  f.path = path;
  f.text = buf.str();
  f.hash = fnv1a64_hex(f.text);
  return f;
}

/// Machine-readable run record. Serialization is deterministic for fixed
/// inputs and flags; elapsed_ms is the one volatile field.
struct RunReport {
  std::string command;
  std::vector<LoadedFile> inputs;
  nlohmann::json flags = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  ExactnessFlag exactness;
  std::vector<std::string> human_lines;
  long long elapsed_ms = 0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["command"] = command;
    auto ins = nlohmann::json::array();
    for (const LoadedFile& f : inputs)
      ins.push_back({{"path", f.path}, {"fnv1a64", f.hash}});
    j["inputs"] = ins;
    j["flags"] = flags;
    j["result"] = result;
    j["exactness"] = {{"exact", exactness.exact}, {"reason", exactness.reason}};
    j["elapsed_ms"] = elapsed_ms;
    return j;
  }

  std::string to_text() const {
    std::string out;
    for (const std::string& line : human_lines) out += line + "\n";
    if (!exactness.exact)
      out += "warning: result truncated: " + exactness.reason + "\n";
    return out;
  }
};

class Stopwatch {
 public:
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace defcheck::cli
