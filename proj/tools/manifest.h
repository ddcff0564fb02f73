// Copyright 2026 The Rolegraph Authors.
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

// Run manifests: what was run, on which inputs, with which parameters.

#ifndef ROLEGRAPH_TOOLS_MANIFEST_H_
#define ROLEGRAPH_TOOLS_MANIFEST_H_

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "json.hpp"
#include "params.h"
#include "rolegraph/csv.h"
#include "rolegraph/errors.h"

namespace rolegraph::cli {

inline constexpr const char* kManifestName = "manifest.json";
inline constexpr const char* kFailedMarker = "FAILED";

inline std::string Sha256File(const std::string& path) {
  auto in = OpenForRead(path);
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialization failed");
  }
  std::array<char, 1 << 16> buffer;
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buffer.data(), in.gcount());
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

inline std::string UtcTimestamp() {
  const auto now = std::chrono::system_clock::now();
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                     std::chrono::floor<std::chrono::seconds>(now));
}

struct InputFile {
  std::string path;
  std::string sha256;
};

struct Manifest {
  std::string tool = "rolegraph";
  std::string version = ROLEGRAPH_VERSION;
  std::string command;
  std::map<std::string, InputFile> inputs;  // by role, e.g. "graph"
  std::map<std::string, std::string> params;
  std::map<std::string, uint64_t> seeds;
  std::vector<std::string> outputs;         // file names inside the run dir
  nlohmann::ordered_json stats = nlohmann::ordered_json::object();
  std::string status = "running";
  std::string failed_stage;
  std::string error;
  int threads = 1;
  std::string started_at;
  std::string finished_at;
};

inline nlohmann::ordered_json ToJson(const Manifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["command"] = m.command;
  j["status"] = m.status;
  if (!m.failed_stage.empty()) {
    j["failed_stage"] = m.failed_stage;
    j["error"] = m.error;
  }
  auto& inputs = j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [role, file] : m.inputs) {
    inputs[role] = {{"path", file.path}, {"sha256", file.sha256}};
  }
  j["params"] = m.params;
  j["seeds"] = m.seeds;
  j["outputs"] = m.outputs;
  j["stats"] = m.stats;
  j["threads"] = m.threads;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  return j;
}

inline Manifest ReadManifest(const std::string& path) {
  auto in = OpenForRead(path);
  Manifest m;
  try {
    const auto j = nlohmann::json::parse(in);
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    for (const auto& [role, file] : j.at("inputs").items()) {
      m.inputs[role] = {file.at("path").get<std::string>(),
                        file.at("sha256").get<std::string>()};
    }
    m.params = j.at("params").get<std::map<std::string, std::string>>();
    m.seeds = j.at("seeds").get<std::map<std::string, uint64_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": not a valid manifest (" + e.what() + ")");
  }
  if (m.tool != "rolegraph") throw ParseError(path + ": not a rolegraph manifest");
  return m;
}

inline void WriteManifest(const Manifest& m, const std::string& path) {
  auto out = OpenForWrite(path);
  out << ToJson(m).dump(2) << '\n';
  out.close();
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace rolegraph::cli

#endif  // ROLEGRAPH_TOOLS_MANIFEST_H_
