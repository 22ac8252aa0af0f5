#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gfi {

inline constexpr const char* kToolVersion = "0.1.0";

// Provenance record every command writes last: effective config, seed,
// per-stage wall-clock timings, and a digest inventory of the artifacts the
// run produced. The inventory lets a re-run with the same snapshot be
// verified without diffing file contents.
class RunManifest {
 public:
  RunManifest(std::string command, nlohmann::ordered_json config_snapshot,
              std::uint64_t master_seed);

  // Registers an artifact by content; returns its sha256 hex digest.
  std::string add_output(const std::string& filename, std::string_view content);

  void add_timing(const std::string& stage, double seconds);
  void add_result(const std::string& name, double value);

  std::string to_json_string() const;

  // Writes run_manifest.json into `dir` atomically.
  void write(const std::filesystem::path& dir) const;

 private:
  std::string command_;
  nlohmann::ordered_json config_;
  std::uint64_t master_seed_;
  std::vector<std::pair<std::string, double>> timings_;
  std::vector<std::pair<std::string, double>> results_;
  std::vector<std::pair<std::string, std::string>> outputs_;  // filename, digest
};

// Wall-clock stage timer.
class StageTimer {
 public:
  StageTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace gfi
