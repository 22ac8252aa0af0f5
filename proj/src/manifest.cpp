#include "gfi/manifest.hpp"

#include "gfi/io_util.hpp"

namespace gfi {

namespace {
constexpr const char* kManifestSchema = "gfi.manifest/1";
}

RunManifest::RunManifest(std::string command, nlohmann::ordered_json config_snapshot,
                         std::uint64_t master_seed)
    : command_(std::move(command)),
      config_(std::move(config_snapshot)),
      master_seed_(master_seed) {}

std::string RunManifest::add_output(const std::string& filename,
                                    std::string_view content) {
  std::string digest = sha256_hex(content);
  outputs_.emplace_back(filename, digest);
  return digest;
}

void RunManifest::add_timing(const std::string& stage, double seconds) {
  timings_.emplace_back(stage, seconds);
}

void RunManifest::add_result(const std::string& name, double value) {
  results_.emplace_back(name, value);
}

std::string RunManifest::to_json_string() const {
  nlohmann::ordered_json doc;
  doc["schema"] = kManifestSchema;
  doc["tool"] = "gfi";
  doc["version"] = kToolVersion;
  doc["command"] = command_;
  doc["master_seed"] = master_seed_;
  doc["config"] = config_;
  nlohmann::ordered_json timings;
  for (const auto& [stage, seconds] : timings_) timings[stage] = seconds;
  doc["timings_seconds"] = std::move(timings);
  if (!results_.empty()) {
    nlohmann::ordered_json results;
    for (const auto& [name, value] : results_) results[name] = value;
    doc["results"] = std::move(results);
  }
  nlohmann::ordered_json outputs;
  for (const auto& [filename, digest] : outputs_) outputs[filename] = digest;
  doc["outputs_sha256"] = std::move(outputs);
  return doc.dump(2) + "\n";
}

void RunManifest::write(const std::filesystem::path& dir) const {
  write_file_atomic(dir / "run_manifest.json", to_json_string());
}

}  // namespace gfi
