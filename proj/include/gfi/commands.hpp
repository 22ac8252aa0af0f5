#pragma once

#include <filesystem>

#include "gfi/config.hpp"

namespace gfi {

// Command entry points. Each produces its artifacts plus run_manifest.json
// in the resolved output directory and returns 0; failures are reported by
// exception (ConfigError/UsageError -> exit 2, ResourceError -> exit 3).
int cmd_solve(const ExperimentConfig& config);
int cmd_sgfi(const ExperimentConfig& config);
int cmd_ssfi(const ExperimentConfig& config);
int cmd_eval(const ExperimentConfig& config);
int cmd_enumerate(const ExperimentConfig& config);

// Config value, else $GFI_OUTPUT_DIR, else the current directory. Creates
// the directory.
std::filesystem::path prepare_output_dir(const ExperimentConfig& config);

}  // namespace gfi
