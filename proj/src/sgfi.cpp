#include "gfi/sgfi.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "gfi/evaluation.hpp"
#include "gfi/features.hpp"
#include "gfi/io_util.hpp"
#include "gfi/rng.hpp"
#include "gfi/types.hpp"

namespace gfi {

namespace {

constexpr const char* kSgfiSchema = "gfi.sgfi/1";
constexpr const char* kCoalitionSchema = "gfi.coalition/1";
constexpr int kMaxShapleyFeatures = 20;

void check_table(int m, const std::vector<double>& table) {
  if (m < 1 || m > kMaxShapleyFeatures) {
    throw UsageError("feature count out of range for exact Shapley");
  }
  if (table.size() != (std::size_t{1} << m)) {
    throw UsageError("coalition table incomplete: expected " +
                     std::to_string(std::size_t{1} << m) + " entries, got " +
                     std::to_string(table.size()));
  }
}

std::vector<double> factorials(int n) {
  std::vector<double> f(n + 1, 1.0);
  for (int i = 1; i <= n; ++i) f[i] = f[i - 1] * i;
  return f;
}

}  // namespace

std::vector<double> shapley_exact(int m, const std::vector<double>& table) {
  check_table(m, table);
  const std::vector<double> fact = factorials(m);
  std::vector<double> phi(m, 0.0);
  for (int j = 0; j < m; ++j) {
    const std::uint32_t bit = 1u << j;
    double total = 0.0;
    for (std::uint32_t s = 0; s < table.size(); ++s) {
      if (s & bit) continue;
      const int size = std::popcount(s);
      const double weight = fact[size] * fact[m - size - 1] / fact[m];
      total += weight * (table[s | bit] - table[s]);
    }
    phi[j] = total;
  }
  return phi;
}

std::vector<double> shapley_by_permutations(int m, const std::vector<double>& table) {
  check_table(m, table);
  if (m > 10) throw UsageError("permutation oracle limited to m <= 10");
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(m, 0.0);
  long long count = 0;
  do {
    std::uint32_t mask = 0;
    for (int j : order) {
      phi[j] += table[mask | (1u << j)] - table[mask];
      mask |= 1u << j;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& p : phi) p /= static_cast<double>(count);
  return phi;
}

void SgfiOptions::validate() const {
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (replicates < 1) throw ConfigError("replicates must be >= 1");
  if (workers < 0) throw ConfigError("workers must be >= 0");
}

std::string subset_name(const std::vector<std::string>& features, std::uint32_t mask) {
  if (mask == 0) return "none";
  std::string out;
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (mask & (1u << j)) out += features[j];
  }
  return out;
}

SgfiResult run_sgfi(const Game& game, const SgfiOptions& options) {
  options.validate();
  const FeatureSpace* space = game.feature_space();
  if (space == nullptr) throw ConfigError("SGFI requires a game with features");
  const int m = space->num_features();
  const PlayerId target = space->target_player();
  const std::uint32_t num_subsets = 1u << m;

  SgfiResult result;
  result.features = space->feature_names();
  result.m = m;
  result.target_player = target;
  result.cells.resize(static_cast<std::size_t>(options.replicates) * num_subsets);

  // Independent jobs, replicate-major so cell order is stable in the report.
  const std::size_t jobs = result.cells.size();
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto run_job = [&](std::size_t index) {
    const int replicate = static_cast<int>(index / num_subsets);
    const std::uint32_t mask = static_cast<std::uint32_t>(index % num_subsets);
    CoalitionCell& cell = result.cells[index];
    cell.mask = mask;
    cell.replicate = replicate;
    cell.seed = derive_seed(derive_seed(options.master_seed, replicate), mask);
    cell.iterations = options.iterations;

    SolverConfig config;
    config.algorithm = options.algorithm;
    config.iterations = options.iterations;
    config.seed = cell.seed;
    config.target_abstraction = FeatureSubset(mask, m);
    config.eval_schedule = options.eval_schedule;

    Solver solver(game, config);
    solver.run(nullptr, [&](long long iter, const StrategyView& average) {
      cell.curve.emplace_back(iter, expected_value(game, average, target));
    });
    cell.value = expected_value(game, solver.average_view(), target);
    cell.final_exploitability =
        options.final_exploitability ? exploitability(game, solver.average_view()).avg : -1.0;
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t index = next.fetch_add(1);
      if (index >= jobs) return;
      try {
        run_job(index);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  unsigned pool = options.workers > 0 ? static_cast<unsigned>(options.workers)
                                      : std::max(1u, std::thread::hardware_concurrency());
  pool = static_cast<unsigned>(std::min<std::size_t>(pool, jobs));
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < pool; ++i) threads.emplace_back(worker);
  worker();
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  // Shapley stage per replicate, then aggregate.
  result.phi_by_replicate.resize(options.replicates);
  result.coalition_mean.assign(num_subsets, 0.0);
  for (int r = 0; r < options.replicates; ++r) {
    std::vector<double> table(num_subsets);
    for (std::uint32_t s = 0; s < num_subsets; ++s) {
      table[s] = result.cells[static_cast<std::size_t>(r) * num_subsets + s].value;
      result.coalition_mean[s] += table[s] / options.replicates;
    }
    result.phi_by_replicate[r] = shapley_exact(m, table);
  }
  result.phi_mean.assign(m, 0.0);
  result.phi_stddev.assign(m, 0.0);
  for (int j = 0; j < m; ++j) {
    double mean = 0.0;
    for (int r = 0; r < options.replicates; ++r) mean += result.phi_by_replicate[r][j];
    mean /= options.replicates;
    result.phi_mean[j] = mean;
    if (options.replicates > 1) {
      double ss = 0.0;
      for (int r = 0; r < options.replicates; ++r) {
        const double d = result.phi_by_replicate[r][j] - mean;
        ss += d * d;
      }
      result.phi_stddev[j] = std::sqrt(ss / (options.replicates - 1));
    }
  }
  const std::uint32_t full_mask = num_subsets - 1;
  result.baseline = result.coalition_mean[0];
  result.full = result.coalition_mean[full_mask];
  result.single_gain.assign(m, 0.0);
  result.leave_out_loss.assign(m, 0.0);
  for (int j = 0; j < m; ++j) {
    result.single_gain[j] = result.coalition_mean[1u << j] - result.baseline;
    result.leave_out_loss[j] = result.full - result.coalition_mean[full_mask & ~(1u << j)];
  }
  return result;
}

std::string sgfi_report_json(const Game& game, const SgfiOptions& options,
                             const SgfiResult& result) {
  nlohmann::ordered_json doc;
  doc["schema"] = kSgfiSchema;
  doc["game"] = game.name();
  doc["target_player"] = result.target_player;
  doc["features"] = result.features;
  doc["algorithm"] = algorithm_name(options.algorithm);
  doc["iterations"] = options.iterations;
  doc["master_seed"] = options.master_seed;
  doc["replicates"] = options.replicates;
  doc["baseline"] = result.baseline;
  doc["full"] = result.full;
  auto by_feature = [&](const std::vector<double>& values) {
    nlohmann::ordered_json out;
    for (int j = 0; j < result.m; ++j) out[result.features[j]] = values[j];
    return out;
  };
  doc["phi"] = by_feature(result.phi_mean);
  doc["stddev"] = by_feature(result.phi_stddev);
  doc["single_gain"] = by_feature(result.single_gain);
  doc["leave_out_loss"] = by_feature(result.leave_out_loss);
  nlohmann::ordered_json phi_reps;
  for (int j = 0; j < result.m; ++j) {
    std::vector<double> values;
    for (const auto& rep : result.phi_by_replicate) values.push_back(rep[j]);
    phi_reps[result.features[j]] = values;
  }
  doc["phi_replicates"] = phi_reps;
  nlohmann::ordered_json coalitions;
  for (std::uint32_t s = 0; s < result.coalition_mean.size(); ++s) {
    coalitions[subset_name(result.features, s)] = result.coalition_mean[s];
  }
  doc["coalitions"] = coalitions;
  nlohmann::ordered_json details = nlohmann::ordered_json::array();
  for (const CoalitionCell& cell : result.cells) {
    nlohmann::ordered_json entry;
    entry["subset"] = subset_name(result.features, cell.mask);
    entry["replicate"] = cell.replicate;
    entry["seed"] = cell.seed;
    entry["iterations"] = cell.iterations;
    entry["value"] = cell.value;
    if (cell.final_exploitability >= 0.0) {
      entry["final_exploitability"] = cell.final_exploitability;
    }
    details.push_back(std::move(entry));
  }
  doc["coalition_details"] = std::move(details);
  return doc.dump(2) + "\n";
}

std::string coalition_csv(const CoalitionCell& cell) {
  std::string out = "# ";
  out += kCoalitionSchema;
  out += "\niteration,expected_value\n";
  for (const auto& [iteration, value] : cell.curve) {
    out += std::to_string(iteration);
    out += ',';
    out += format_double(value);
    out += '\n';
  }
  return out;
}

}  // namespace gfi
