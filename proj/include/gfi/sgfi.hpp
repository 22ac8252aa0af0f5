#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gfi/cfr.hpp"
#include "gfi/game.hpp"

namespace gfi {

// Exact Shapley values of a complete coalition table. `table` holds v(S) for
// every subset mask S in [0, 2^m); throws UsageError when incomplete.
std::vector<double> shapley_exact(int m, const std::vector<double>& table);

// Brute-force average of marginal contributions over all m! feature orders.
// Agrees with shapley_exact to float tolerance; kept as an oracle.
std::vector<double> shapley_by_permutations(int m, const std::vector<double>& table);

struct SgfiOptions {
  Algorithm algorithm = Algorithm::kExternalSamplingMccfr;
  long long iterations = 1;
  std::uint64_t master_seed = 1;
  int replicates = 1;
  // Checkpoints for the per-coalition expected-value curves.
  std::vector<long long> eval_schedule;
  // 0 = one worker per hardware thread (capped by the job count).
  int workers = 0;
  // Final average exploitability per coalition solve; skippable because it
  // costs two exact best responses per solve.
  bool final_exploitability = true;

  void validate() const;
};

// One coalition solve: replicate r, feature subset S.
struct CoalitionCell {
  std::uint32_t mask = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
  long long iterations = 0;
  double value = 0.0;                  // exact u_target of the final profile
  double final_exploitability = 0.0;   // (eps1 + eps2) / 2, -1 when skipped
  std::vector<std::pair<long long, double>> curve;  // (iteration, value)
};

struct SgfiResult {
  std::vector<std::string> features;
  int m = 0;
  PlayerId target_player = 0;

  // Index-aligned with `features`.
  std::vector<double> phi_mean;
  std::vector<double> phi_stddev;                 // sample stddev, 0 if replicates == 1
  std::vector<std::vector<double>> phi_by_replicate;  // [replicate][feature]
  std::vector<double> single_gain;                // v({j}) - v(empty), replicate mean
  std::vector<double> leave_out_loss;             // v(M) - v(M w/o j), replicate mean

  double baseline = 0.0;  // v(empty), replicate mean
  double full = 0.0;      // v(M), replicate mean
  std::vector<double> coalition_mean;  // by mask, replicate mean

  std::vector<CoalitionCell> cells;  // replicate-major, mask-minor
};

// Solves all 2^m coalitions for each replicate on a small work pool, then
// runs the exact Shapley stage per replicate and aggregates.
SgfiResult run_sgfi(const Game& game, const SgfiOptions& options);

std::string sgfi_report_json(const Game& game, const SgfiOptions& options,
                             const SgfiResult& result);

// Per-coalition expected-value curve, "iteration,expected_value" rows.
std::string coalition_csv(const CoalitionCell& cell);

// "none" for the empty mask, else concatenated feature names.
std::string subset_name(const std::vector<std::string>& features, std::uint32_t mask);

}  // namespace gfi
