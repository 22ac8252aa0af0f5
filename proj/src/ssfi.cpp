#include "gfi/ssfi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "gfi/rng.hpp"
#include "gfi/types.hpp"

namespace gfi {

namespace {

constexpr const char* kSsfiSchema = "gfi.ssfi/1";
constexpr long long kExactTermBudget = 10000000;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

InfosetIndex::InfosetIndex(const Game& game, PlayerId player) : player_(player) {
  space_ = game.feature_space();
  if (space_ == nullptr) throw ConfigError("game does not define features");
  if (space_->target_player() != player) {
    throw UsageError("infoset index player must match the feature space target");
  }
  for (auto& [infoset, num_actions] : enumerate_infosets(game, player)) {
    Entry entry;
    entry.infoset = infoset;
    entry.num_actions = num_actions;
    entry.values = space_->feature_values(infoset);
    const int id = static_cast<int>(entries_.size());
    by_signature_[space_->action_signature(infoset)].push_back(id);
    by_key_.emplace(infoset.key, id);
    entries_.push_back(std::move(entry));
  }
}

const std::vector<int>& InfosetIndex::pool(std::string_view signature) const {
  static const std::vector<int> kEmpty;
  auto it = by_signature_.find(signature);
  return it == by_signature_.end() ? kEmpty : it->second;
}

int InfosetIndex::find_key(std::string_view key) const {
  auto it = by_key_.find(key);
  return it == by_key_.end() ? -1 : it->second;
}

std::vector<int> InfosetIndex::query(
    std::string_view signature,
    std::span<const std::pair<int, std::string>> constraints) const {
  const int m = space_->num_features();
  for (const auto& [feature, value] : constraints) {
    if (feature < 0 || feature >= m) throw UsageError("constraint on unknown feature");
    (void)value;
  }
  std::vector<int> out;
  for (int id : pool(signature)) {
    const Entry& entry = entries_[id];
    bool match = true;
    for (const auto& [feature, value] : constraints) {
      if (entry.values[feature] != value) {
        match = false;
        break;
      }
    }
    if (match) out.push_back(id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Shared setup for the sampled and exact estimators.

namespace {

struct SsfiContext {
  const InfosetIndex* index = nullptr;
  const StrategyProfile* profile = nullptr;
  const InfosetIndex::Entry* self = nullptr;
  std::vector<int> feature_set;
  int mp = 0;  // number of attributed features
  int n = 0;   // action count at the explained infoset
  std::vector<int> pool_ids;                    // entry ids sharing the signature
  std::vector<std::vector<double>> sigma;       // per pool position
  int self_pos = -1;                            // position of the explained infoset
  // Full assignment over feature_set (values joined with '|') -> pool positions.
  std::unordered_map<std::string, std::vector<int>, StringHash, StringEq> classes;
};

std::string assignment_from(const SsfiContext& ctx, const InfosetIndex::Entry& a,
                            const InfosetIndex::Entry& b, std::uint32_t from_a) {
  std::string key;
  for (int p = 0; p < ctx.mp; ++p) {
    const int f = ctx.feature_set[p];
    key += ((from_a >> p) & 1u) ? a.values[f] : b.values[f];
    key += '|';
  }
  return key;
}

SsfiContext make_context(const InfosetIndex& index, const StrategyProfile& profile,
                         const InfosetKey& infoset, const std::vector<int>& feature_set) {
  SsfiContext ctx;
  ctx.index = &index;
  ctx.profile = &profile;
  if (infoset.player != index.player()) {
    throw UsageError("infoset does not belong to the indexed player");
  }
  const int id = index.find_key(infoset.key);
  if (id < 0) throw UsageError("unknown infoset '" + infoset.key + "'");
  ctx.self = &index.entry(id);
  ctx.n = ctx.self->num_actions;

  const int m = index.space().num_features();
  if (feature_set.empty()) throw UsageError("feature_set must be non-empty");
  std::uint32_t seen = 0;
  for (int f : feature_set) {
    if (f < 0 || f >= m) throw UsageError("feature index out of range");
    if (seen & (1u << f)) throw UsageError("duplicate feature in feature_set");
    seen |= 1u << f;
  }
  ctx.feature_set = feature_set;
  ctx.mp = static_cast<int>(feature_set.size());

  ctx.pool_ids = index.pool(index.space().action_signature(infoset));
  ctx.sigma.reserve(ctx.pool_ids.size());
  for (std::size_t pos = 0; pos < ctx.pool_ids.size(); ++pos) {
    const InfosetIndex::Entry& entry = index.entry(ctx.pool_ids[pos]);
    std::vector<double> probs(ctx.n);
    profile.probs_for(index.player(), entry.infoset.key, probs);
    ctx.sigma.push_back(std::move(probs));
    if (entry.infoset.key == infoset.key) ctx.self_pos = static_cast<int>(pos);
    const std::uint32_t all = (ctx.mp >= 32) ? ~0u : ((1u << ctx.mp) - 1u);
    ctx.classes[assignment_from(ctx, entry, entry, all)].push_back(static_cast<int>(pos));
  }
  return ctx;
}

std::vector<std::string> determined_feature_warnings(const SsfiContext& ctx) {
  std::vector<std::string> warnings;
  const auto& names = ctx.index->space().feature_names();
  for (int p = 0; p < ctx.mp; ++p) {
    std::unordered_map<std::string, std::string, StringHash, StringEq> first_value;
    bool varied = false;
    for (int id : ctx.pool_ids) {
      const InfosetIndex::Entry& entry = ctx.index->entry(id);
      std::string reduced;
      for (int q = 0; q < ctx.mp; ++q) {
        if (q == p) continue;
        reduced += entry.values[ctx.feature_set[q]];
        reduced += '|';
      }
      const std::string& value = entry.values[ctx.feature_set[p]];
      auto [it, inserted] = first_value.emplace(std::move(reduced), value);
      if (!inserted && it->second != value) {
        varied = true;
        break;
      }
    }
    if (!varied) {
      warnings.push_back("feature " + names[ctx.feature_set[p]] +
                         " is determined by the action set and the remaining "
                         "attributed features on this pool");
    }
  }
  return warnings;
}

SsfiReport finish_report(const SsfiContext& ctx, SsfiReport report) {
  report.infoset = ctx.self->infoset;
  report.actions = ctx.index->space().action_labels(ctx.self->infoset);
  const auto& names = ctx.index->space().feature_names();
  for (int f : ctx.feature_set) report.feature_names.push_back(names[f]);
  report.strategy = ctx.sigma[ctx.self_pos];
  report.reconstructed = report.phi0;
  for (const auto& phi_j : report.phi) {
    for (int a = 0; a < ctx.n; ++a) report.reconstructed[a] += phi_j[a];
  }
  report.warnings = determined_feature_warnings(ctx);
  return report;
}

}  // namespace

SsfiReport ssfi(const InfosetIndex& index, const StrategyProfile& profile,
                const InfosetKey& infoset, const SsfiOptions& options) {
  if (options.t1 < 1 || options.t2 < 1) throw UsageError("t1 and t2 must be >= 1");
  SsfiContext ctx = make_context(index, profile, infoset, options.feature_set);
  const std::size_t pool_size = ctx.pool_ids.size();

  SsfiReport report;
  report.t1 = options.t1;
  report.t2 = options.t2;
  report.seed = options.seed;

  // Streams use the high word for the stage (1 = baseline, 2+p = feature p)
  // and the low word for the repetition, so they cannot collide with the
  // small stream ids other components derive from the same master seed.
  report.phi0.assign(ctx.n, 0.0);
  {
    SplitMix64 gen(derive_seed(options.seed, std::uint64_t{1} << 32));
    for (long long t = 0; t < options.t1; ++t) {
      const std::vector<double>& s = ctx.sigma[uniform_below(gen, pool_size)];
      for (int a = 0; a < ctx.n; ++a) report.phi0[a] += s[a];
    }
    for (int a = 0; a < ctx.n; ++a) report.phi0[a] /= static_cast<double>(options.t1);
  }

  long long missing = 0;
  std::vector<int> perm(ctx.mp);
  report.phi.assign(ctx.mp, std::vector<double>(ctx.n, 0.0));
  for (int p = 0; p < ctx.mp; ++p) {
    std::vector<double>& phi_p = report.phi[p];
    for (long long rep = 0; rep < options.t2; ++rep) {
      // Per-repetition streams keep repetitions order-independent.
      SplitMix64 gen(derive_seed(
          options.seed,
          (static_cast<std::uint64_t>(2 + p) << 32) | static_cast<std::uint64_t>(rep)));
      const InfosetIndex::Entry& alt =
          index.entry(ctx.pool_ids[uniform_below(gen, pool_size)]);
      std::iota(perm.begin(), perm.end(), 0);
      shuffle_in_place(gen, perm);
      std::uint32_t before = 0;  // features ordered before p, taken from self
      for (int q : perm) {
        if (q == p) break;
        before |= 1u << q;
      }
      const double* sigma_s = nullptr;
      const double* sigma_alt = nullptr;
      auto resolve = [&](std::uint32_t from_self) -> const double* {
        auto it = ctx.classes.find(assignment_from(ctx, *ctx.self, alt, from_self));
        if (it == ctx.classes.end()) {
          ++missing;
          return report.phi0.data();
        }
        const std::vector<int>& members = it->second;
        return ctx.sigma[members[uniform_below(gen, members.size())]].data();
      };
      sigma_s = resolve(before | (1u << p));
      sigma_alt = resolve(before);
      for (int a = 0; a < ctx.n; ++a) phi_p[a] += sigma_s[a] - sigma_alt[a];
    }
    for (int a = 0; a < ctx.n; ++a) phi_p[a] /= static_cast<double>(options.t2);
  }
  report.missing_rate =
      static_cast<double>(missing) /
      (2.0 * static_cast<double>(options.t2) * static_cast<double>(ctx.mp));
  return finish_report(ctx, std::move(report));
}

SsfiReport ssfi_exact(const InfosetIndex& index, const StrategyProfile& profile,
                      const InfosetKey& infoset, const std::vector<int>& feature_set) {
  SsfiContext ctx = make_context(index, profile, infoset, feature_set);
  const std::size_t pool_size = ctx.pool_ids.size();
  if (factorial(ctx.mp) * static_cast<double>(pool_size) >
      static_cast<double>(kExactTermBudget)) {
    throw ResourceError("ssfi_exact enumeration exceeds the term budget");
  }

  SsfiReport report;
  report.exact = true;

  // Exact baseline: uniform mean over the pool.
  report.phi0.assign(ctx.n, 0.0);
  for (const std::vector<double>& s : ctx.sigma) {
    for (int a = 0; a < ctx.n; ++a) report.phi0[a] += s[a];
  }
  for (int a = 0; a < ctx.n; ++a) report.phi0[a] /= static_cast<double>(pool_size);

  // Mean strategy per full assignment class.
  std::unordered_map<std::string, std::vector<double>, StringHash, StringEq> class_mean;
  for (const auto& [key, members] : ctx.classes) {
    std::vector<double> mean(ctx.n, 0.0);
    for (int pos : members) {
      for (int a = 0; a < ctx.n; ++a) mean[a] += ctx.sigma[pos][a];
    }
    for (int a = 0; a < ctx.n; ++a) mean[a] /= static_cast<double>(members.size());
    class_mean.emplace(key, std::move(mean));
  }

  // Permutations collapse to prefix subsets with the usual Shapley weights.
  const double fact_mp = factorial(ctx.mp);
  double missing_weight = 0.0;
  report.phi.assign(ctx.mp, std::vector<double>(ctx.n, 0.0));
  for (int p = 0; p < ctx.mp; ++p) {
    std::vector<double>& phi_p = report.phi[p];
    const std::uint32_t pbit = 1u << p;
    const std::uint32_t others = ((1u << ctx.mp) - 1u) & ~pbit;
    for (std::uint32_t prefix = others;; prefix = (prefix - 1) & others) {
      const int size = std::popcount(prefix);
      const double weight =
          factorial(size) * factorial(ctx.mp - size - 1) / fact_mp;
      for (std::size_t alt_pos = 0; alt_pos < pool_size; ++alt_pos) {
        const InfosetIndex::Entry& alt = index.entry(ctx.pool_ids[alt_pos]);
        auto resolve = [&](std::uint32_t from_self) -> const std::vector<double>& {
          auto it = class_mean.find(assignment_from(ctx, *ctx.self, alt, from_self));
          if (it == class_mean.end()) {
            missing_weight += weight / static_cast<double>(pool_size);
            return report.phi0;
          }
          return it->second;
        };
        const std::vector<double>& with_p = resolve(prefix | pbit);
        const std::vector<double>& without_p = resolve(prefix);
        const double scale = weight / static_cast<double>(pool_size);
        for (int a = 0; a < ctx.n; ++a) {
          phi_p[a] += scale * (with_p[a] - without_p[a]);
        }
      }
      if (prefix == 0) break;
    }
  }
  report.missing_rate = missing_weight / (2.0 * ctx.mp);
  return finish_report(ctx, std::move(report));
}

std::string ssfi_report_json(const SsfiReport& report) {
  nlohmann::ordered_json doc;
  doc["schema"] = kSsfiSchema;
  doc["infoset"] = report.infoset.key;
  doc["player"] = report.infoset.player;
  doc["actions"] = report.actions;
  doc["feature_set"] = report.feature_names;
  doc["phi0"] = report.phi0;
  nlohmann::ordered_json phi;
  for (std::size_t p = 0; p < report.phi.size(); ++p) {
    phi[report.feature_names[p]] = report.phi[p];
  }
  doc["phi"] = std::move(phi);
  doc["reconstructed"] = report.reconstructed;
  doc["strategy"] = report.strategy;
  doc["missing_rate"] = report.missing_rate;
  doc["t1"] = report.t1;
  doc["t2"] = report.t2;
  doc["seed"] = report.seed;
  doc["exact"] = report.exact;
  doc["warnings"] = report.warnings;
  return doc.dump(2) + "\n";
}

std::string render_ssfi_table(const SsfiReport& report) {
  auto percent = [](double v, bool sign) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), sign ? "%+.1f%%" : "%.1f%%", v * 100.0);
    return std::string(buf);
  };
  auto pad = [](const std::string& s, std::size_t width) {
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
  };
  const std::size_t w = 9;
  std::string out = "infoset " + report.infoset.key + " (player " +
                    std::to_string(report.infoset.player) + ")\n";
  out += pad("action", 6);
  out += pad("phi0", w);
  for (const std::string& name : report.feature_names) out += pad("phi_" + name, w);
  out += pad("rebuilt", w);
  out += pad("sigma", w);
  out += '\n';
  for (std::size_t a = 0; a < report.actions.size(); ++a) {
    out += pad(report.actions[a], 6);
    out += pad(percent(report.phi0[a], false), w);
    for (const auto& phi_j : report.phi) out += pad(percent(phi_j[a], true), w);
    out += pad(percent(report.reconstructed[a], false), w);
    out += pad(percent(report.strategy[a], false), w);
    out += '\n';
  }
  out += "missing_rate " + percent(report.missing_rate, false);
  if (!report.exact) {
    out += "  (t1=" + std::to_string(report.t1) + ", t2=" + std::to_string(report.t2) + ")";
  } else {
    out += "  (exact)";
  }
  out += '\n';
  for (const std::string& warning : report.warnings) {
    out += "note: " + warning + "\n";
  }
  return out;
}

}  // namespace gfi
