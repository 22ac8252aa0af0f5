#include "gfi/goofspiel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace gfi {
namespace {

constexpr std::uint16_t full_mask(int k) {
  return static_cast<std::uint16_t>((1u << k) - 1);
}

int popcount(std::uint16_t m) { return std::popcount(static_cast<unsigned>(m)); }

// i-th smallest card in the mask, 1-based card value.
int nth_card(std::uint16_t mask, int i) {
  for (int c = 0; c < 16; ++c) {
    if (mask & (1u << c)) {
      if (i == 0) return c + 1;
      --i;
    }
  }
  return 0;
}

std::vector<int> mask_to_cards(std::uint16_t mask) {
  std::vector<int> out;
  for (int c = 0; c < 16; ++c) {
    if (mask & (1u << c)) out.push_back(c + 1);
  }
  return out;
}

void append_cards(std::string& s, std::uint16_t mask) {
  for (int c = 0; c < 16; ++c) {
    if (mask & (1u << c)) s.push_back(static_cast<char>('0' + c + 1));
  }
}

}  // namespace

void GoofspielConfig::validate() const {
  if (k < 2) throw ConfigError("goofspiel requires k >= 2 (k=1 has no decisions)");
  if (k > 9) throw ConfigError("goofspiel supports k <= 9 (single-digit card encoding)");
  if (!is_contestant(target_player)) throw ConfigError("target_player must be 1 or 2");
}

GoofspielGame::GoofspielGame(GoofspielConfig config)
    : config_(config), features_(config.k, config.target_player) {
  config_.validate();
}

std::unique_ptr<GameState> GoofspielGame::initial_state() const {
  return std::make_unique<GoofspielState>(this);
}

std::string GoofspielGame::name() const {
  return "goofspiel_k" + std::to_string(config_.k);
}

GoofspielState::GoofspielState(const GoofspielGame* game)
    : game_(game),
      deck_(full_mask(game->config().k)),
      hand_{full_mask(game->config().k), full_mask(game->config().k)} {}

bool GoofspielState::is_terminal() const { return round_ == game_->config().k; }

PlayerId GoofspielState::player_to_act() const {
  if (center_ == 0) return kChancePlayer;
  return pending_ == 0 ? 1 : 2;
}

int GoofspielState::num_actions() const {
  if (center_ == 0) return popcount(deck_);
  return popcount(hand_[pending_ == 0 ? 0 : 1]);
}

int GoofspielState::action_card(ActionId action) const {
  std::uint16_t mask = center_ == 0 ? deck_ : hand_[pending_ == 0 ? 0 : 1];
  return nth_card(mask, action);
}

void GoofspielState::chance_probs(std::span<double> out) const {
  double p = 1.0 / static_cast<double>(out.size());
  std::fill(out.begin(), out.end(), p);
}

ActionId GoofspielState::sample_chance(double u) const {
  int n = num_actions();
  int a = static_cast<int>(u * n);
  return a < n ? a : n - 1;
}

double GoofspielState::utility(PlayerId player) const {
  int diff = points_[0] - points_[1];
  if (player == 2) diff = -diff;
  if (game_->config().utility_mode == UtilityMode::kWinLoss) {
    return diff > 0 ? 1.0 : diff < 0 ? -1.0 : 0.0;
  }
  return static_cast<double>(diff);
}

std::unique_ptr<GameState> GoofspielState::child(ActionId action) const {
  if (is_terminal()) throw UsageError("child() called on terminal goofspiel state");
  if (action < 0 || action >= num_actions()) {
    throw UsageError("illegal action " + std::to_string(action) + " at goofspiel state");
  }
  auto next = std::make_unique<GoofspielState>(*this);
  int card = action_card(action);
  std::uint16_t bit = static_cast<std::uint16_t>(1u << (card - 1));
  if (center_ == 0) {
    next->deck_ = static_cast<std::uint16_t>(deck_ & ~bit);
    next->center_ = static_cast<std::int8_t>(card);
  } else if (pending_ == 0) {
    next->hand_[0] = static_cast<std::uint16_t>(hand_[0] & ~bit);
    next->pending_ = static_cast<std::int8_t>(card);
  } else {
    next->hand_[1] = static_cast<std::uint16_t>(hand_[1] & ~bit);
    // Round resolves: higher card takes the center card's value.
    if (pending_ > card) {
      next->points_[0] = static_cast<std::int16_t>(points_[0] + center_);
    } else if (card > pending_) {
      next->points_[1] = static_cast<std::int16_t>(points_[1] + center_);
    }
    next->history_[round_] = {center_, pending_, static_cast<std::int8_t>(card)};
    next->center_ = 0;
    next->pending_ = 0;
    next->round_ = static_cast<std::int8_t>(round_ + 1);
  }
  return next;
}

std::string GoofspielState::infoset_string() const {
  // Resolved rounds are public: triples (center, own, opp) in play order,
  // then the current center card. Player 1's pending card never appears, so
  // both of player 2's successor histories share player 2's key.
  PlayerId p = player_to_act();
  std::string s;
  s.reserve(3 * static_cast<std::size_t>(round_) + 1);
  int own = p - 1;
  int opp = 2 - p;
  for (int t = 0; t < round_; ++t) {
    s.push_back(static_cast<char>('0' + history_[t][0]));
    s.push_back(static_cast<char>('0' + history_[t][1 + own]));
    s.push_back(static_cast<char>('0' + history_[t][1 + opp]));
  }
  s.push_back(static_cast<char>('0' + center_));
  return s;
}

std::string GoofspielState::action_label(ActionId action) const {
  return std::to_string(action_card(action));
}

// ---------------------------------------------------------------------------
// Features

namespace {

// Everything a target-player key encodes, decoded back into masks.
struct DecodedKey {
  int k = 0;
  int rounds = 0;
  int cur_center = 0;
  std::uint16_t own_played = 0;
  std::uint16_t opp_played = 0;
  std::uint16_t centers_seen = 0;
  int point_diff = 0;  // own minus opponent
};

DecodedKey decode_key(int k, const std::string& key) {
  if (key.empty() || key.size() % 3 != 1) {
    throw UsageError("malformed goofspiel infoset key: '" + key + "'");
  }
  DecodedKey d;
  d.k = k;
  d.rounds = static_cast<int>(key.size() / 3);
  auto card_at = [&](std::size_t i) {
    int c = key[i] - '0';
    if (c < 1 || c > k) throw UsageError("malformed goofspiel infoset key: '" + key + "'");
    return c;
  };
  for (int t = 0; t < d.rounds; ++t) {
    int center = card_at(3 * t);
    int own = card_at(3 * t + 1);
    int opp = card_at(3 * t + 2);
    d.centers_seen |= static_cast<std::uint16_t>(1u << (center - 1));
    d.own_played |= static_cast<std::uint16_t>(1u << (own - 1));
    d.opp_played |= static_cast<std::uint16_t>(1u << (opp - 1));
    if (own > opp) d.point_diff += center;
    if (opp > own) d.point_diff -= center;
  }
  d.cur_center = card_at(key.size() - 1);
  return d;
}

const std::vector<std::string> kGoofspielFeatureNames = {"C", "D", "O", "P"};

}  // namespace

GoofspielFeatureSpace::GoofspielFeatureSpace(int k, PlayerId target)
    : k_(k), target_(target) {}

const std::vector<std::string>& GoofspielFeatureSpace::feature_names() const {
  return kGoofspielFeatureNames;
}

GoofspielFeatures GoofspielFeatureSpace::features(const InfosetKey& infoset) const {
  if (infoset.player != target_) {
    throw UsageError("features requested for player " + std::to_string(infoset.player) +
                     " but the explained player is " + std::to_string(target_));
  }
  DecodedKey d = decode_key(k_, infoset.key);
  std::uint16_t full = full_mask(k_);
  GoofspielFeatures f;
  f.center = d.cur_center;
  f.deck = mask_to_cards(static_cast<std::uint16_t>(
      full & ~d.centers_seen & ~(1u << (d.cur_center - 1))));
  f.opp_hand = mask_to_cards(static_cast<std::uint16_t>(full & ~d.opp_played));
  f.point_diff = d.point_diff;
  f.hand = mask_to_cards(static_cast<std::uint16_t>(full & ~d.own_played));
  return f;
}

std::string GoofspielFeatureSpace::action_signature(const InfosetKey& infoset) const {
  if (infoset.player != target_) {
    throw UsageError("action signature requested for the non-target player");
  }
  DecodedKey d = decode_key(k_, infoset.key);
  std::string s;
  append_cards(s, static_cast<std::uint16_t>(full_mask(k_) & ~d.own_played));
  return s;
}

std::vector<std::string> GoofspielFeatureSpace::feature_values(
    const InfosetKey& infoset) const {
  GoofspielFeatures f = features(infoset);
  std::string deck, opp;
  for (int c : f.deck) deck.push_back(static_cast<char>('0' + c));
  for (int c : f.opp_hand) opp.push_back(static_cast<char>('0' + c));
  return {std::to_string(f.center), deck, opp, std::to_string(f.point_diff)};
}

std::vector<std::string> GoofspielFeatureSpace::action_labels(
    const InfosetKey& infoset) const {
  std::vector<std::string> labels;
  for (int c : features(infoset).hand) labels.push_back(std::to_string(c));
  return labels;
}

}  // namespace gfi
