#include "errw/walker_system.hpp"

#include <stdexcept>
#include <string>

namespace errw {

std::uint64_t replica_seed(std::uint64_t base_seed, std::uint64_t replica) noexcept {
  std::uint64_t z = base_seed + (replica + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool is_valid_node(Domain domain, Node x) noexcept {
  return domain == Domain::IntegerLine || (x >= -1 && x <= 1);
}

namespace {

void require_node(Domain domain, Node x) {
  if (!is_valid_node(domain, x)) {
    throw std::out_of_range("node " + std::to_string(x) + " is not on the 3-node segment");
  }
}

constexpr EdgeIndex kLeftEdge{-1};
constexpr EdgeIndex kRightEdge{0};

}  // namespace

JumpProbabilities<Rational> transition_probabilities(const WeightState& weights, Node position, Domain domain) {
  require_node(domain, position);
  if (domain == Domain::Segment3 && position != 0) {
    return position < 0 ? JumpProbabilities<Rational>{Rational(0), Rational(1)}
                        : JumpProbabilities<Rational>{Rational(1), Rational(0)};
  }
  const Rational wl = weights.exact_weight(EdgeIndex{position - 1});
  const Rational wr = weights.exact_weight(EdgeIndex{position});
  const Rational total = wl + wr;
  return {wl / total, wr / total};
}

JumpProbabilities<double> transition_probabilities_double(const WeightState& weights, Node position, Domain domain) {
  require_node(domain, position);
  if (domain == Domain::Segment3 && position != 0) {
    return position < 0 ? JumpProbabilities<double>{0.0, 1.0} : JumpProbabilities<double>{1.0, 0.0};
  }
  const double wl = weights.weight(EdgeIndex{position - 1});
  const double wr = weights.weight(EdgeIndex{position});
  const double pr = wr / (wl + wr);
  return {1.0 - pr, pr};
}

Rational left_edge_fraction(const WeightState& weights) {
  const Rational wl = weights.exact_weight(kLeftEdge);
  return wl / (wl + weights.exact_weight(kRightEdge));
}

double left_edge_fraction_double(const WeightState& weights) {
  const double wl = weights.weight(kLeftEdge);
  return wl / (wl + weights.weight(kRightEdge));
}

WalkerSystem::WalkerSystem(SystemConfig config)
    : domain_(config.domain),
      scheduler_(config.scheduler),
      positions_(std::move(config.initial_positions)),
      weights_(std::move(config.reinforcement), std::move(config.default_weight), std::move(config.weight_overrides)),
      rng_(config.seed) {
  if (positions_.empty()) {
    throw std::invalid_argument("at least one walker is required");
  }
  if (scheduler_ == Scheduler::Alternating && positions_.size() != 2) {
    throw std::invalid_argument("the alternating scheduler requires exactly 2 walkers");
  }
  if (scheduler_ == Scheduler::Alternating && domain_ != Domain::Segment3) {
    throw std::invalid_argument("the alternating scheduler is defined on the 3-node segment only");
  }
  for (auto x : positions_) require_node(domain_, x);
}

StepRecord WalkerSystem::apply(std::size_t walker, Direction direction) {
  if (walker >= positions_.size()) {
    throw std::out_of_range("walker " + std::to_string(walker) + " does not exist");
  }
  const Node from = positions_[walker];
  const Node to = direction == Direction::Right ? from + 1 : from - 1;
  require_node(domain_, to);
  const auto edge = EdgeIndex::between(from, to);
  weights_.record_crossing(edge);
  positions_[walker] = to;
  ++time_;
  return StepRecord{time_, walker, from, to, edge};
}

StepRecord WalkerSystem::step() {
  std::size_t walker = 0;
  if (scheduler_ == Scheduler::Alternating) {
    walker = scheduled_walker();
  } else if (positions_.size() > 1) {
    walker = std::uniform_int_distribution<std::size_t>(0, positions_.size() - 1)(rng_);
  }
  const Node x = positions_[walker];
  Direction direction;
  if (domain_ == Domain::Segment3 && x != 0) {
    direction = x < 0 ? Direction::Right : Direction::Left;
  } else {
    const double wl = weights_.weight(EdgeIndex{x - 1});
    const double wr = weights_.weight(EdgeIndex{x});
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    direction = u * (wl + wr) < wr ? Direction::Right : Direction::Left;
  }
  return apply(walker, direction);
}

}  // namespace errw
