#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "errw/reinforcement.hpp"
#include "errw/walker_system.hpp"

namespace errw::cli {

enum class Mode { SimulateSegment, ExactSegment, SimulateZ, Classify, ReproduceFigures, VerifyIdentities };

std::optional<Mode> parse_mode(std::string_view name);
std::string to_string(Mode mode);

/// Invalid configuration. `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct FlagOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> replicas;
  std::optional<std::uint64_t> steps;
  std::optional<unsigned> threads;
  std::optional<std::string> out;
};

struct ExperimentConfig {
  Mode mode = Mode::SimulateSegment;
  // Every data-determining field with defaults filled in. Feeding it back as
  // a config reproduces the run.
  nlohmann::json effective;
  std::string hash;

  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::filesystem::path out;

  std::size_t walkers = 2;
  Scheduler scheduler = Scheduler::UniformRandom;
  Reinforcement reinforcement = Reinforcement::linear();
  std::vector<Node> initial_positions;
  Rational default_weight{1};
  std::map<EdgeIndex, Rational> weight_overrides;
  std::uint64_t steps = 0;
  std::uint64_t replicas = 0;

  // exact-segment
  std::string process;
  std::string precision;
  std::uint64_t cycles = 0;
  // simulate-z
  std::uint64_t stall_window = 0;
  std::uint64_t r_min = 0;
  std::optional<std::size_t> diagnose_walker;
  // classify, simulate-z
  std::uint64_t k_max = 0;
  // reproduce-figures
  std::uint64_t precise_cycles = 0;
  // verify-identities
  std::uint64_t kernel_limit = 0;
  std::uint64_t delta_limit = 0;
  std::uint64_t max_half_length = 0;
  std::uint64_t enumerate_upto = 0;
  std::uint64_t meeting_limit = 0;
  std::uint64_t alt_law_limit = 0;
};

/// Parses a JSON document from disk. Unreadable or malformed files are
/// configuration errors.
nlohmann::json read_config_file(const std::filesystem::path& path);

/// Merges `doc` over the mode defaults, applies the flags, and validates.
ExperimentConfig load_config(Mode mode, const nlohmann::json& doc, const FlagOverrides& flags);

/// 16 hex digits of FNV-1a over the compact dump of `effective`.
std::string config_hash(const nlohmann::json& effective);

/// Reinforcement from its JSON description: "linear" or an object with a
/// "kind" of linear, constant, polynomial, geometric, explicit or per_edge.
Reinforcement parse_reinforcement(const nlohmann::json& j, const std::string& field);

Rational parse_rational_field(const nlohmann::json& j, const std::string& field);

}  // namespace errw::cli
