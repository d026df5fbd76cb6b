#include "errw/cli/config.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <limits>
#include <utility>

#include "errw/sequence_spec.hpp"

namespace errw::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<Mode, const char*>, 6> kModeNames{{
    {Mode::SimulateSegment, "simulate-segment"},
    {Mode::ExactSegment, "exact-segment"},
    {Mode::SimulateZ, "simulate-z"},
    {Mode::Classify, "classify"},
    {Mode::ReproduceFigures, "reproduce-figures"},
    {Mode::VerifyIdentities, "verify-identities"},
}};

// Keys that only steer how a run executes; left out of the effective config.
constexpr std::array<const char*, 2> kRuntimeKeys{"threads", "out"};

json mode_defaults(Mode mode) {
  json d = {{"mode", to_string(mode)}, {"seed", 0}};
  switch (mode) {
    case Mode::SimulateSegment:
      d.update({{"walkers", 2}, {"scheduler", "uniform"}, {"reinforcement", "linear"}, {"steps", 4003},
                {"replicas", 10000}});
      break;
    case Mode::ExactSegment:
      d.update({{"process", "alternating"}, {"cycles", 100}, {"precision", "exact"}});
      break;
    case Mode::SimulateZ:
      d.update({{"walkers", 2},
                {"initial_positions", json::array()},
                {"reinforcement", "linear"},
                {"default_weight", "1"},
                {"weight_overrides", json::object()},
                {"steps", 100000},
                {"replicas", 200},
                {"stall_window", 10000},
                {"r_min", 10},
                {"diagnose_walker", nullptr},
                {"k_max", 256}});
      break;
    case Mode::Classify:
      d.update({{"reinforcement", {{"kind", "geometric"}, {"ratio", "2"}}}, {"k_max", 256}, {"walkers", 2}});
      break;
    case Mode::ReproduceFigures:
      d.update({{"replicas", 100000}, {"steps", 4003}, {"precise_cycles", 4003}});
      break;
    case Mode::VerifyIdentities:
      d.update({{"kernel_limit", 100},
                {"delta_limit", 400},
                {"max_half_length", 12},
                {"enumerate_upto", 5},
                {"meeting_limit", 30},
                {"alt_law_limit", 24}});
      break;
  }
  return d;
}

std::uint64_t get_uint(const json& doc, const std::string& key, std::uint64_t min,
                       std::uint64_t max = std::numeric_limits<std::uint64_t>::max()) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(key, "expected a nonnegative integer, got " + v.dump());
  }
  const auto x = v.get<std::uint64_t>();
  if (x < min || x > max) {
    throw ConfigError(key, "value " + std::to_string(x) + " outside [" + std::to_string(min) + ", " +
                               std::to_string(max) + "]");
  }
  return x;
}

std::string get_choice(const json& doc, const std::string& key, std::initializer_list<const char*> choices) {
  const auto& v = doc.at(key);
  std::string allowed;
  for (const char* c : choices) {
    if (v.is_string() && v.get<std::string>() == c) return c;
    allowed += std::string(allowed.empty() ? "" : ", ") + c;
  }
  throw ConfigError(key, "expected one of {" + allowed + "}, got " + v.dump());
}

Node get_node(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer, got " + v.dump());
  return v.get<Node>();
}

EdgeIndex parse_edge_key(const std::string& key, const std::string& field) {
  std::size_t used = 0;
  long long z = 0;
  try {
    z = std::stoll(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size()) throw ConfigError(field, "edge key \"" + key + "\" is not an integer");
  return EdgeIndex{z};
}

std::vector<Rational> parse_rational_list(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) throw ConfigError(field, "expected a non-empty array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rational_field(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

void require_keys(const json& j, const std::string& field, std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw ConfigError(field + "." + k, "unknown key");
  }
  for (const char* k : keys) {
    if (!j.contains(k)) throw ConfigError(field + "." + k, "missing");
  }
}

SequenceSpec sequence_from(const json& j, const std::string& kind, const std::string& field) {
  if (kind == "constant") {
    require_keys(j, field, {"kind", "value"});
    return SequenceSpec::constant(parse_rational_field(j["value"], field + ".value"));
  }
  if (kind == "polynomial") {
    require_keys(j, field, {"kind", "degree", "coefficient"});
    const auto degree = get_uint(j, "degree", 0, 64);
    return SequenceSpec::polynomial(static_cast<unsigned>(degree),
                                    parse_rational_field(j["coefficient"], field + ".coefficient"));
  }
  if (kind == "geometric") {
    require_keys(j, field, {"kind", "ratio"});
    return SequenceSpec::geometric(parse_rational_field(j["ratio"], field + ".ratio"));
  }
  require_keys(j, field, {"kind", "values"});
  return SequenceSpec::explicit_list(parse_rational_list(j["values"], field + ".values"));
}

}  // namespace

std::optional<Mode> parse_mode(std::string_view name) {
  for (const auto& [m, n] : kModeNames) {
    if (name == n) return m;
  }
  return std::nullopt;
}

std::string to_string(Mode mode) {
  for (const auto& [m, n] : kModeNames) {
    if (m == mode) return n;
  }
  return "unknown";
}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

Rational parse_rational_field(const json& j, const std::string& field) {
  try {
    if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "expected an integer or a string such as \"3/2\", got " + j.dump());
}

Reinforcement parse_reinforcement(const json& j, const std::string& field) {
  if (j.is_string()) {
    if (j.get<std::string>() == "linear") return Reinforcement::linear();
    throw ConfigError(field, "unknown reinforcement \"" + j.get<std::string>() + "\"");
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError(field, "expected \"linear\" or an object with a \"kind\"");
  }
  const auto kind = j["kind"].get<std::string>();
  try {
    if (kind == "linear") {
      require_keys(j, field, {"kind"});
      return Reinforcement::linear();
    }
    if (kind == "constant" || kind == "polynomial" || kind == "geometric" || kind == "explicit") {
      return Reinforcement::sequence(sequence_from(j, kind, field));
    }
    if (kind == "per_edge") {
      require_keys(j, field, {"kind", "tables", "base"});
      if (!j["tables"].is_object()) throw ConfigError(field + ".tables", "expected an object keyed by edge");
      std::map<EdgeIndex, std::vector<Rational>> tables;
      for (const auto& [k, v] : j["tables"].items()) {
        tables[parse_edge_key(k, field + ".tables")] = parse_rational_list(v, field + ".tables." + k);
      }
      return Reinforcement::per_edge(std::move(tables), parse_reinforcement(j["base"], field + ".base"));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field + ".kind", "unknown reinforcement kind \"" + kind + "\"");
}

json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("--config", "malformed JSON in " + path.string() + ": " + e.what());
  }
}

std::string config_hash(const json& effective) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : effective.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig load_config(Mode mode, const json& doc, const FlagOverrides& flags) {
  if (!doc.is_object()) throw ConfigError("--config", "top level must be a JSON object");
  json merged = mode_defaults(mode);
  ExperimentConfig c;
  c.mode = mode;
  c.threads = 1;
  c.out = "errw-out";
  for (const auto& [k, v] : doc.items()) {
    if (k == "threads") {
      if (!v.is_number_integer() || v.get<std::int64_t>() < 1 || v.get<std::int64_t>() > 1024) {
        throw ConfigError("threads", "expected an integer in [1, 1024]");
      }
      c.threads = v.get<unsigned>();
    } else if (k == "out") {
      if (!v.is_string() || v.get<std::string>().empty()) throw ConfigError("out", "expected a non-empty path");
      c.out = v.get<std::string>();
    } else if (!merged.contains(k)) {
      throw ConfigError(k, "unknown key for mode " + to_string(mode));
    } else {
      merged[k] = v;
    }
  }
  if (merged["mode"] != to_string(mode)) {
    throw ConfigError("mode", "config is for " + merged["mode"].dump() + " but the command line asks for " +
                                  to_string(mode));
  }
  auto flag = [&](const char* key, const auto& value) {
    if (!value) return;
    if (!merged.contains(key)) throw ConfigError(std::string("--") + key, "not used by mode " + to_string(mode));
    merged[key] = *value;
  };
  flag("seed", flags.seed);
  flag("replicas", flags.replicas);
  flag("steps", flags.steps);
  if (flags.threads) {
    if (*flags.threads == 0 || *flags.threads > 1024) throw ConfigError("--threads", "expected an integer in [1, 1024]");
    c.threads = *flags.threads;
  }
  if (flags.out) c.out = *flags.out;
  for (const char* k : kRuntimeKeys) merged.erase(k);

  c.seed = get_uint(merged, "seed", 0);
  if (merged.contains("steps")) c.steps = get_uint(merged, "steps", 1, std::uint64_t{1} << 40);
  if (merged.contains("replicas")) c.replicas = get_uint(merged, "replicas", 1, std::uint64_t{1} << 32);
  if (merged.contains("reinforcement")) c.reinforcement = parse_reinforcement(merged["reinforcement"], "reinforcement");
  if (merged.contains("walkers")) c.walkers = get_uint(merged, "walkers", 1, 64);
  if (merged.contains("k_max")) c.k_max = get_uint(merged, "k_max", 16, 10000000);

  switch (mode) {
    case Mode::SimulateSegment: {
      c.scheduler = get_choice(merged, "scheduler", {"uniform", "alternating"}) == "alternating"
                        ? Scheduler::Alternating
                        : Scheduler::UniformRandom;
      if (c.scheduler == Scheduler::Alternating && c.walkers != 2) {
        throw ConfigError("walkers", "the alternating scheduler needs exactly 2 walkers");
      }
      break;
    }
    case Mode::ExactSegment:
      c.process = get_choice(merged, "process", {"alternating", "single"});
      c.precision = get_choice(merged, "precision", {"exact", "double"});
      c.cycles = get_uint(merged, "cycles", 0, c.precision == "exact" ? 2000 : 200000);
      break;
    case Mode::SimulateZ: {
      const auto& pos = merged["initial_positions"];
      if (!pos.is_array()) throw ConfigError("initial_positions", "expected an array of integers");
      for (std::size_t i = 0; i < pos.size(); ++i) {
        c.initial_positions.push_back(get_node(pos[i], "initial_positions[" + std::to_string(i) + "]"));
      }
      if (!c.initial_positions.empty() && c.initial_positions.size() != c.walkers) {
        throw ConfigError("initial_positions", std::to_string(c.initial_positions.size()) + " positions for " +
                                                   std::to_string(c.walkers) + " walkers");
      }
      c.default_weight = parse_rational_field(merged["default_weight"], "default_weight");
      if (sgn(c.default_weight) <= 0) throw ConfigError("default_weight", "must be positive");
      const auto& ov = merged["weight_overrides"];
      if (!ov.is_object()) throw ConfigError("weight_overrides", "expected an object keyed by edge");
      for (const auto& [k, v] : ov.items()) {
        const auto w = parse_rational_field(v, "weight_overrides." + k);
        if (sgn(w) <= 0) throw ConfigError("weight_overrides." + k, "must be positive");
        c.weight_overrides[parse_edge_key(k, "weight_overrides")] = w;
      }
      c.stall_window = get_uint(merged, "stall_window", 1);
      c.r_min = get_uint(merged, "r_min", 0);
      if (!merged["diagnose_walker"].is_null()) {
        c.diagnose_walker = get_uint(merged, "diagnose_walker", 0, c.walkers - 1);
      }
      break;
    }
    case Mode::Classify:
      if (c.reinforcement.kind() == ReinforcementKind::PerEdge) {
        throw ConfigError("reinforcement", "classification needs a sequence of increments");
      }
      break;
    case Mode::ReproduceFigures:
      c.precise_cycles = get_uint(merged, "precise_cycles", 1, 200000);
      break;
    case Mode::VerifyIdentities:
      c.kernel_limit = get_uint(merged, "kernel_limit", 1, 2000);
      c.delta_limit = get_uint(merged, "delta_limit", 4, 4000);
      c.max_half_length = get_uint(merged, "max_half_length", 1, 1000);
      c.enumerate_upto = get_uint(merged, "enumerate_upto", 0, 6);
      c.meeting_limit = get_uint(merged, "meeting_limit", 1, 1000);
      c.alt_law_limit = get_uint(merged, "alt_law_limit", 0, 200);
      break;
  }

  c.effective = std::move(merged);
  c.hash = config_hash(c.effective);
  return c;
}

}  // namespace errw::cli
