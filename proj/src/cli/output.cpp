#include "errw/cli/output.hpp"

#include <charconv>
#include <system_error>

namespace errw::cli {

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

OutputSet::OutputSet(const ExperimentConfig& config) : config_(config), dir_(config.out) {
  std::error_code ec;
  if (std::filesystem::exists(dir_, ec)) {
    if (!std::filesystem::is_directory(dir_, ec)) throw IoError("output path " + dir_.string() + " is not a directory");
  } else {
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
    created_dir_ = true;
  }
}

OutputSet::~OutputSet() {
  if (committed_) return;
  std::error_code ec;
  for (auto& e : entries_) {
    e.stream.reset();
    std::filesystem::remove(e.path, ec);
  }
  if (created_dir_ && std::filesystem::is_empty(dir_, ec)) std::filesystem::remove(dir_, ec);
}

std::ofstream& OutputSet::open(const std::string& name, const std::vector<std::pair<std::string, std::string>>& extra) {
  const auto path = dir_ / name;
  auto stream = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*stream) throw IoError("cannot open " + path.string() + " for writing");
  entries_.push_back({path, std::move(stream)});
  auto& out = *entries_.back().stream;
  const bool jsonl = path.extension() == ".jsonl";
  if (jsonl) {
    nlohmann::json header = {{"config_hash", config_.hash}, {"mode", to_string(config_.mode)}, {"seed", config_.seed}};
    for (const auto& [k, v] : extra) header[k] = v;
    out << nlohmann::json{{"header", header}}.dump() << '\n';
  } else if (path.extension() == ".csv") {
    out << "# errw-lab " << to_string(config_.mode) << " config_hash=" << config_.hash << " seed=" << config_.seed
        << '\n';
    for (const auto& [k, v] : extra) out << "# " << k << '=' << v << '\n';
  }
  return out;
}

void OutputSet::commit() {
  for (auto& e : entries_) {
    e.stream->flush();
    if (!*e.stream) throw IoError("write to " + e.path.string() + " failed");
    e.stream->close();
    if (!*e.stream) throw IoError("closing " + e.path.string() + " failed");
  }
  committed_ = true;
}

std::vector<std::filesystem::path> OutputSet::files() const {
  std::vector<std::filesystem::path> out;
  for (const auto& e : entries_) out.push_back(e.path);
  return out;
}

}  // namespace errw::cli
