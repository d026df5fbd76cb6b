#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errw/cli/config.hpp"

namespace errw::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Files of one run. CSV files start with "# " header lines carrying the mode,
/// config hash and seed; JSONL files start with a header object instead.
/// Unless commit() is called, everything created is removed on destruction.
class OutputSet {
 public:
  explicit OutputSet(const ExperimentConfig& config);
  ~OutputSet();
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  /// Creates `name` in the output directory and writes its header. `extra`
  /// adds key=value pairs to the header.
  std::ofstream& open(const std::string& name, const std::vector<std::pair<std::string, std::string>>& extra = {});

  /// Flushes and closes every file; throws IoError if any write failed.
  void commit();

  const std::filesystem::path& directory() const noexcept { return dir_; }
  std::vector<std::filesystem::path> files() const;

 private:
  struct Entry {
    std::filesystem::path path;
    std::unique_ptr<std::ofstream> stream;
  };

  const ExperimentConfig& config_;
  std::filesystem::path dir_;
  bool created_dir_ = false;
  bool committed_ = false;
  std::vector<Entry> entries_;
};

}  // namespace errw::cli
