#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bec2/state.hpp"

namespace bec2 {

// Shortest exact decimal form ("%.17g" trimmed); parsing it back recovers
// the identical double, so emitted tables are bit-reproducible.
std::string format_double(double v);

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const void* data, std::size_t len);

// Header row plus data rows, '\n' line endings, no quoting (cell writers
// never emit commas).
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

// Collects files for one run directory and finishes with a manifest that
// checksums everything written. No timestamps anywhere: a repeated run
// produces byte-identical files.
class RunWriter {
 public:
  explicit RunWriter(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  void write_text(const std::string& relative, const std::string& content);
  void write_bytes(const std::string& relative, const void* data, std::size_t len);

  // manifest.json: command, complete flag, tool version and the sorted file
  // list with byte counts and fnv1a64 digests. Call last.
  void write_manifest(const std::string& command, bool complete);

 private:
  struct Entry {
    std::uint64_t bytes = 0;
    std::string digest;
  };
  std::filesystem::path dir_;
  std::map<std::string, Entry> entries_;
};

// state CSV: y, re_1, im_1, re_2, im_2.
std::string snapshot_csv(const MatterState& s);

// Raw doubles (component 0 interleaved re/im, then component 1) plus a JSON
// sidecar <base>.json describing the grid; written as <base>.f64.
void write_snapshot_binary(RunWriter& w, const std::string& base, const MatterState& s);

// Reads a snapshot written by write_snapshot_binary given the same base path
// (without extension).
MatterState read_snapshot_binary(const std::filesystem::path& base);

inline constexpr const char* tool_version = "1.0.0";

}  // namespace bec2
