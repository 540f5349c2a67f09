#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fbs {

/// Shortest exact decimal form of v (%.17g); round-trips binary64.
std::string format_double(double v);

/// FNV-1a 64-bit digest, hex encoded. Used for the per-output content digests
/// in run manifests and determinism checks.
std::uint64_t fnv1a64(std::span<const char> bytes);
std::string digest_hex(std::span<const char> bytes);
std::string file_digest(const std::filesystem::path& path);

/// Result-record table: comma-separated values, header row, and a leading
/// schema column ("<name>/<version>") on every record so files are
/// self-identifying.
class Table {
public:
  Table(std::string schema_name, std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }

  std::string to_csv() const;
  void write(const std::filesystem::path& path) const;

private:
  std::string schema_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace fbs
