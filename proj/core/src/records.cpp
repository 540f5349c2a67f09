#include "fbs/records.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fbs/version.hpp"

namespace fbs {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t fnv1a64(std::span<const char> bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string digest_hex(std::span<const char> bytes) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_digest: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  return digest_hex(std::span<const char>(bytes.data(), bytes.size()));
}

Table::Table(std::string schema_name, std::vector<std::string> columns)
    : schema_(std::move(schema_name) + "/" + std::string(kRecordSchemaVersion)),
      columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("Table: no columns");
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("Table: row width does not match header");
  rows_.push_back(std::move(cells));
}

std::string Table::to_csv() const {
  std::ostringstream out;
  out << "schema";
  for (const auto& c : columns_) out << "," << c;
  out << "\n";
  for (const auto& row : rows_) {
    out << schema_;
    for (const auto& cell : row) out << "," << cell;
    out << "\n";
  }
  return out.str();
}

void Table::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("Table: cannot open " + path.string());
  out << to_csv();
}

}  // namespace fbs
