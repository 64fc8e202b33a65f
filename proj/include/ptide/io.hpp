#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace ptide {

// 17 significant digits round-trips any double exactly.
std::string fmt_double(double v);

// Minimal CSV emitter; all numeric cells go through fmt_double.
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::filesystem::path path_;
};

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t file_digest(const std::filesystem::path& path);

// Writes an 8-bit binary PGM (values 0/255 for class 0/1).
void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& cls);

}  // namespace ptide
