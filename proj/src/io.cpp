#include "ptide/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace ptide {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path.string());
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw std::runtime_error("CsvWriter: write failed for " + path_.string());
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("file_digest: cannot open " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in) {
    in.read(buf, sizeof(buf));
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& cls) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path.string());
  out << "P5\n" << width << " " << height << "\n255\n";
  std::vector<std::uint8_t> pix(cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) pix[i] = cls[i] ? 255 : 0;
  out.write(reinterpret_cast<const char*>(pix.data()), static_cast<std::streamsize>(pix.size()));
  if (!out) throw std::runtime_error("write_pgm: write failed for " + path.string());
}

}  // namespace ptide
