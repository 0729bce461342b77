#include "bolforge/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bolforge {

std::string ltab_to_string(const LoopTable &t) {
  std::string out = "ltab 1\n" + std::to_string(t.n) + "\n";
  out.reserve(out.size() + std::size_t{t.n} * t.n * 5);
  for (std::uint32_t i = 0; i < t.n; ++i) {
    for (std::uint32_t j = 0; j < t.n; ++j) {
      if (j)
        out.push_back(' ');
      out += std::to_string(t.at(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f)
    throw std::runtime_error("write failed: " + path);
}

void ltab_write(const LoopTable &t, const std::string &path) {
  write_text_file(path, ltab_to_string(t));
}

LoopTable ltab_read(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw std::runtime_error("cannot open: " + path);
  std::string magic;
  int version = 0;
  if (!(f >> magic >> version) || magic != "ltab" || version != 1)
    throw std::runtime_error("not an ltab v1 file: " + path);
  long long n = 0;
  if (!(f >> n) || n <= 0 || n > 65535)
    throw std::runtime_error("bad order in: " + path);
  LoopTable t;
  t.n = static_cast<std::uint32_t>(n);
  t.cells.resize(static_cast<std::size_t>(n) * n);
  for (auto &cell : t.cells) {
    long long v = 0;
    if (!(f >> v) || v < 0 || v >= n)
      throw std::runtime_error("bad cell in: " + path);
    cell = static_cast<std::uint16_t>(v);
  }
  return t;
}

} // namespace bolforge
