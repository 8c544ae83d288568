#include "edgeflow/io/pgm.hpp"

#include <fstream>

#include "edgeflow/error.hpp"

namespace edgeflow::io {

namespace {

// next whitespace-delimited token, skipping '#' comments
std::string next_token(std::istream& in, const std::string& path) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok += static_cast<char>(c);
  }
  if (tok.empty()) throw IoError(path + ": truncated PGM header");
  return tok;
}

int parse_int(const std::string& tok, const std::string& path, const char* what) {
  try {
    size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IoError(path + ": bad PGM " + what + " '" + tok + "'");
  }
}

}  // namespace

ImageFrame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path + ": cannot open");

  if (next_token(in, path) != "P5") throw IoError(path + ": not a binary PGM (P5)");
  const int width = parse_int(next_token(in, path), path, "width");
  const int height = parse_int(next_token(in, path), path, "height");
  const int maxval = parse_int(next_token(in, path), path, "maxval");
  if (width < 1 || height < 1) throw IoError(path + ": non-positive dimensions");
  if (maxval < 1 || maxval > 255) throw IoError(path + ": only 8-bit PGM is supported");

  std::vector<uint8_t> pixels(static_cast<size_t>(width) * height);
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(pixels.size()))
    throw IoError(path + ": truncated pixel data");

  try {
    return ImageFrame(width, height, std::move(pixels), 0.0);
  } catch (const DimensionError& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_pgm(const std::string& path, const ImageFrame& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.pixels.data()),
            static_cast<std::streamsize>(frame.pixels.size()));
  if (!out) throw IoError(path + ": write failed");
}

}  // namespace edgeflow::io
