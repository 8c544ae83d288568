#pragma once

#include <string>

#include "edgeflow/image.hpp"

namespace edgeflow::io {

/// Reads a binary (P5) 8-bit PGM. Throws IoError naming the file on any
/// defect (bad magic, maxval != 8-bit range, truncated payload).
ImageFrame read_pgm(const std::string& path);

void write_pgm(const std::string& path, const ImageFrame& frame);

}  // namespace edgeflow::io
