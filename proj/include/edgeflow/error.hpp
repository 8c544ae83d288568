#pragma once

#include <stdexcept>
#include <string>

namespace edgeflow {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Image or histogram dimensions violate a precondition (e.g. frame smaller
/// than the gradient kernel, pixel buffer size mismatch).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Histogram matching could not be performed: length/axis mismatch or no
/// valid match positions for the given parameters.
class MatchError : public Error {
 public:
  using Error::Error;
};

/// Both histograms carry no gradient energy; a displacement is undefined.
class TexturelessError : public Error {
 public:
  using Error::Error;
};

/// Displacement profile too degenerate for a line fit.
class FitError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Closed-loop vehicle left the scene bounds; the run is aborted.
class SimDivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace edgeflow
