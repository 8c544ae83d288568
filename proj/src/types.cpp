#include "edgeflow/types.hpp"

namespace edgeflow {

std::string to_string(const QualityFlags& q) {
  if (q.ok()) return "ok";
  std::string s;
  auto add = [&s](const char* name) {
    if (!s.empty()) s += '+';
    s += name;
  };
  if (q.warmup) add("warmup");
  if (q.textureless_x) add("textureless_x");
  if (q.textureless_y) add("textureless_y");
  if (q.no_height) add("no_height");
  return s;
}

}  // namespace edgeflow
