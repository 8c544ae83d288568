#include "edgeflow/sim/scene.hpp"

#include <cmath>

namespace edgeflow::sim {

namespace {

uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDull;
  x ^= x >> 33;
  x *= 0xC4CEB9FE1A85EC53ull;
  x ^= x >> 33;
  return x;
}

// lattice value in [-1, 1]
double lattice(int64_t ix, int64_t iy, uint64_t seed) {
  uint64_t h = mix64(static_cast<uint64_t>(ix) * 0x9E3779B97F4A7C15ull ^
                     static_cast<uint64_t>(iy) * 0xC2B2AE3D27D4EB4Full ^ seed);
  return static_cast<double>(h >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// smooth bilinear value noise, C1 continuous
double value_noise(double x, double y, uint64_t seed) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int64_t ix = static_cast<int64_t>(fx);
  const int64_t iy = static_cast<int64_t>(fy);
  const double tx = smoothstep(x - fx);
  const double ty = smoothstep(y - fy);
  const double v00 = lattice(ix, iy, seed);
  const double v10 = lattice(ix + 1, iy, seed);
  const double v01 = lattice(ix, iy + 1, seed);
  const double v11 = lattice(ix + 1, iy + 1, seed);
  const double a = v00 + (v10 - v00) * tx;
  const double b = v01 + (v11 - v01) * tx;
  return a + (b - a) * ty;
}

constexpr int kOctaves = 6;
constexpr double kBaseFrequency = 3.125;  // 1/m, coarsest features ~0.32 m
constexpr double kAmplitude = 95.0;       // intensity swing at contrast 1
// incommensurate spacing: octaves must not re-align in unison at any lag,
// which would carve false SAD minima away from the true displacement
constexpr double kFrequencyRatio[kOctaves] = {1.0, 2.13, 4.07, 8.11, 15.9, 31.7};
constexpr double kOctaveAmplitude[kOctaves] = {1.0, 0.85, 0.65, 0.40, 0.20, 0.12};

}  // namespace

double Scene::sample(double x, double y) const {
  double value = 0.0;
  double amp_total = 0.0;
  for (int o = 0; o < kOctaves; ++o) {
    const double freq = kBaseFrequency * kFrequencyRatio[o];
    value += kOctaveAmplitude[o] * value_noise(x * freq, y * freq, mix64(seed + 0x51ED2700u + o));
    amp_total += kOctaveAmplitude[o];
  }
  return 128.0 + contrast * kAmplitude * (value / amp_total);
}

}  // namespace edgeflow::sim
