#include "edgeflow/sim/render.hpp"

#include <cmath>

namespace edgeflow::sim {

namespace {

struct Basis {
  double ux, uy, uz;  // image x axis in world
  double vx, vy, vz;  // image y axis in world
  double ax, ay, az;  // optical axis in world, points at the plane
};

Basis camera_basis(const CameraPose& pose) {
  const double ct = std::cos(pose.pitch), st = std::sin(pose.pitch);
  const double cr = std::cos(pose.roll), sr = std::sin(pose.roll);
  // zero attitude: u=(1,0,0), v=(0,1,0), optical axis straight down
  return Basis{
      ct, 0.0, st,
      -st * sr, cr, ct * sr,
      st * cr, sr, -ct * cr,
  };
}

uint8_t quantize(double v) {
  const double r = std::nearbyint(v);
  if (r <= 0.0) return 0;
  if (r >= 255.0) return 255;
  return static_cast<uint8_t>(r);
}

ImageFrame render_at(const Scene& scene, const CameraPose& pose, const CameraIntrinsics& K,
                     double cam_x, double cam_y, double cam_z) {
  const int w = K.image_width;
  const int h = K.image_height;
  const double fx = K.focal_px_horizontal();
  const double fy = K.focal_px_vertical();
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  const Basis b = camera_basis(pose);

  ImageFrame frame(w, h, pose.timestamp);
  size_t idx = 0;
  for (int j = 0; j < h; ++j) {
    const double vn = (j - cy) / fy;
    for (int i = 0; i < w; ++i, ++idx) {
      const double un = (i - cx) / fx;
      const double rx = b.ux * un + b.vx * vn + b.ax;
      const double ry = b.uy * un + b.vy * vn + b.ay;
      const double rz = b.uz * un + b.vz * vn + b.az;
      if (rz >= -1e-9) continue;  // ray misses the plane; pixel stays black
      const double t = cam_z / -rz;
      frame.pixels[idx] = quantize(scene.sample(cam_x + t * rx, cam_y + t * ry));
    }
  }
  return frame;
}

}  // namespace

ImageFrame render(const Scene& scene, const CameraPose& pose, const CameraIntrinsics& intrinsics) {
  pose.validate();
  return render_at(scene, pose, intrinsics, pose.x, pose.y, pose.z);
}

std::pair<ImageFrame, ImageFrame> render_stereo(const Scene& scene, const CameraPose& pose,
                                                const CameraIntrinsics& intrinsics) {
  pose.validate();
  const Basis b = camera_basis(pose);
  const double bl = intrinsics.stereo_baseline;
  ImageFrame left = render_at(scene, pose, intrinsics, pose.x, pose.y, pose.z);
  ImageFrame right = render_at(scene, pose, intrinsics, pose.x + bl * b.ux, pose.y + bl * b.uy,
                               pose.z + bl * b.uz);
  return {std::move(left), std::move(right)};
}

}  // namespace edgeflow::sim
