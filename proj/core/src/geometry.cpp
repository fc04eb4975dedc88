#include "plmpc/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace plmpc {

namespace {
bool finite(const Vec3& v) { return v.allFinite(); }
}  // namespace

Quat make_unit_quaternion(double w, double x, double y, double z) {
  if (!std::isfinite(w) || !std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw std::invalid_argument("quaternion components must be finite");
  }
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (n < 1e-12) throw std::invalid_argument("quaternion norm too small");
  return Quat(w / n, x / n, y / n, z / n);
}

Vec3 rotate_vector(const Quat& q, const Vec3& v) {
  if (!finite(v) || !std::isfinite(q.w()) || !q.vec().allFinite()) {
    throw std::invalid_argument("rotate_vector: non-finite input");
  }
  return q * v;
}

Pose Pose::compose(const Pose& other) const {
  Pose out;
  out.rotation = rotation * other.rotation;
  out.rotation.normalize();
  out.translation = translation + rotation * other.translation;
  return out;
}

Pose Pose::inverse() const {
  Pose out;
  out.rotation = rotation.conjugate();
  out.translation = -(out.rotation * translation);
  return out;
}

Vec3 Pose::apply(const Vec3& p) const { return rotation * p + translation; }

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw std::invalid_argument("focal lengths must be positive");
  if (width <= 0 || height <= 0) throw std::invalid_argument("image size must be positive");
  if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height) {
    throw std::invalid_argument("principal point outside image");
  }
}

double CameraIntrinsics::diagonal() const {
  return std::sqrt(static_cast<double>(width) * width + static_cast<double>(height) * height);
}

void PowerLine3D::validate() const {
  if (!finite(p1) || !finite(p2)) throw std::invalid_argument("line endpoints must be finite");
  if ((p2 - p1).norm() <= 1e-6) throw std::invalid_argument("line endpoints coincide");
}

Vec3 PowerLine3D::direction() const { return (p2 - p1).normalized(); }

double PowerLine3D::distance_to(const Vec3& point) const {
  const Vec3 dir = direction();
  const Vec3 rel = point - p1;
  return (rel - dir * rel.dot(dir)).norm();
}

Vec3 world_to_camera(const Vec3& p_world, const Pose& body, const Pose& extrinsics) {
  if (!finite(p_world)) throw std::invalid_argument("world_to_camera: non-finite point");
  const Quat q_WC = body.rotation * extrinsics.rotation;
  const Vec3 p_WC = body.rotation * extrinsics.translation + body.translation;
  return q_WC.conjugate() * (p_world - p_WC);
}

Vec3 camera_to_world(const Vec3& p_camera, const Pose& body, const Pose& extrinsics) {
  const Quat q_WC = body.rotation * extrinsics.rotation;
  const Vec3 p_WC = body.rotation * extrinsics.translation + body.translation;
  return q_WC * p_camera + p_WC;
}

Pose camera_pose(const Pose& body, const Pose& extrinsics) { return body.compose(extrinsics); }

std::optional<Vec2> project(const Vec3& p_camera, const CameraIntrinsics& K) {
  if (p_camera.z() <= kDepthEpsilon) return std::nullopt;
  return Vec2(K.fx * p_camera.x() / p_camera.z() + K.cx,
              K.fy * p_camera.y() / p_camera.z() + K.cy);
}

Vec3 unproject(const Vec2& pixel, double depth, const CameraIntrinsics& K) {
  return Vec3((pixel.x() - K.cx) / K.fx * depth, (pixel.y() - K.cy) / K.fy * depth, depth);
}

PolarImageLine cartesian_to_polar(double u1, double v1, double u2, double v2) {
  const double du = u2 - u1;
  const double dv = v2 - v1;
  if (du * du + dv * dv < 1e-12) throw std::invalid_argument("degenerate image line");
  double theta = std::atan2(-du, dv);
  if (theta > M_PI / 2) theta -= M_PI;
  else if (theta <= -M_PI / 2) theta += M_PI;
  return {theta, u1 * std::cos(theta) + v1 * std::sin(theta)};
}

std::optional<PerceptionVector> perception_vector(const Pose& body, const Pose& extrinsics,
                                                  const CameraIntrinsics& K,
                                                  const PowerLine3D& line,
                                                  const PerceptionConfig& cfg) {
  line.validate();
  const V3T<double> p(body.translation.x(), body.translation.y(), body.translation.z());
  const Q4T<double> q(body.rotation.w(), body.rotation.x(), body.rotation.y(), body.rotation.z());
  const auto eval = perception_residual<double>(p, q, extrinsics, K, line, cfg);
  if (!eval.visible) return std::nullopt;
  return PerceptionVector{eval.zbar.x, eval.zbar.y, eval.zbar.z + cfg.d_s};
}

double similarity_score(const ScoredLine& a, const ScoredLine& b, double width, double height) {
  double dtheta = std::fabs(a.line.theta - b.line.theta);
  dtheta = std::fmod(dtheta, M_PI);
  if (dtheta > M_PI / 2) dtheta = M_PI - dtheta;
  const double s_theta = 1.0 - 2.0 * dtheta / M_PI;
  const double h = (a.center - b.center).norm();
  const double diag = std::sqrt(width * width + height * height);
  const double s_d = std::max(0.0, 1.0 - h / diag);
  const double s = s_theta * s_d;
  return s * s;
}

}  // namespace plmpc
