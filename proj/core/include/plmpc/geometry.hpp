#pragma once

// Pose algebra, pinhole projection, the polar image-line parameterization
// and the line-visibility similarity score.
//
// Image conventions: u rightward, v downward. Polar line math runs in
// principal-point-centered coordinates (r = 0 is a line through the
// principal point); detectors work in raster coordinates with the origin at
// the top-left pixel, and conversions between the two are explicit at the
// call sites.

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <optional>

#include "plmpc/algebra.hpp"

namespace plmpc {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Quat = Eigen::Quaterniond;

/// Builds a unit quaternion from components, normalizing once.
/// Throws std::invalid_argument on non-finite or near-zero input.
Quat make_unit_quaternion(double w, double x, double y, double z);

/// R(q) * v. Requires unit-norm q and finite v.
Vec3 rotate_vector(const Quat& q, const Vec3& v);

struct Pose {
  Vec3 translation = Vec3::Zero();
  Quat rotation = Quat::Identity();

  static Pose identity() { return {}; }

  /// this ∘ other (apply other first in the local frame).
  Pose compose(const Pose& other) const;
  Pose inverse() const;
  Vec3 apply(const Vec3& p) const;
};

struct CameraIntrinsics {
  double fx = 0.0, fy = 0.0;
  double cx = 0.0, cy = 0.0;
  int width = 0, height = 0;

  /// Throws std::invalid_argument if focal lengths are non-positive or the
  /// principal point lies outside the image.
  void validate() const;
  double diagonal() const;
};

struct PowerLine3D {
  Vec3 p1 = Vec3::Zero();
  Vec3 p2 = Vec3::Zero();

  /// Throws std::invalid_argument when endpoints coincide (< 1e-6 m apart).
  void validate() const;
  Vec3 direction() const;
  /// Perpendicular distance from a point to the infinite line.
  double distance_to(const Vec3& point) const;
};

/// Image line in normal form: u·cosθ + v·sinθ = r, θ ∈ (−π/2, π/2].
struct PolarImageLine {
  double theta = 0.0;
  double r = 0.0;
};

/// Measurement z = (θ, r, d); the setpoint is z_s = (0, 0, d_s) and the
/// residual z̄ = z − z_s.
struct PerceptionVector {
  double theta = 0.0;  // rad
  double r = 0.0;      // px
  double d = 0.0;      // m, ≥ 0
  Vec3 as_vec() const { return {theta, r, d}; }
  Vec3 residual(double d_s) const { return {theta, r, d - d_s}; }
};

/// p_CL = (q_WB q_BC)^{-1} ⊙ (p_WL − (q_WB ⊙ p_BC + p_WB))
Vec3 world_to_camera(const Vec3& p_world, const Pose& body, const Pose& extrinsics);
Vec3 camera_to_world(const Vec3& p_camera, const Pose& body, const Pose& extrinsics);
/// World pose of the camera frame: body ∘ extrinsics.
Pose camera_pose(const Pose& body, const Pose& extrinsics);

inline constexpr double kDepthEpsilon = 1e-6;  // m

/// Pinhole projection; nullopt when the point is at or behind the camera
/// (Z ≤ kDepthEpsilon). Returns raster coordinates (principal point offset
/// included).
std::optional<Vec2> project(const Vec3& p_camera, const CameraIntrinsics& K);

/// Unproject a raster pixel at camera-frame depth Z.
Vec3 unproject(const Vec2& pixel, double depth, const CameraIntrinsics& K);

/// Normal-form line through two image points (principal-point-centered
/// coordinates). Throws std::invalid_argument for coincident endpoints.
PolarImageLine cartesian_to_polar(double u1, double v1, double u2, double v2);

struct PerceptionConfig {
  double d_s = 1.5;                  // desired line standoff [m]
  bool distance_from_camera = false; // measure d from the camera origin
};

/// Measures z = (θ, r, d) for the line as seen from the body pose; the
/// residual z̄ follows from PerceptionVector::residual(d_s). nullopt when
/// either endpoint is at or behind the camera (caller treats the line as
/// lost for that stage).
std::optional<PerceptionVector> perception_vector(const Pose& body,
                                                  const Pose& extrinsics,
                                                  const CameraIntrinsics& K,
                                                  const PowerLine3D& line,
                                                  const PerceptionConfig& cfg);

/// Detected/reference line with its image-space center point, the pair the
/// similarity score compares.
struct ScoredLine {
  PolarImageLine line;
  Vec2 center = Vec2::Zero();
};

/// S = (S_θ · S_d)² with S_θ = 1 − 2θ/π (θ the angular distance folded into
/// [0, π/2]) and S_d = 1 − h/√(w²+l²). Symmetric, in [0, 1].
double similarity_score(const ScoredLine& a, const ScoredLine& b, double width, double height);

// ---------------------------------------------------------------------------
// Scalar-generic perception chain, shared by the double-precision API above
// and the solver's dual-number Jacobians. Extrinsics, intrinsics and the line
// stay at double precision; only the body pose is generic.

template <class S>
struct PerceptionEval {
  bool visible = false;
  V3T<S> zbar{};  // (θ, r, d − d_s)
};

template <class S>
PerceptionEval<S> perception_residual(const V3T<S>& p_WB, const Q4T<S>& q_WB,
                                      const Pose& extrinsics, const CameraIntrinsics& K,
                                      const PowerLine3D& line, const PerceptionConfig& cfg) {
  PerceptionEval<S> out;
  const Q4T<S> q_BC(S(extrinsics.rotation.w()), S(extrinsics.rotation.x()),
                    S(extrinsics.rotation.y()), S(extrinsics.rotation.z()));
  const V3T<S> p_BC(S(extrinsics.translation.x()), S(extrinsics.translation.y()),
                    S(extrinsics.translation.z()));

  const Q4T<S> q_WC = q_WB * q_BC;
  const V3T<S> p_WC = q_WB.rotate(p_BC) + p_WB;
  const Q4T<S> q_CW = q_WC.conjugate();

  S u[2], v[2];
  const Vec3 endpoints[2] = {line.p1, line.p2};
  for (int j = 0; j < 2; ++j) {
    const V3T<S> pw(S(endpoints[j].x()), S(endpoints[j].y()), S(endpoints[j].z()));
    const V3T<S> pc = q_CW.rotate(pw - p_WC);
    double depth;
    if constexpr (std::is_same_v<S, double>) {
      depth = pc.z;
    } else {
      depth = pc.z.v;
    }
    if (depth <= kDepthEpsilon) return out;
    // Principal-point-centered image coordinates.
    u[j] = S(K.fx) * pc.x / pc.z;
    v[j] = S(K.fy) * pc.y / pc.z;
  }

  const S du = u[1] - u[0];
  const S dv = v[1] - v[0];
  S theta = atan2(-du, dv);
  double tv;
  if constexpr (std::is_same_v<S, double>) {
    tv = theta;
  } else {
    tv = theta.v;
  }
  constexpr double half_pi = 1.5707963267948966;
  if (tv > half_pi) theta -= S(M_PI);
  else if (tv <= -half_pi) theta += S(M_PI);
  const S r = u[0] * cos(theta) + v[0] * sin(theta);

  // Perpendicular distance from the configured origin to the infinite line.
  const Vec3 dir_d = line.direction();
  const V3T<S> dir(S(dir_d.x()), S(dir_d.y()), S(dir_d.z()));
  const V3T<S> origin = cfg.distance_from_camera ? p_WC : p_WB;
  const V3T<S> rel = origin - V3T<S>(S(line.p1.x()), S(line.p1.y()), S(line.p1.z()));
  const V3T<S> perp = rel - dir * rel.dot(dir);
  const S d = perp.norm();

  out.visible = true;
  out.zbar = {theta, r, d - S(cfg.d_s)};
  return out;
}

}  // namespace plmpc
