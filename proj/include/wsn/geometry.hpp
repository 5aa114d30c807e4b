#pragma once

#include <Eigen/Dense>
#include <vector>

namespace wsn {

using Vec2 = Eigen::Vector2d;

// Convex target region, stored as a CCW vertex loop.  Membership is the
// intersection of the edge half-planes.
class ConvexRegion {
 public:
  ConvexRegion() = default;
  explicit ConvexRegion(std::vector<Vec2> vertices);

  static ConvexRegion rectangle(double x0, double y0, double x1, double y1);

  bool contains(const Vec2& w, double tol = 1e-9) const;
  const std::vector<Vec2>& vertices() const { return verts_; }
  const Eigen::AlignedBox2d& bounding_box() const { return box_; }
  double diameter() const { return box_.diagonal().norm(); }
  double area() const;
  bool is_convex(double tol = 1e-12) const;
  bool empty() const { return verts_.size() < 3; }

 private:
  std::vector<Vec2> verts_;
  Eigen::AlignedBox2d box_;
};

}  // namespace wsn
