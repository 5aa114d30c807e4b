#include "wsn/geometry.hpp"

#include <cmath>

namespace wsn {

namespace {
double signed_area(const std::vector<Vec2>& v) {
  double acc = 0;
  for (size_t k = 0; k < v.size(); ++k) {
    const Vec2& a = v[k];
    const Vec2& b = v[(k + 1) % v.size()];
    acc += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * acc;
}
}  // namespace

ConvexRegion::ConvexRegion(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() >= 3 && signed_area(verts_) < 0)
    std::reverse(verts_.begin(), verts_.end());
  box_.setEmpty();
  for (const Vec2& v : verts_) box_.extend(v);
}

ConvexRegion ConvexRegion::rectangle(double x0, double y0, double x1, double y1) {
  return ConvexRegion({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

bool ConvexRegion::contains(const Vec2& w, double tol) const {
  const size_t n = verts_.size();
  if (n < 3) return false;
  const double scale = std::max(1.0, box_.diagonal().norm());
  for (size_t k = 0; k < n; ++k) {
    const Vec2 e = verts_[(k + 1) % n] - verts_[k];
    const Vec2 d = w - verts_[k];
    if (e.x() * d.y() - e.y() * d.x() < -tol * scale * scale) return false;
  }
  return true;
}

double ConvexRegion::area() const {
  if (verts_.size() < 3) return 0;
  return std::abs(signed_area(verts_));
}

bool ConvexRegion::is_convex(double tol) const {
  const size_t n = verts_.size();
  if (n < 3) return false;
  const double scale = box_.diagonal().squaredNorm();
  for (size_t k = 0; k < n; ++k) {
    const Vec2 e0 = verts_[(k + 1) % n] - verts_[k];
    const Vec2 e1 = verts_[(k + 2) % n] - verts_[(k + 1) % n];
    if (e0.x() * e1.y() - e0.y() * e1.x() < -tol * scale) return false;
  }
  return true;
}

}  // namespace wsn
