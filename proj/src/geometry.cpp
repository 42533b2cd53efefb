#include "agsgr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "agsgr/errors.hpp"

namespace agsgr {

PlanarPoint project(double lat, double lon, const GeoOrigin& origin) {
  constexpr double rad = std::numbers::pi / 180.0;
  const double x = kEarthRadiusMeters * (lon - origin.lon0) * rad * std::cos(origin.lat0 * rad);
  const double y = kEarthRadiusMeters * (lat - origin.lat0) * rad;
  return {x, y};
}

double dist(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double adist(const PlanarPoint& l, std::span<const PlanarPoint> group_locs) {
  if (group_locs.empty()) throw EmptyGroup("aggregate distance over an empty group");
  double best = 0;
  for (const PlanarPoint& p : group_locs) best = std::max(best, dist(l, p));
  return best;
}

bool Circle::contains(const PlanarPoint& p, double eps) const {
  return dist(center, p) <= radius + eps;
}

namespace {

Circle circle_from_2(const PlanarPoint& a, const PlanarPoint& b) {
  PlanarPoint c{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
  return {c, dist(a, b) / 2.0};
}

// Circumcircle; falls back to the farthest-pair diameter circle when the
// points are (near-)collinear, in which case that circle covers all three.
Circle circle_from_3(const PlanarPoint& a, const PlanarPoint& b, const PlanarPoint& c) {
  const double d =
      2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  const double scale = std::max({std::abs(a.x), std::abs(a.y), std::abs(b.x), std::abs(b.y),
                                 std::abs(c.x), std::abs(c.y), 1.0});
  if (std::abs(d) < 1e-12 * scale * scale) {
    Circle ab = circle_from_2(a, b), ac = circle_from_2(a, c), bc = circle_from_2(b, c);
    Circle widest = ab;
    if (ac.radius > widest.radius) widest = ac;
    if (bc.radius > widest.radius) widest = bc;
    return widest;
  }
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  PlanarPoint center{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
                     (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
  const double r = std::max({dist(center, a), dist(center, b), dist(center, c)});
  return {center, r};
}

}  // namespace

Circle minimum_enclosing_circle(std::span<const PlanarPoint> points) {
  if (points.empty()) throw EmptyGroup("minimum enclosing circle of zero points");
  std::vector<PlanarPoint> p(points.begin(), points.end());
  std::mt19937_64 rng(0x353c0fe36a58d1ecULL);  // fixed: the optimum is unique anyway
  std::shuffle(p.begin(), p.end(), rng);

  Circle c{p[0], 0};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (c.contains(p[i])) continue;
    c = {p[i], 0};
    for (std::size_t j = 0; j < i; ++j) {
      if (c.contains(p[j])) continue;
      c = circle_from_2(p[i], p[j]);
      for (std::size_t l = 0; l < j; ++l) {
        if (c.contains(p[l])) continue;
        c = circle_from_3(p[i], p[j], p[l]);
      }
    }
  }
  return c;
}

void Mbr::expand(const PlanarPoint& p) {
  xmin = std::min(xmin, p.x);
  ymin = std::min(ymin, p.y);
  xmax = std::max(xmax, p.x);
  ymax = std::max(ymax, p.y);
}

void Mbr::expand(const Mbr& other) {
  xmin = std::min(xmin, other.xmin);
  ymin = std::min(ymin, other.ymin);
  xmax = std::max(xmax, other.xmax);
  ymax = std::max(ymax, other.ymax);
}

bool Mbr::contains(const PlanarPoint& p) const {
  return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
}

bool Mbr::contains(const Mbr& o) const {
  return o.xmin >= xmin && o.xmax <= xmax && o.ymin >= ymin && o.ymax <= ymax;
}

double mindist(const Mbr& box, const PlanarPoint& p) {
  const double dx = std::max({box.xmin - p.x, 0.0, p.x - box.xmax});
  const double dy = std::max({box.ymin - p.y, 0.0, p.y - box.ymax});
  return std::hypot(dx, dy);
}

}  // namespace agsgr
