#pragma once

#include <span>
#include <vector>

#include "agsgr/types.hpp"

namespace agsgr {

struct PlanarPoint {
  double x = 0;  // meters east of the origin
  double y = 0;  // meters north of the origin
};

struct GeoOrigin {
  double lat0 = 0;  // degrees
  double lon0 = 0;
};

inline constexpr double kEarthRadiusMeters = 6'371'000.0;

// Equirectangular projection about the origin; Euclidean distances on the
// result approximate ground distances at city scale.
PlanarPoint project(double lat, double lon, const GeoOrigin& origin);

double dist(const PlanarPoint& a, const PlanarPoint& b);

// Aggregate distance: max over members of |l, member|.  Throws EmptyGroup
// when there are no member locations.
double adist(const PlanarPoint& l, std::span<const PlanarPoint> group_locs);

struct Circle {
  PlanarPoint center;
  double radius = 0;
  bool contains(const PlanarPoint& p, double eps = 1e-7) const;
};

// Smallest circle enclosing all points (randomized incremental, internally
// seeded so results are reproducible).  Requires >= 1 point.
Circle minimum_enclosing_circle(std::span<const PlanarPoint> points);

struct Mbr {
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;

  static Mbr of(const PlanarPoint& p) { return {p.x, p.y, p.x, p.y}; }
  void expand(const PlanarPoint& p);
  void expand(const Mbr& other);
  bool contains(const PlanarPoint& p) const;
  bool contains(const Mbr& other) const;
};

// 0 when p lies inside the box, else distance to the nearest boundary point.
double mindist(const Mbr& box, const PlanarPoint& p);

}  // namespace agsgr
