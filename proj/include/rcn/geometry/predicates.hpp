#pragma once

#include <cmath>
#include <stdexcept>

#include "rcn/geometry/point.hpp"

namespace rcn {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sign of (q - p) x (r - p): +1 counterclockwise, -1 clockwise, 0 collinear.
template <class T>
int orientation(const BasicPoint<T>& p, const BasicPoint<T>& q, const BasicPoint<T>& r)
{
    T d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return sgn(d);
}

/// Exact orientation of rational points behind a floating-point filter: the
/// double evaluation decides whenever its value exceeds a forward error bound,
/// and exact arithmetic runs otherwise.
inline int orientation(const Point& p, const Point& q, const Point& r)
{
    const double c[6] = {p.x.get_d(), p.y.get_d(), q.x.get_d(), q.y.get_d(), r.x.get_d(), r.y.get_d()};
    bool usable = true;
    for (double v : c) {
        double a = std::fabs(v);
        if (!std::isfinite(v) || (a != 0 && (a < 1e-140 || a > 1e140))) usable = false;
    }
    if (usable) {
        double d1 = c[2] - c[0], d2 = c[5] - c[1], d3 = c[3] - c[1], d4 = c[4] - c[0];
        double det = d1 * d2 - d3 * d4;
        double ab = (std::fabs(c[2]) + std::fabs(c[0])) * (std::fabs(c[5]) + std::fabs(c[1]));
        double cd = (std::fabs(c[3]) + std::fabs(c[1])) * (std::fabs(c[4]) + std::fabs(c[0]));
        double err = 8.5 * std::ldexp(ab + cd, -52);
        if (det > err) return 1;
        if (det < -err) return -1;
    }
    Rational d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return sgn(d);
}

/// r lies on the closed segment pq, given that p, q, r are collinear.
template <class T>
bool on_collinear_segment(const BasicPoint<T>& p, const BasicPoint<T>& q, const BasicPoint<T>& r)
{
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
}

/// Closed segments ab and cd share at least one point.
template <class T>
bool segments_intersect(const BasicPoint<T>& a, const BasicPoint<T>& b, const BasicPoint<T>& c,
                        const BasicPoint<T>& d)
{
    int o1 = orientation(a, b, c);
    int o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a);
    int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_collinear_segment(a, b, c)) return true;
    if (o2 == 0 && on_collinear_segment(a, b, d)) return true;
    if (o3 == 0 && on_collinear_segment(c, d, a)) return true;
    if (o4 == 0 && on_collinear_segment(c, d, b)) return true;
    return false;
}

struct Segment {
    Point a;
    Point b;
};

/// True iff the segments share a point and no endpoint.
inline bool segments_cross(const Segment& s, const Segment& t)
{
    if (s.a == s.b || t.a == t.b) throw GeometryError("segments_cross: zero-length segment");
    if (s.a == t.a || s.a == t.b || s.b == t.a || s.b == t.b) return false;
    return segments_intersect(s.a, s.b, t.a, t.b);
}

/// Intersection point of the lines through ab and cd (must not be parallel),
/// in homogeneous form (x, y, w) with w > 0.
template <class T>
struct HomogeneousPoint {
    T x;
    T y;
    T w;
};

template <class T>
HomogeneousPoint<T> line_intersection(const BasicPoint<T>& a, const BasicPoint<T>& b, const BasicPoint<T>& c,
                                      const BasicPoint<T>& d)
{
    BasicPoint<T> r = b - a;
    BasicPoint<T> s = d - c;
    T den = cross(r, s);
    T num = cross(c - a, s);
    if (den < 0) {
        den = -den;
        num = -num;
    }
    return {T(a.x * den + r.x * num), T(a.y * den + r.y * num), den};
}

inline Point to_point(const HomogeneousPoint<Rational>& h) { return {Rational(h.x / h.w), Rational(h.y / h.w)}; }

/// Exact intersection point of two crossing segments.
inline Point crossing_point(const Segment& s, const Segment& t)
{
    return to_point(line_intersection(s.a, s.b, t.a, t.b));
}

} // namespace rcn
