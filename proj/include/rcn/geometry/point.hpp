#pragma once

#include <gmpxx.h>

#include <string>
#include <type_traits>

namespace rcn {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// 2^exponent for any integer exponent.
inline Rational pow2(long exponent)
{
    Integer p = 1;
    if (exponent >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
        return Rational(p);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent));
    Rational q(1, p);
    q.canonicalize();
    return q;
}

/// Largest power of two p with p*p strictly below bound (bound > 0).
inline Rational largest_pow2_with_square_below(const Rational& bound)
{
    // Start from an estimate via bit sizes, then adjust exactly.
    long num_bits = static_cast<long>(mpz_sizeinbase(bound.get_num_mpz_t(), 2));
    long den_bits = static_cast<long>(mpz_sizeinbase(bound.get_den_mpz_t(), 2));
    long e = (num_bits - den_bits) / 2 + 1;
    Rational p = pow2(e);
    while (p * p >= bound) {
        --e;
        p = pow2(e);
    }
    while (true) {
        Rational next = pow2(e + 1);
        if (next * next < bound) {
            ++e;
            p = next;
        } else {
            break;
        }
    }
    return p;
}

template <class T>
struct BasicPoint {
    T x;
    T y;

    friend bool operator==(const BasicPoint& a, const BasicPoint& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const BasicPoint& a, const BasicPoint& b)
    {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
};

using Point = BasicPoint<Rational>;
using IntPoint = BasicPoint<Integer>;

template <class T>
BasicPoint<T> operator+(const BasicPoint<T>& a, const BasicPoint<T>& b)
{
    return {T(a.x + b.x), T(a.y + b.y)};
}

template <class T>
BasicPoint<T> operator-(const BasicPoint<T>& a, const BasicPoint<T>& b)
{
    return {T(a.x - b.x), T(a.y - b.y)};
}

template <class T>
BasicPoint<T> operator*(const T& s, const BasicPoint<T>& a)
{
    return {T(s * a.x), T(s * a.y)};
}

template <class T>
T dot(const BasicPoint<T>& a, const BasicPoint<T>& b)
{
    return T(a.x * b.x + a.y * b.y);
}

template <class T>
T cross(const BasicPoint<T>& a, const BasicPoint<T>& b)
{
    return T(a.x * b.y - a.y * b.x);
}

template <class T>
T squared_distance(const BasicPoint<T>& a, const BasicPoint<T>& b)
{
    T dx = a.x - b.x;
    T dy = a.y - b.y;
    return T(dx * dx + dy * dy);
}

inline Point make_point(long x, long y) { return {Rational(x), Rational(y)}; }

inline Point midpoint(const Point& a, const Point& b)
{
    return {Rational((a.x + b.x) / 2), Rational((a.y + b.y) / 2)};
}

/// Point a + t (b - a).
inline Point lerp(const Point& a, const Point& b, const Rational& t)
{
    return {Rational(a.x + t * (b.x - a.x)), Rational(a.y + t * (b.y - a.y))};
}

/// Squared distance from p to the closed segment ab.
inline Rational squared_distance_to_segment(const Point& p, const Point& a, const Point& b)
{
    Point d = b - a;
    Rational len2 = dot(d, d);
    if (len2 == 0) return squared_distance(p, a);
    Rational t = dot(p - a, d) / len2;
    if (t <= 0) return squared_distance(p, a);
    if (t >= 1) return squared_distance(p, b);
    return squared_distance(p, lerp(a, b, t));
}

/// Squared distance from c to the ray {p + s d : s >= 0}.
inline Rational squared_distance_to_ray(const Point& c, const Point& p, const Point& d)
{
    Rational len2 = dot(d, d);
    Point a = c - p;
    Rational ad = dot(a, d);
    if (len2 == 0 || ad <= 0) return dot(a, a);
    return Rational(dot(a, a) - ad * ad / len2);
}

/// Squared distance between closed segments ab and cd, assuming they do not intersect.
inline Rational squared_distance_between_disjoint_segments(const Point& a, const Point& b, const Point& c,
                                                           const Point& d)
{
    Rational best = squared_distance_to_segment(a, c, d);
    for (const Rational& cand : {squared_distance_to_segment(b, c, d), squared_distance_to_segment(c, a, b),
                                 squared_distance_to_segment(d, a, b)})
        if (cand < best) best = cand;
    return best;
}

inline std::string to_string(const Point& p) { return "(" + p.x.get_str() + ", " + p.y.get_str() + ")"; }

struct Disk {
    Point center;
    Rational radius;

    bool contains(const Point& p) const { return squared_distance(p, center) <= radius * radius; }
    bool contains_strictly(const Point& p) const { return squared_distance(p, center) < radius * radius; }
};

} // namespace rcn
