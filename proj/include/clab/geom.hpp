#pragma once

#include <cmath>

namespace clab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

/** Symmetric 2x2 matrix, stored as (xx, xy, yy). */
struct Sym2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    Vec2 apply(Vec2 v) const { return {xx * v.x + xy * v.y, xy * v.x + yy * v.y}; }

    /** Quadratic form <Av, v>. */
    double quad(Vec2 v) const { return v.x * (xx * v.x + xy * v.y) + v.y * (xy * v.x + yy * v.y); }

    double trace() const { return xx + yy; }
    double det() const { return xx * yy - xy * xy; }
    double frobenius_sq() const { return xx * xx + 2.0 * xy * xy + yy * yy; }

    double eig_min() const {
        const double m = 0.5 * trace();
        const double d = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
        return m - d;
    }
    double eig_max() const {
        const double m = 0.5 * trace();
        const double d = std::sqrt(0.25 * (xx - yy) * (xx - yy) + xy * xy);
        return m + d;
    }

    static Sym2 identity() { return {1.0, 0.0, 1.0}; }
    static Sym2 diag(double a, double b) { return {a, 0.0, b}; }
};

} // namespace clab
