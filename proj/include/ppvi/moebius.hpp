#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppvi {

using cx = std::complex<double>;

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

// Chordal (spherical) distance between points of the Riemann sphere,
// with infinity allowed. Range [0, 2].
double chordal(cx z, cx w);
double chordal_inf(cx z);  // distance from z to infinity

// Unimodular 2x2 complex matrix acting as z -> (az+b)/(cz+d), identified
// up to global sign. normalize() rescales to det 1 and picks the sign so
// the first entry of largest modulus has argument in (-pi/2, pi/2].
struct Moebius {
    cx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Moebius() = default;
    Moebius(cx a_, cx b_, cx c_, cx d_) : a(a_), b(b_), c(c_), d(d_) {}

    cx det() const { return a * d - b * c; }
    cx tr() const { return a + d; }
    cx apply(cx z) const;
    Moebius inverse() const { return Moebius(d, -b, -c, a); }
    Moebius& normalize_det();  // rescale to det 1, keep sign
    Moebius& normalize();      // det 1 plus canonical sign

    static Moebius identity() { return Moebius(); }
};

Moebius operator*(const Moebius& m1, const Moebius& m2);
Moebius conj(const Moebius& m);

// Projective comparison: min over sign of max entrywise deviation.
double projective_distance(const Moebius& m1, const Moebius& m2);
bool is_identity(const Moebius& m, double tol = 1e-9);

enum class MapKind { Identity, Elliptic, Parabolic, Loxodromic };

struct MapClassification {
    MapKind kind = MapKind::Identity;
    std::vector<cx> fixed_points;     // on-sphere values; may contain inf
    std::vector<bool> at_infinity;    // parallel to fixed_points
    cx multiplier{1.0, 0.0};          // derivative at fixed_points[0]
    bool ill_conditioned = false;     // near-parabolic fixed point solve
};

// tr^2 within this of 4 counts as parabolic.
inline constexpr double kParabolicTol = 1e-9;

MapClassification classify_and_fix(const Moebius& m);

// Multiplier (derivative) of m at a fixed point p (p may be infinity,
// signalled by at_inf).
cx multiplier_at(const Moebius& m, cx p, bool at_inf);

// Anti-holomorphic involution z -> (a zbar + b)/(c zbar - abar),
// |a|^2 + bc = 1 with b, c real. Its fixed-point set is a circle or line.
struct Reflection {
    cx a{0.0, 1.0};
    double b = 0.0, c = 0.0;

    Reflection() = default;
    Reflection(cx a_, double b_, double c_);

    cx apply(cx z) const;
    double unit_residual() const;  // | |a|^2 + bc - 1 |

    bool is_line(double tol = 1e-12) const { return std::abs(c) < tol; }
    cx circle_center() const;      // requires !is_line()
    double circle_radius() const;  // requires !is_line()
    // Line form: { z : Re(conj(n) z) = offset }, |n| = 1.
    cx line_normal() const;
    double line_offset() const;

    bool is_great_circle(double tol = 1e-9) const { return std::abs(b - c) < tol; }

    static Reflection real_axis() { return Reflection(cx(0, 1), 0, 0); }
    static Reflection line_through_origin(double alpha);  // direction e^{i alpha}
    static Reflection from_circle(cx center, double radius);
    static Reflection from_line(cx unit_normal, double offset);
    // Great circle from a point of S^2 (unit vector), via (Re a, Im a, b=c).
    static Reflection from_great_circle(double nx, double ny, double nz);
};

// Reflections are canonically comparable up to overall sign.
bool same_circle(const Reflection& r1, const Reflection& r2, double tol = 1e-8);

// Composition r1 after r2 as a Moebius map (matrix A conj(B), det 1 after
// normalization). Its trace is real.
Moebius compose_reflections(const Reflection& r1, const Reflection& r2);

// 2 Re(a1 conj(a2)) + b1 c2 + c1 b2; equals tr(compose_reflections(r1,r2))
// up to sign.
double trace_of_reflection_product(const Reflection& r1, const Reflection& r2);

// Intersection of the fixed circles of two reflections: 0, 1 (tangent) or
// 2 points, computed from the classification of the composed map.
std::vector<cx> circle_intersection(const Reflection& r1, const Reflection& r2);

}  // namespace ppvi
