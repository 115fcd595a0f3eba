#include "ppvi/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace ppvi {

namespace {
constexpr double kInfThreshold = 1e13;

bool finite(cx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace

double chordal_inf(cx z) {
    if (!finite(z) || std::abs(z) > kInfThreshold) return 0.0;
    return 2.0 / std::sqrt(1.0 + std::norm(z));
}

double chordal(cx z, cx w) {
    bool zi = !finite(z) || std::abs(z) > kInfThreshold;
    bool wi = !finite(w) || std::abs(w) > kInfThreshold;
    if (zi && wi) return 0.0;
    if (zi) return chordal_inf(w);
    if (wi) return chordal_inf(z);
    return 2.0 * std::abs(z - w) /
           std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

cx Moebius::apply(cx z) const {
    if (!finite(z) || std::abs(z) > kInfThreshold) {
        if (std::abs(c) == 0.0) return cx(INFINITY, INFINITY);
        return a / c;
    }
    cx den = c * z + d;
    if (std::abs(den) == 0.0) return cx(INFINITY, INFINITY);
    return (a * z + b) / den;
}

Moebius& Moebius::normalize_det() {
    cx s = std::sqrt(det());
    if (std::abs(s) == 0.0) throw DomainError("singular Moebius matrix");
    a /= s; b /= s; c /= s; d /= s;
    return *this;
}

Moebius& Moebius::normalize() {
    normalize_det();
    // Sign convention: entry of largest modulus gets argument in (-pi/2, pi/2].
    cx entries[4] = {a, b, c, d};
    int best = 0;
    for (int i = 1; i < 4; ++i)
        if (std::abs(entries[i]) > std::abs(entries[best])) best = i;
    cx e = entries[best];
    bool flip = e.real() < 0.0 ||
                (std::abs(e.real()) < 1e-300 && e.imag() < 0.0);
    if (flip) { a = -a; b = -b; c = -c; d = -d; }
    return *this;
}

Moebius operator*(const Moebius& m1, const Moebius& m2) {
    return Moebius(m1.a * m2.a + m1.b * m2.c, m1.a * m2.b + m1.b * m2.d,
                   m1.c * m2.a + m1.d * m2.c, m1.c * m2.b + m1.d * m2.d);
}

Moebius conj(const Moebius& m) {
    return Moebius(std::conj(m.a), std::conj(m.b), std::conj(m.c), std::conj(m.d));
}

double projective_distance(const Moebius& m1, const Moebius& m2) {
    auto dev = [&](double s) {
        double d0 = std::abs(m1.a - s * m2.a);
        d0 = std::max(d0, std::abs(m1.b - s * m2.b));
        d0 = std::max(d0, std::abs(m1.c - s * m2.c));
        d0 = std::max(d0, std::abs(m1.d - s * m2.d));
        return d0;
    };
    return std::min(dev(1.0), dev(-1.0));
}

bool is_identity(const Moebius& m, double tol) {
    Moebius n = m;
    n.normalize();
    return projective_distance(n, Moebius::identity()) < tol;
}

cx multiplier_at(const Moebius& m, cx p, bool at_inf) {
    cx s = std::sqrt(m.det());
    if (at_inf) {
        // In the chart w = 1/z the map is w -> (d w + c)/(b w + a).
        cx den = m.a / s;
        return (m.d / s) / den;
    }
    cx den = (m.c * p + m.d) / s;
    return 1.0 / (den * den);
}

MapClassification classify_and_fix(const Moebius& m_in) {
    Moebius m = m_in;
    m.normalize();
    MapClassification out;
    if (projective_distance(m, Moebius::identity()) < 1e-12) {
        out.kind = MapKind::Identity;
        out.multiplier = 1.0;
        return out;
    }
    cx t = m.tr();
    cx disc = t * t - 4.0;
    bool parabolic = std::abs(disc) < kParabolicTol;
    if (parabolic) {
        out.kind = MapKind::Parabolic;
        // Single fixed point: c z^2 + (d-a) z - b = 0 with double root.
        if (std::abs(m.c) > 1e-12) {
            out.fixed_points.push_back((m.a - m.d) / (2.0 * m.c));
            out.at_infinity.push_back(false);
        } else {
            out.fixed_points.push_back(cx(INFINITY, INFINITY));
            out.at_infinity.push_back(true);
        }
        out.multiplier = 1.0;
        return out;
    }
    bool real_trace = std::abs(t.imag()) < 1e-10;
    out.kind = (real_trace && std::abs(t.real()) < 2.0) ? MapKind::Elliptic
                                                        : MapKind::Loxodromic;
    out.ill_conditioned = std::abs(disc) < 1e-6;
    if (std::abs(m.c) > 1e-14) {
        cx sq = std::sqrt(disc);
        // Stable quadratic roots for c z^2 + (d - a) z - b = 0.
        cx q1 = (m.a - m.d + sq) / (2.0 * m.c);
        cx q2 = (m.a - m.d - sq) / (2.0 * m.c);
        out.fixed_points = {q1, q2};
        out.at_infinity = {false, false};
    } else {
        out.fixed_points = {cx(INFINITY, INFINITY)};
        out.at_infinity = {true};
        if (std::abs(m.a - m.d) > 1e-14) {
            out.fixed_points.push_back(m.b / (m.d - m.a));
            out.at_infinity.push_back(false);
        }
    }
    out.multiplier = multiplier_at(m, out.fixed_points[0], out.at_infinity[0]);
    return out;
}

Reflection::Reflection(cx a_, double b_, double c_) : a(a_), b(b_), c(c_) {}

cx Reflection::apply(cx z) const {
    cx zb = (!finite(z) || std::abs(z) > kInfThreshold) ? cx(INFINITY, INFINITY)
                                                        : std::conj(z);
    if (!finite(zb)) {
        if (std::abs(c) == 0.0) return cx(INFINITY, INFINITY);
        return a / cx(c);
    }
    cx den = c * zb - std::conj(a);
    if (std::abs(den) == 0.0) return cx(INFINITY, INFINITY);
    return (a * zb + b) / den;
}

double Reflection::unit_residual() const {
    return std::abs(std::norm(a) + b * c - 1.0);
}

cx Reflection::circle_center() const { return a / c; }
double Reflection::circle_radius() const { return 1.0 / std::abs(c); }

cx Reflection::line_normal() const { return a / std::abs(a); }
double Reflection::line_offset() const {
    // Fixed set for c = 0: 2 Re(conj(a) z) = -b, i.e. Re(conj(n) z) = -b/(2|a|).
    return -b / (2.0 * std::abs(a));
}

Reflection Reflection::line_through_origin(double alpha) {
    return Reflection(cx(0, 1) * std::polar(1.0, alpha), 0.0, 0.0);
}

Reflection Reflection::from_circle(cx center, double radius) {
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    double r = radius;
    return Reflection(center / r, (r * r - std::norm(center)) / r, 1.0 / r);
}

Reflection Reflection::from_line(cx unit_normal, double offset) {
    double n = std::abs(unit_normal);
    if (n < 1e-300) throw DomainError("zero line normal");
    cx u = unit_normal / n;
    // Fixed set of (a zbar + b)/(-abar) with |a|=1 is 2 Re(conj(a) z) = -b.
    return Reflection(u, -2.0 * offset, 0.0);
}

Reflection Reflection::from_great_circle(double nx, double ny, double nz) {
    double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (n < 1e-300) throw DomainError("zero normal");
    return Reflection(cx(nx / n, ny / n), nz / n, nz / n);
}

bool same_circle(const Reflection& r1, const Reflection& r2, double tol) {
    auto dev = [&](double s) {
        double d0 = std::abs(r1.a - s * r2.a);
        d0 = std::max(d0, std::abs(r1.b - s * r2.b));
        d0 = std::max(d0, std::abs(r1.c - s * r2.c));
        return d0;
    };
    return std::min(dev(1.0), dev(-1.0)) < tol;
}

Moebius compose_reflections(const Reflection& r1, const Reflection& r2) {
    Moebius m(r1.a * std::conj(r2.a) + cx(r1.b) * cx(r2.c),
              r1.a * cx(r2.b) - cx(r1.b) * r2.a,
              cx(r1.c) * std::conj(r2.a) - std::conj(r1.a) * cx(r2.c),
              cx(r1.c) * cx(r2.b) + std::conj(r1.a) * r2.a);
    m.normalize_det();  // det is exactly 1; this only cleans roundoff
    return m;
}

double trace_of_reflection_product(const Reflection& r1, const Reflection& r2) {
    return 2.0 * (r1.a * std::conj(r2.a)).real() + r1.b * r2.c + r1.c * r2.b;
}

std::vector<cx> circle_intersection(const Reflection& r1, const Reflection& r2) {
    Moebius m = compose_reflections(r1, r2);
    MapClassification cls = classify_and_fix(m);
    std::vector<cx> pts;
    if (cls.kind == MapKind::Identity || cls.kind == MapKind::Loxodromic)
        return pts;
    for (size_t i = 0; i < cls.fixed_points.size(); ++i)
        pts.push_back(cls.at_infinity[i] ? cx(INFINITY, INFINITY)
                                         : cls.fixed_points[i]);
    return pts;
}

}  // namespace ppvi
