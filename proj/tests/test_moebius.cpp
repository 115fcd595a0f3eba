#include "doctest.h"
#include "ppvi/moebius.hpp"
#include "test_support.hpp"

using namespace ppvi;
namespace tst = ppvi::testing;

TEST_CASE("reflection in real axis composed with itself is the identity") {
    Reflection r = Reflection::real_axis();
    Moebius m = compose_reflections(r, r);
    CHECK(is_identity(m));
    CHECK(std::abs(m.tr()) == doctest::Approx(2.0));
}

TEST_CASE("real axis with rotated line gives trace 2 cos(alpha)") {
    auto rng = tst::make_rng(1);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 20; ++i) {
        double alpha = u(rng);
        Reflection r1 = Reflection::real_axis();
        Reflection r2 = Reflection::line_through_origin(alpha);
        double t = trace_of_reflection_product(r1, r2);
        CHECK(t == doctest::Approx(2.0 * std::cos(alpha)).epsilon(1e-12));
        Moebius m = compose_reflections(r1, r2);
        CHECK(std::abs(std::abs(m.tr().real()) - std::abs(t)) < 1e-12);
    }
}

TEST_CASE("trace formula matches the matrix product for random reflections") {
    auto rng = tst::make_rng(2);
    for (int i = 0; i < 200; ++i) {
        Reflection r1 = tst::random_circle(rng);
        Reflection r2 = tst::random_circle(rng);
        Moebius m = compose_reflections(r1, r2);
        double t = trace_of_reflection_product(r1, r2);
        CHECK(std::abs(m.tr().imag()) < 1e-10);  // always real
        CHECK(std::abs(m.tr().real() - t) < 1e-10);
    }
}

TEST_CASE("composition acts as r1 after r2 pointwise") {
    auto rng = tst::make_rng(3);
    for (int i = 0; i < 50; ++i) {
        Reflection r1 = tst::random_circle(rng);
        Reflection r2 = tst::random_circle(rng);
        Moebius m = compose_reflections(r1, r2);
        for (int j = 0; j < 5; ++j) {
            cx z = tst::random_point(rng);
            CHECK(chordal(m.apply(z), r1.apply(r2.apply(z))) < 1e-9);
        }
    }
}

TEST_CASE("reflections are involutions and satisfy conj(S) = S^{-1}") {
    auto rng = tst::make_rng(4);
    for (int i = 0; i < 50; ++i) {
        Reflection r = tst::random_circle(rng);
        CHECK(r.unit_residual() < 1e-12);
        for (int j = 0; j < 5; ++j) {
            cx z = tst::random_point(rng);
            CHECK(chordal(r.apply(r.apply(z)), z) < 1e-9);
        }
        // Matrix identity: conj of [[a,b],[c,-abar]] equals its inverse.
        Moebius s(r.a, r.b, r.c, -std::conj(r.a));
        Moebius prod = conj(s) * s;
        CHECK(std::abs(prod.a - 1.0) < 1e-12);
        CHECK(std::abs(prod.b) < 1e-12);
        CHECK(std::abs(prod.c) < 1e-12);
        CHECK(std::abs(prod.d - 1.0) < 1e-12);
    }
}

TEST_CASE("classification: diagonal rotation, translation, identity") {
    MapClassification id = classify_and_fix(Moebius::identity());
    CHECK(id.kind == MapKind::Identity);

    double kappa = 0.37;
    Moebius rot(std::polar(1.0, M_PI * kappa), 0.0, 0.0, std::polar(1.0, -M_PI * kappa));
    MapClassification cr = classify_and_fix(rot);
    CHECK(cr.kind == MapKind::Elliptic);
    REQUIRE(cr.fixed_points.size() == 2);
    bool has_zero = false, has_inf = false;
    for (size_t i = 0; i < cr.fixed_points.size(); ++i) {
        if (cr.at_infinity[i]) has_inf = true;
        else if (std::abs(cr.fixed_points[i]) < 1e-9) has_zero = true;
    }
    CHECK(has_zero);
    CHECK(has_inf);
    // Multiplier at 0 is e^{2 pi i kappa}.
    cx m0 = multiplier_at(rot, 0.0, false);
    CHECK(std::abs(m0 - std::polar(1.0, 2.0 * M_PI * kappa)) < 1e-12);

    Moebius tr(1.0, 1.0, 0.0, 1.0);
    MapClassification ct = classify_and_fix(tr);
    CHECK(ct.kind == MapKind::Parabolic);
    REQUIRE(ct.fixed_points.size() == 1);
    CHECK(ct.at_infinity[0]);
}

TEST_CASE("classification is conjugation invariant") {
    auto rng = tst::make_rng(5);
    for (int i = 0; i < 40; ++i) {
        Reflection r1 = tst::random_circle(rng);
        Reflection r2 = tst::random_circle(rng);
        Moebius m = compose_reflections(r1, r2);
        Moebius g = tst::random_unimodular(rng);
        Moebius mc = g * m * g.inverse();
        auto k1 = classify_and_fix(m).kind;
        auto k2 = classify_and_fix(mc).kind;
        CHECK(std::abs(m.tr().real() - mc.tr().real()) < 1e-8);
        CHECK(k1 == k2);
    }
}

TEST_CASE("elliptic composition fixes the circle intersection points") {
    auto rng = tst::make_rng(6);
    int found = 0;
    for (int i = 0; i < 100 && found < 25; ++i) {
        Reflection r1 = tst::random_circle(rng);
        Reflection r2 = tst::random_circle(rng);
        // Independent geometric intersection of the two circles.
        cx c1 = r1.circle_center(), c2 = r2.circle_center();
        double rad1 = r1.circle_radius(), rad2 = r2.circle_radius();
        double d = std::abs(c2 - c1);
        if (d > rad1 + rad2 - 0.05 || d < std::abs(rad1 - rad2) + 0.05) continue;
        ++found;
        double a = (rad1 * rad1 - rad2 * rad2 + d * d) / (2.0 * d);
        double h = std::sqrt(rad1 * rad1 - a * a);
        cx base = c1 + a * (c2 - c1) / d;
        cx off = cx(0, 1) * (c2 - c1) / d * h;
        cx p1 = base + off, p2 = base - off;

        auto pts = circle_intersection(r1, r2);
        REQUIRE(pts.size() == 2);
        double d11 = chordal(pts[0], p1) + chordal(pts[1], p2);
        double d12 = chordal(pts[0], p2) + chordal(pts[1], p1);
        CHECK(std::min(d11, d12) < 1e-7);
    }
    CHECK(found >= 10);
}

TEST_CASE("geometric round trips for circle and line views") {
    auto rng = tst::make_rng(7);
    for (int i = 0; i < 30; ++i) {
        Reflection r = tst::random_circle(rng);
        Reflection r2 = Reflection::from_circle(r.circle_center(), r.circle_radius());
        CHECK(same_circle(r, r2, 1e-10));
    }
    Reflection line = Reflection::from_line(std::polar(1.0, 0.7), 0.35);
    CHECK(line.is_line());
    CHECK(std::abs(line.line_offset() - 0.35) < 1e-12);
    // Fixed points of the reflection lie on the line.
    cx n = line.line_normal();
    cx z = 0.35 * n + cx(0, 1) * n * 1.3;  // a point on the line
    CHECK(chordal(line.apply(z), z) < 1e-12);
}

TEST_CASE("great circles commute with the antipodal map") {
    auto rng = tst::make_rng(8);
    for (int i = 0; i < 20; ++i) {
        Reflection r = tst::random_great_circle(rng);
        CHECK(r.is_great_circle());
        cx z = tst::random_point(rng);
        cx anti = -1.0 / std::conj(z);
        CHECK(chordal(r.apply(anti), -1.0 / std::conj(r.apply(z))) < 1e-8);
    }
}
