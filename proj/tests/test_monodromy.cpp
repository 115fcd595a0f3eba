#include "doctest.h"
#include "ppvi/monodromy.hpp"
#include "test_support.hpp"

using namespace ppvi;
namespace tst = ppvi::testing;

namespace {

MonodromyQuadruple random_quadruple(std::mt19937_64& rng) {
    Moebius t1 = tst::random_unimodular(rng);
    Moebius t2 = tst::random_unimodular(rng);
    Moebius t3 = tst::random_unimodular(rng);
    Moebius t4 = (t1 * t2 * t3).inverse();
    return MonodromyQuadruple({t1, t2, t3, t4});
}

}  // namespace

TEST_CASE("identity-representation coordinates satisfy Fricke-Klein") {
    TraceCoordinates tc;
    tc.t1 = tc.t2 = tc.t3 = tc.t4 = tc.t12 = tc.t23 = tc.t13 = 2.0;
    CHECK(std::abs(fricke_klein_residual(tc)) < 1e-12);
    CHECK(std::abs(reflection_delta(tc)) < 1e-12);
}

TEST_CASE("Fricke-Klein residual vanishes on random quadruples and detects perturbation") {
    auto rng = tst::make_rng(10);
    for (int i = 0; i < 100; ++i) {
        MonodromyQuadruple q = random_quadruple(rng);
        CHECK(q.product_residual() < 1e-9);
        TraceCoordinates tc = trace_coordinates(q);
        CHECK(std::abs(fricke_klein_residual(tc)) < 1e-8);
        TraceCoordinates bad = tc;
        bad.t13 += 0.1;
        CHECK(std::abs(fricke_klein_residual(bad)) > 1e-4);
    }
}

TEST_CASE("conjugated quadruple has identical coordinates") {
    auto rng = tst::make_rng(11);
    MonodromyQuadruple q = random_quadruple(rng);
    Moebius g = tst::random_unimodular(rng);
    std::array<Moebius, 4> conj_gens;
    for (int j = 0; j < 4; ++j) conj_gens[j] = g * q.t[j] * g.inverse();
    MonodromyQuadruple qc(conj_gens);
    TraceCoordinates a = trace_coordinates(q), b = trace_coordinates(qc);
    CHECK(std::abs(a.t1 - b.t1) < 1e-8);
    CHECK(std::abs(a.t12 - b.t12) < 1e-8);
    CHECK(std::abs(a.t13 - b.t13) < 1e-8);
}

TEST_CASE("reflection-generated quadruples: real traces, delta <= 0, FK = 0") {
    auto rng = tst::make_rng(12);
    for (int i = 0; i < 50; ++i) {
        auto chain = tst::random_chain(rng);
        MonodromyQuadruple q = MonodromyQuadruple::from_reflections(chain);
        CHECK(q.product_residual() < 1e-10);
        TraceCoordinates tc = trace_coordinates(q);
        CHECK(tc.six_real(1e-9));
        CHECK(std::abs(fricke_klein_residual(tc)) < 1e-8);
        CHECK(reflection_delta(tc) <= 1e-9);
    }
}

TEST_CASE("great-circle chains give delta = 0 and the unitary linear relation") {
    auto rng = tst::make_rng(13);
    for (int i = 0; i < 50; ++i) {
        auto chain = tst::random_great_chain(rng);
        MonodromyQuadruple q = MonodromyQuadruple::from_reflections(chain);
        TraceCoordinates tc = trace_coordinates(q);
        CHECK(std::abs(reflection_delta(tc)) < 1e-9);
        CHECK(unitary_reflection_test(tc));
    }
}

TEST_CASE("unitary test is false for a chain with a disjoint pair") {
    // Two concentric circles plus two crossing lines through the annulus.
    std::array<Reflection, 4> chain = {
        Reflection::from_circle(0.0, 1.0),
        Reflection::real_axis(),
        Reflection::from_circle(0.0, 3.0),
        Reflection::line_through_origin(0.9),
    };
    MonodromyQuadruple q = MonodromyQuadruple::from_reflections(chain);
    TraceCoordinates tc = trace_coordinates(q);
    CHECK(tc.all_real(1e-9));
    CHECK(reflection_delta(tc) < -1e-6);
    CHECK_FALSE(unitary_reflection_test(tc));
}

TEST_CASE("round trip: recover reflections from traces and verify") {
    auto rng = tst::make_rng(14);
    int tested = 0;
    for (int i = 0; i < 40; ++i) {
        auto chain = tst::random_chain(rng);
        MonodromyQuadruple q = MonodromyQuadruple::from_reflections(chain);
        RecoveryResult rr = recover_and_verify(q);
        CHECK(rr.normalization_available);
        REQUIRE(!rr.verified.empty());
        ++tested;
        // Some candidate reproduces the original T_j.
        bool ok = verify_generation(rr.verified.front(), q);
        CHECK(ok);
    }
    CHECK(tested == 40);
}

TEST_CASE("verification rejects permuted or corrupted candidates") {
    auto rng = tst::make_rng(15);
    auto chain = tst::random_chain(rng);
    MonodromyQuadruple q = MonodromyQuadruple::from_reflections(chain);
    CHECK(verify_generation(chain, q));
    std::array<Reflection, 4> perm = {chain[1], chain[0], chain[2], chain[3]};
    CHECK_FALSE(verify_generation(perm, q));
    std::array<Reflection, 4> corrupt = chain;
    corrupt[2] = tst::random_circle(rng);
    CHECK_FALSE(verify_generation(corrupt, q));
}

TEST_CASE("degenerate inputs raise the documented errors") {
    TraceCoordinates id;
    id.t1 = id.t2 = id.t3 = id.t4 = id.t12 = id.t23 = id.t13 = 2.0;
    CHECK_THROWS_AS((void)recover_reflections(id), NormalizationUnavailable);
    TraceCoordinates bad = id;
    bad.t2 = 1.0;
    bad.t12 = 7.0;  // makes Delta positive
    if (reflection_delta(bad) > 0)
        CHECK_THROWS_AS((void)recover_reflections(bad), NotReflectionGenerated);
}

TEST_CASE("reality condition holds for chains anchored on the real axis") {
    auto rng = tst::make_rng(16);
    for (int i = 0; i < 20; ++i) {
        // sigma_1 = reflection in the real axis gives conj(N_j) = N_j^{-1}.
        std::array<Reflection, 4> chain = tst::random_chain(rng);
        chain[0] = Reflection::real_axis();
        if (same_circle(chain[0], chain[1]) || same_circle(chain[0], chain[3]))
            continue;
        MonodromyQuadruple q = MonodromyQuadruple::from_reflections(chain);
        CHECK(reality_condition(q));
    }
    // Identity quadruple satisfies it trivially.
    MonodromyQuadruple qid({Moebius::identity(), Moebius::identity(),
                            Moebius::identity(), Moebius::identity()});
    CHECK(reality_condition(qid));
    // A generic complex quadruple does not.
    auto rng2 = tst::make_rng(17);
    MonodromyQuadruple q = random_quadruple(rng2);
    CHECK_FALSE(reality_condition(q));
}

TEST_CASE("common fixed point with prescribed multipliers") {
    double k1 = 0.3, k2 = 0.45;
    Moebius t1(std::polar(1.0, M_PI * k1), 0.0, 0.0, std::polar(1.0, -M_PI * k1));
    Moebius t2(std::polar(1.0, M_PI * k2), 0.0, 0.0, std::polar(1.0, -M_PI * k2));
    Moebius t3 = (t1 * t2).inverse();
    MonodromyQuadruple q({t1, t2, t3, Moebius::identity()});
    CHECK(common_fixed_point_condition(q, k1, k2));
    CHECK_FALSE(common_fixed_point_condition(q, k1 + 0.05, k2));
    // Generic pair shares nothing.
    auto rng = tst::make_rng(18);
    for (int i = 0; i < 5; ++i) {
        MonodromyQuadruple qr({tst::random_unimodular(rng), tst::random_unimodular(rng),
                               tst::random_unimodular(rng), tst::random_unimodular(rng)});
        CHECK_FALSE(common_fixed_point_condition(qr, k1, k2));
    }
}

TEST_CASE("anti-diagonal monodromy triple satisfies FK and is reflection generated") {
    // Two-by-two monodromy data for an annulus-type configuration with inner
    // and outer radii 1 and R, converted through the transposition rule.
    double R = 2.5;
    auto to_gen = [](cx m11, cx m12, cx m21, cx m22) {
        Moebius m(m11, m21, m12, m22);  // transpose
        m.normalize_det();
        return m;
    };
    Moebius t1 = to_gen(0.0, 1.0, -1.0, 0.0);
    Moebius t2 = to_gen(0.0, cx(0, 1), cx(0, 1), 0.0);
    Moebius t3 = to_gen(0.0, cx(0, R), cx(0, R), 0.0);
    Moebius t4 = (t1 * t2 * t3).inverse();
    MonodromyQuadruple q({t1, t2, t3, t4});
    CHECK(q.product_residual() < 1e-12);
    TraceCoordinates tc = trace_coordinates(q);
    CHECK(std::abs(fricke_klein_residual(tc)) < 1e-10);
    CHECK(tc.six_real(1e-10));
    CHECK(reflection_delta(tc) <= 1e-9);
}
