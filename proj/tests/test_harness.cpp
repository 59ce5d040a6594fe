#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "isocurve/harness.hpp"

using namespace isocurve;

namespace {

CoefficientSpec nontrivialCoeffs() {
    return CoefficientSpec::fromSources("0.7+0.1*s", "0.9+0.2*sin(s)");
}

const TangentDirection kDir{1.3, -0.8};

PairProbe helixProbe() {
    // The cylinder helix normalized onto plane-cylinder: straight on the
    // plane, curved on the cylinder.
    const NamedCurve& nc = curveByName("cylinder-helix");
    return PairProbe::make(pairByName("plane-cylinder"),
                           CurveDef::fromExpressions(nc.name, surfaceByName(nc.surface),
                                                     nc.uSrc, nc.vSrc, nc.t0, nc.t1));
}

} // namespace

TEST_CASE("coefficient expressions evaluate in s") {
    const CoefficientSpec c = CoefficientSpec::fromSources("0.5+0.25*s", "2");
    CHECK(c.lambdaAt(2.0) == 1.0);
    CHECK(c.ratioAt(7.0) == 2.0);
    CHECK_THROWS_AS(CoefficientSpec::fromSources("t", "1"), ParseError);
}

TEST_CASE("invariant fields lie in their defining planes") {
    const PairProbe probe = PairProbe::makeDefault(makeSelfPair(surfaceByName("torus")));
    const CurveOnSurface& curve = probe.curve();
    const CoefficientSpec coeffs = nontrivialCoeffs();
    for (int i = 0; i <= 20; ++i) {
        const double s = curve.length() * i / 20;
        const FrenetData fd = curve.frenet(s);
        // Both routes agree internally (InternalCheckError otherwise).
        const Vec3 rect = rectifyingField(curve, coeffs, s);
        const Vec3 osc = osculatingField(curve, coeffs, s);
        const double scaleR = std::max(1.0, norm(rect));
        const double scaleO = std::max(1.0, norm(osc));
        CHECK(std::fabs(dot(rect, fd.n)) <= 1e-12 * scaleR); // rectifying plane
        CHECK(std::fabs(dot(osc, fd.b)) <= 1e-12 * scaleO);  // osculating plane
        // And the stated component values.
        CHECK(dot(rect, fd.t) == doctest::Approx(coeffs.lambdaAt(s)).epsilon(1e-10));
        CHECK(dot(osc, fd.n) ==
              doctest::Approx(coeffs.ratioAt(s) * fd.kappa).epsilon(1e-10));
    }
}

TEST_CASE("pair probes normalize the host surface") {
    const PairProbe probe = helixProbe();
    CHECK(probe.curve().host().name() == "plane");
    const PairSample ps = probe.at(1.0);
    CHECK(ps.kn1 == 0.0); // plane: L = M = N = 0
    CHECK(ps.kn2 == doctest::Approx(-0.64).epsilon(1e-9));
    CHECK(ps.area == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(probe.minKappa() <= 1e-12); // straight on the plane

    // A curve hosted on neither member is rejected.
    const NamedCurve& gc = curveByName("great-circle");
    CHECK_THROWS_AS(
        PairProbe::make(pairByName("plane-cylinder"),
                        CurveDef::fromExpressions(gc.name, surfaceByName(gc.surface),
                                                  gc.uSrc, gc.vSrc, gc.t0, gc.t1)),
        UsageError);
}

TEST_CASE("default probes are curved on both members") {
    for (const auto& pair : builtinPairs()) {
        CAPTURE(pair.name);
        const PairProbe probe = PairProbe::makeDefault(pair);
        CHECK(probe.minKappa() >= 0.9);
    }
}

TEST_CASE("self pairs annihilate every identity") {
    for (const char* name : {"torus", "sphere", "cone"}) {
        IsometricPair self = makeSelfPair(surfaceByName(name));
        if (std::string(name) == "sphere") self.sharedDomain = {-7, 7, -1.2, 1.2};
        if (std::string(name) == "cone") self.sharedDomain = {-7, 7, 1.0, 5.0};
        const PairProbe probe = PairProbe::makeDefault(self);
        for (const TheoremReport& r : runAllTheorems(probe, nontrivialCoeffs(), kDir, 60)) {
            CAPTURE(name);
            CAPTURE(toString(r.id));
            CHECK(r.pass);
            CHECK(r.maxResidual <= 1e-12);
        }
    }
}

TEST_CASE("corrected identities hold on both catalog pairs") {
    for (const char* name : {"plane-cylinder", "helicoid-catenoid"}) {
        const PairProbe probe = PairProbe::makeDefault(pairByName(name));
        const std::vector<TheoremReport> reports =
            runAllTheorems(probe, nontrivialCoeffs(), kDir, 120);
        CHECK(reports.size() == 8);
        for (const TheoremReport& r : reports) {
            CAPTURE(name);
            CAPTURE(toString(r.id));
            CHECK(r.pass);
            CHECK(r.maxResidual <= 1e-9);
            CHECK(r.samples == 120);
            CHECK(r.tol == 1e-7);
        }
    }
}

TEST_CASE("factor audit: the area element is load-bearing") {
    // On plane-cylinder the area element is 1, so the literal variant holds.
    const PairProbe flat = PairProbe::makeDefault(pairByName("plane-cylinder"));
    for (const TheoremReport& r : runAllTheorems(flat, nontrivialCoeffs(), kDir, 80)) {
        CAPTURE(toString(r.id));
        CHECK(r.paperLiteralResidual <= 1e-8);
    }
    // On helicoid-catenoid it is cosh^2 v != 1: the literal variant of the
    // rectifying identities must fail while the corrected one passes.
    const PairProbe curved = PairProbe::makeDefault(pairByName("helicoid-catenoid"));
    const CoefficientSpec coeffs = nontrivialCoeffs();
    const RT45Reports rt = verifyRT45(curved, coeffs, 80);
    CHECK(rt.rt4.pass);
    CHECK(rt.rt5.pass);
    CHECK(rt.rt4.paperLiteralResidual > 0.05);
    CHECK(rt.rt5.paperLiteralResidual > 0.05);
    const TheoremReport t31 = verifyT31(curved, coeffs, kDir, 80);
    CHECK(t31.pass);
    CHECK(t31.paperLiteralResidual > 0.05);
    const TheoremReport t32 = verifyT32(curved, coeffs, kDir, 80);
    CHECK(t32.pass);
    CHECK(t32.paperLiteralResidual > 0.05);
    // No area factor appears in Theorem 4.1, so there is nothing to drop.
    const TheoremReport t41 = verifyT41(curved, coeffs, 80);
    CHECK(t41.paperLiteralResidual == t41.maxResidual);
}

TEST_CASE("theorem 4.1 reduces to kappa_n_bar when the first member is flat") {
    const PairProbe probe = PairProbe::makeDefault(pairByName("plane-cylinder"));
    const CoefficientSpec coeffs = CoefficientSpec::fromSources("0.4", "1");
    std::vector<SampleRecord> records;
    const TheoremReport r = verifyT41(probe, coeffs, 50, 1e-7, &records);
    CHECK(r.pass);
    CHECK(records.size() == 50);
    for (const SampleRecord& rec : records) {
        CHECK(rec.kappaNFirst == 0.0);
        CHECK(rec.lhs == doctest::Approx(rec.kappaNSecond).epsilon(1e-9));
        CHECK(rec.areaElement == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(r.detail.at("pointwiseO2Residual") <= 1e-9);
}

TEST_CASE("theorem 3.2 bracket-root direction kills the component") {
    for (const char* name : {"plane-cylinder", "helicoid-catenoid"}) {
        const PairProbe probe = PairProbe::makeDefault(pairByName(name));
        const TheoremReport r = verifyT32(probe, nontrivialCoeffs(), kDir, 80);
        CAPTURE(name);
        CHECK(r.detail.at("rootDirectionResidual") <= 1e-9);
        CHECK(r.detail.at("scaledFrameResidual") <= 1e-9);
        CHECK(r.detail.at("trueFrameResidual") <= 1e-9);
    }
}

TEST_CASE("theorem 4.2 closed form matches the direct dot product") {
    const PairProbe probe = PairProbe::makeDefault(makeSelfPair(surfaceByName("torus")));
    const TheoremReport r = verifyT42(probe, nontrivialCoeffs(), kDir, 100);
    CHECK(r.pass);
    CHECK(r.detail.at("closedFormResidual") <= 1e-8);
}

TEST_CASE("tangential fields are isometry-exact") {
    // ratio == 0 strips both fields to lambda t, which is intrinsic.
    const CoefficientSpec tangential = CoefficientSpec::fromSources("1.3+0.2*s", "0");
    for (const char* name : {"plane-cylinder", "helicoid-catenoid"}) {
        const PairProbe probe = PairProbe::makeDefault(pairByName(name));
        CAPTURE(name);
        const RT45Reports rt = verifyRT45(probe, tangential, 60);
        CHECK(rt.rt4.maxResidual <= 1e-12);
        CHECK(rt.rt5.maxResidual <= 1e-12);
        CHECK(verifyT31(probe, tangential, kDir, 60).maxResidual <= 1e-12);
        CHECK(verifyT32(probe, tangential, kDir, 60).maxResidual <= 1e-12);
        CHECK(verifyT41(probe, tangential, 60).maxResidual <= 1e-12);
        CHECK(verifyT42(probe, tangential, kDir, 60).maxResidual <= 1e-12);
    }
}

TEST_CASE("asymptotic corollary: flags and invariance") {
    SUBCASE("helix probe shows flag divergence without invariance") {
        const AsymptoticReports ar = verifyAsymptoticCorollary(helixProbe(), kDir, 60);
        for (const TheoremReport* r : {&ar.rectifying, &ar.osculating}) {
            CHECK(r->pass); // tangential residuals vanish; flags may diverge
            CHECK(r->maxResidual <= 1e-12);
            CHECK(r->detail.at("asymptoticFirst") == 1.0);
            CHECK(r->detail.at("asymptoticSecond") == 0.0);
            CHECK(r->detail.at("kappaInvariant") == 0.0);
            CHECK(r->detail.at("degenerateFraction") == 1.0);
            CHECK(r->detail.at("maxKappaNSecond") ==
                  doctest::Approx(0.64).epsilon(1e-9));
            CHECK(!r->note.empty());
        }
        CHECK((ar.rectifying.id == TheoremId::kC3_2_2));
        CHECK((ar.osculating.id == TheoremId::kC4_1_2));
    }
    SUBCASE("helicoid parameter curves are asymptotic on both members") {
        // On the helicoid L = Ncoef = 0, so u-parameter curves (v constant)
        // have kappa_n = 0; the self pair keeps kappa_n invariant and both
        // flags must agree.
        const SurfacePtr heli = surfaceByName("helicoid");
        const PairProbe probe = PairProbe::make(
            makeSelfPair(heli),
            CurveDef::fromExpressions("ruling", heli, "t", "0.7", 0.0, 2.0));
        const AsymptoticReports ar = verifyAsymptoticCorollary(probe, kDir, 60);
        for (const TheoremReport* r : {&ar.rectifying, &ar.osculating}) {
            CHECK(r->pass);
            CHECK(r->detail.at("asymptoticFirst") == 1.0);
            CHECK(r->detail.at("asymptoticSecond") == 1.0);
            CHECK(r->detail.at("kappaInvariant") == 1.0);
            CHECK(r->note.empty());
        }
    }
}

TEST_CASE("random verification draws are deterministic and pass") {
    for (const char* name : {"plane-cylinder", "helicoid-catenoid"}) {
        const IsometricPair pair = pairByName(name);
        CAPTURE(name);
        // Same seed, same draw.
        Lcg64 a(42), b(42);
        const VerifyDraw da = drawVerifySetup(a, pair);
        const VerifyDraw db = drawVerifySetup(b, pair);
        CHECK(da.curve.def().u.source() == db.curve.def().u.source());
        CHECK(da.curve.def().v.source() == db.curve.def().v.source());
        CHECK(da.coeffs.lambda.source() == db.coeffs.lambda.source());
        CHECK(da.coeffs.ratio.source() == db.coeffs.ratio.source());
        CHECK(da.dir.a == db.dir.a);
        CHECK(da.dir.b == db.dir.b);
        // Successive draws differ.
        const VerifyDraw dc = drawVerifySetup(a, pair);
        CHECK(da.curve.def().u.source() != dc.curve.def().u.source());
        // Every draw satisfies all corrected identities.
        Lcg64 rng(7);
        for (int d = 0; d < 5; ++d) {
            const VerifyDraw vd = drawVerifySetup(rng, pair);
            const PairProbe probe = PairProbe::make(pair, vd.curve.def(), 240);
            for (const TheoremReport& r : runAllTheorems(probe, vd.coeffs, vd.dir, 60)) {
                CAPTURE(toString(r.id));
                CHECK(r.pass);
            }
        }
    }
}

TEST_CASE("sample-count validation") {
    const PairProbe probe = PairProbe::makeDefault(pairByName("plane-cylinder"));
    CHECK_THROWS_AS(verifyT31(probe, nontrivialCoeffs(), kDir, 1), UsageError);
    CHECK_THROWS_AS(verifyRT45(probe, nontrivialCoeffs(), 0), UsageError);
}
