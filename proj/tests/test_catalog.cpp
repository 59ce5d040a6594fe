#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "isocurve/catalog.hpp"

using namespace isocurve;

TEST_CASE("catalog inventory") {
    std::set<std::string> names;
    for (const auto& s : builtinSurfaces()) names.insert(s->name());
    for (const char* required : {"plane", "cylinder", "sphere", "cone", "helicoid",
                                 "catenoid", "associate", "torus"})
        CHECK(names.count(required) == 1);
    CHECK(surfaceByName("torus")->name() == "torus");
    CHECK_THROWS_AS(surfaceByName("moebius"), UsageError);
    CHECK_THROWS_AS(pairByName("sphere-plane"), UsageError);
    CHECK_THROWS_AS(curveByName("loxodrome"), UsageError);
}

TEST_CASE("every builtin pair is isometric on its shared chart") {
    for (const auto& p : builtinPairs()) {
        CAPTURE(p.name);
        CHECK(validatePair(p, 200, 7) <= 1e-9);
    }
    // Spot checks straight from the definitions.
    const IsometricPair pc = pairByName("plane-cylinder");
    const FormBundle a = pc.first->forms(0.3, -4.0);
    const FormBundle b = pc.second->forms(0.3, -4.0);
    for (const FormBundle* f : {&a, &b}) {
        CHECK(f->E == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::fabs(f->F) < 1e-15);
        CHECK(f->G == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(pairFormMismatch(pairByName("helicoid-catenoid"), 0.9, -1.3) <= 1e-12);
}

TEST_CASE("associate family interpolates helicoid to catenoid") {
    // E = G = cosh^2 v, F = 0 at every theta.
    for (double theta : {0.0, 0.35, 1.0, 1.5707963267948966}) {
        const SurfacePtr x = makeAssociate(theta);
        const FormBundle f = x->forms(0.7, -0.4);
        const double ch = std::cosh(-0.4);
        CAPTURE(theta);
        CHECK(f.E == doctest::Approx(ch * ch).epsilon(1e-12));
        CHECK(std::fabs(f.F) <= 1e-12);
        CHECK(f.G == doctest::Approx(ch * ch).epsilon(1e-12));
    }
    // X_{pi/2} coincides with the catenoid chart pointwise.
    const SurfacePtr xEnd = makeAssociate(1.5707963267948966);
    const SurfacePtr cat = surfaceByName("catenoid");
    for (double u : {-2.0, 0.1, 1.9})
        for (double v : {-1.5, 0.4}) {
            CHECK(norm(xEnd->jet(u, v).p - cat->jet(u, v).p) <= 1e-9);
        }
    // X_0 <-> X_theta pairs validate for arbitrary theta.
    for (double theta : {0.2, 0.8, 1.4}) {
        CHECK(validatePair(pairByName("associate", theta), 100, 3) <= 1e-9);
    }
}

TEST_CASE("known curves build and stay on their hosts") {
    for (const auto& nc : curveRegistry()) {
        CAPTURE(nc.name);
        const CurveOnSurface curve = buildNamedCurve(nc);
        CHECK(curve.length() > 0.0);
        // coords() checks the domain at every call; sweep a few samples.
        for (int i = 0; i <= 8; ++i) CHECK_NOTHROW(curve.coords(curve.length() * i / 8));
    }
    CHECK((curveByName("cone-geodesic").expected == CurveClass::kRectifying));
    CHECK((curveByName("plane-line").expected == CurveClass::kDegenerate));
    // plane-line is registry-only: it cannot demonstrate rectifying /
    // osculating behaviour, so knownCurves() keeps to curves with frames.
    for (const auto& nc : knownCurves()) CHECK(nc.name != "plane-line");
}

TEST_CASE("cone geodesic comes from unrolling the cone") {
    // Unrolled chart: (rho, psi) -> (u = psi / sin(alpha), v = rho) with
    // sin(alpha) = 1/2. The line rho = 1.5 / cos(psi) pulls back to
    // u = 2t, v = 1.5/cos(t). Its image must be straight in the unrolled
    // plane and must avoid the apex.
    const CurveOnSurface geo = buildNamedCurve(curveByName("cone-geodesic"));
    for (int i = 0; i <= 16; ++i) {
        const CoordState c = geo.coords(geo.length() * i / 16);
        const double psi = 0.5 * c.u;
        const double x = c.v * std::cos(psi);
        const double y = c.v * std::sin(psi);
        // The unrolled line is x = 1.5 by construction.
        CHECK(x == doctest::Approx(1.5).epsilon(1e-9));
        CHECK(c.v >= 0.1);
        (void)y;
    }
    // Geodesics have vanishing geodesic curvature.
    for (double frac : {0.1, 0.45, 0.8})
        CHECK(std::fabs(geo.geodesicCurvature(frac * geo.length())) <= 1e-9);
}

TEST_CASE("default probe curves work on every pair") {
    for (const auto& p : builtinPairs()) {
        CAPTURE(p.name);
        const CurveDef def = defaultProbeCurve(p);
        CHECK(def.surface == p.first);
        const CurveOnSurface curve = CurveOnSurface::build(def);
        CHECK(curve.length() > 0.0);
        // Frenet data must exist everywhere on the probe (both members are
        // exercised later by the harness; here the first member).
        for (int i = 0; i <= 12; ++i) CHECK_NOTHROW(curve.frenet(curve.length() * i / 12));
    }
}

TEST_CASE("self pairs share the patch") {
    const IsometricPair self = makeSelfPair(surfaceByName("torus"));
    CHECK(self.first == self.second);
    CHECK(self.name == "torus-self");
    CHECK(validatePair(self, 50, 1) == 0.0);
}
