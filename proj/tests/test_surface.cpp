#include <doctest.h>

#include <cmath>
#include <vector>

#include "isocurve/catalog.hpp"
#include "isocurve/rng.hpp"
#include "isocurve/surface.hpp"

using namespace isocurve;

namespace {

// Interior point clear of the sphere poles and the cone apex.
void safeInteriorPoint(const SurfacePatch& s, Lcg64& rng, double& u, double& v) {
    const DomainRect& d = s.domain();
    u = d.u0 + d.uSpan() * (0.1 + 0.8 * rng.nextDouble());
    v = d.v0 + d.vSpan() * (0.1 + 0.8 * rng.nextDouble());
}

} // namespace

TEST_CASE("surface jets: hand-differentiated points") {
    SUBCASE("plane is linear") {
        const SurfaceJet j = surfaceByName("plane")->jet(3.7, -1.2);
        CHECK(j.p.x == 3.7);
        CHECK(j.p.y == -1.2);
        CHECK(j.p.z == 0.0);
        CHECK(norm(j.pu - Vec3{1, 0, 0}) == 0.0);
        CHECK(norm(j.pv - Vec3{0, 1, 0}) == 0.0);
        CHECK(norm(j.puu) == 0.0);
        CHECK(norm(j.puv) == 0.0);
        CHECK(norm(j.pvv) == 0.0);
    }
    SUBCASE("cylinder at u=0") {
        const SurfaceJet j = surfaceByName("cylinder")->jet(0.0, 0.3);
        CHECK(norm(j.pu - Vec3{0, 1, 0}) < 1e-15);
        CHECK(norm(j.puu - Vec3{-1, 0, 0}) < 1e-15);
        CHECK(norm(j.pv - Vec3{0, 0, 1}) < 1e-15);
    }
    SUBCASE("sphere at (0,0)") {
        const SurfaceJet j = surfaceByName("sphere")->jet(0.0, 0.0);
        CHECK(norm(j.p - Vec3{1, 0, 0}) < 1e-15);
        CHECK(norm(j.pu - Vec3{0, 1, 0}) < 1e-15);
        CHECK(norm(j.pv - Vec3{0, 0, 1}) < 1e-15);
    }
}

TEST_CASE("fundamental forms: closed-form fixtures") {
    SUBCASE("plane") {
        const FormBundle f = surfaceByName("plane")->forms(2.0, -3.0);
        CHECK(f.E == 1.0);
        CHECK(f.F == 0.0);
        CHECK(f.G == 1.0);
        for (double d : {f.Eu, f.Ev, f.Fu, f.Fv, f.Gu, f.Gv}) CHECK(d == 0.0);
        CHECK(f.L == 0.0);
        CHECK(f.M == 0.0);
        CHECK(f.Ncoef == 0.0);
        CHECK(f.areaElement == 1.0);
        CHECK(norm(f.normal - Vec3{0, 0, 1}) == 0.0);
    }
    SUBCASE("cylinder") {
        const double u = 1.1, v = -2.4;
        const FormBundle f = surfaceByName("cylinder")->forms(u, v);
        CHECK(f.E == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::fabs(f.F) < 1e-15);
        CHECK(f.G == 1.0);
        CHECK(f.L == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(std::fabs(f.M) < 1e-15);
        CHECK(std::fabs(f.Ncoef) < 1e-15);
        // Outward normal.
        CHECK(norm(f.normal - Vec3{std::cos(u), std::sin(u), 0.0}) < 1e-14);
    }
    SUBCASE("sphere at (0.2, 0.6)") {
        const double u = 0.2, v = 0.6;
        const FormBundle f = surfaceByName("sphere")->forms(u, v);
        const double c = std::cos(v);
        CHECK(f.E == doctest::Approx(c * c).epsilon(1e-14));
        CHECK(std::fabs(f.F) < 1e-15);
        CHECK(f.G == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(f.Ev == doctest::Approx(-std::sin(2 * v)).epsilon(1e-14));
        CHECK(std::fabs(f.Eu) < 1e-15);
        CHECK(f.L == doctest::Approx(-c * c).epsilon(1e-14));
        CHECK(std::fabs(f.M) < 1e-14);
        CHECK(f.Ncoef == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(f.areaElement == doctest::Approx(c).epsilon(1e-14));
        // Frozen values guard against silent evaluation drift.
        CHECK(f.E == doctest::Approx(0.68117887723833692).epsilon(1e-15));
        CHECK(f.areaElement == doctest::Approx(0.82533561490967833).epsilon(1e-15));
        // Outward normal: radially out at gamma.
        const Vec3 radial{c * std::cos(u), c * std::sin(u), std::sin(v)};
        CHECK(norm(f.normal - radial) < 1e-14);
    }
    SUBCASE("catenoid") {
        const double u = -0.7, v = 0.9;
        const FormBundle f = surfaceByName("catenoid")->forms(u, v);
        const double ch = std::cosh(v);
        CHECK(f.E == doctest::Approx(ch * ch).epsilon(1e-14));
        CHECK(std::fabs(f.F) < 1e-14);
        CHECK(f.G == doctest::Approx(ch * ch).epsilon(1e-14));
        CHECK(f.L == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(std::fabs(f.M) < 1e-13);
        CHECK(f.Ncoef == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("helicoid") {
        const double u = 0.4, v = -1.1;
        const FormBundle f = surfaceByName("helicoid")->forms(u, v);
        const double ch = std::cosh(v);
        CHECK(f.E == doctest::Approx(ch * ch).epsilon(1e-14));
        CHECK(std::fabs(f.F) < 1e-14);
        CHECK(f.G == doctest::Approx(ch * ch).epsilon(1e-14));
        CHECK(std::fabs(f.L) < 1e-13);
        CHECK(f.M == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::fabs(f.Ncoef) < 1e-13);
    }
    SUBCASE("torus") {
        const double u = 2.2, v = -0.8;
        const FormBundle f = surfaceByName("torus")->forms(u, v);
        const double w = 2.0 + std::cos(v);
        CHECK(f.E == doctest::Approx(w * w).epsilon(1e-14));
        CHECK(std::fabs(f.F) < 1e-14);
        CHECK(f.G == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(f.L == doctest::Approx(-w * std::cos(v)).epsilon(1e-13));
        CHECK(std::fabs(f.M) < 1e-13);
        CHECK(f.Ncoef == doctest::Approx(-1.0).epsilon(1e-13));
        CHECK(f.areaElement == doctest::Approx(w).epsilon(1e-14));
    }
    SUBCASE("cone") {
        const double u = -1.3, v = 2.1;
        const FormBundle f = surfaceByName("cone")->forms(u, v);
        CHECK(f.E == doctest::Approx(0.25 * v * v).epsilon(1e-14));
        CHECK(std::fabs(f.F) < 1e-14);
        CHECK(f.G == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(f.L == doctest::Approx(-std::sqrt(3.0) / 4.0 * v).epsilon(1e-13));
        CHECK(std::fabs(f.M) < 1e-13);
        CHECK(std::fabs(f.Ncoef) < 1e-13);
        CHECK(f.areaElement == doctest::Approx(0.5 * v).epsilon(1e-14));
        // Apex at the origin: |phi(u,v)| = v.
        const SurfaceJet j = surfaceByName("cone")->jet(u, v);
        CHECK(norm(j.p) == doctest::Approx(v).epsilon(1e-14));
    }
}

TEST_CASE("form bundle invariants on random catalog points") {
    Lcg64 rng(11);
    for (const auto& s : builtinSurfaces()) {
        for (int i = 0; i < 40; ++i) {
            double u, v;
            safeInteriorPoint(*s, rng, u, v);
            CAPTURE(s->name());
            CAPTURE(u);
            CAPTURE(v);
            const SurfaceJet j = s->jet(u, v);
            const FormBundle f = makeForms(j);
            CHECK(std::fabs(norm(f.normal) - 1.0) <= 1e-12);
            CHECK(std::fabs(dot(f.normal, j.pu)) <= 1e-12 * std::max(1.0, norm(j.pu)));
            CHECK(std::fabs(dot(f.normal, j.pv)) <= 1e-12 * std::max(1.0, norm(j.pv)));
            const double disc = f.E * f.G - f.F * f.F;
            CHECK(std::fabs(f.areaElement * f.areaElement - disc) <= 1e-12 * std::max(1.0, disc));
            CHECK(f.L == doctest::Approx(dot(j.puu, f.normal)).epsilon(1e-14));
            CHECK(f.M == doctest::Approx(dot(j.puv, f.normal)).epsilon(1e-14));
            CHECK(f.Ncoef == doctest::Approx(dot(j.pvv, f.normal)).epsilon(1e-14));
        }
    }
}

TEST_CASE("metric identities vanish on the catalog") {
    Lcg64 rng(12);
    for (const auto& s : builtinSurfaces()) {
        double worst = 0.0;
        for (int i = 0; i < 60; ++i) {
            double u, v;
            safeInteriorPoint(*s, rng, u, v);
            for (double r : s->metricIdentityResiduals(u, v)) worst = std::max(worst, r);
        }
        CAPTURE(s->name());
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("finite-difference oracle for E, F, G") {
    Lcg64 rng(13);
    const double h = 1e-5;
    for (const auto& s : builtinSurfaces()) {
        for (int i = 0; i < 15; ++i) {
            double u, v;
            safeInteriorPoint(*s, rng, u, v);
            const auto pos = [&](double uu, double vv) {
                const SurfaceJet j = s->jet(uu, vv);
                return j.p;
            };
            const Vec3 puFd = (pos(u + h, v) - pos(u - h, v)) * (0.5 / h);
            const Vec3 pvFd = (pos(u, v + h) - pos(u, v - h)) * (0.5 / h);
            const FormBundle f = s->forms(u, v);
            CAPTURE(s->name());
            CHECK(std::fabs(dot(puFd, puFd) - f.E) <= 1e-6 * std::max(1.0, f.E));
            CHECK(std::fabs(dot(puFd, pvFd) - f.F) <= 1e-6 * std::max(1.0, std::fabs(f.F)));
            CHECK(std::fabs(dot(pvFd, pvFd) - f.G) <= 1e-6 * std::max(1.0, f.G));
        }
    }
}

TEST_CASE("degeneracy and domain errors") {
    const SurfacePtr sphere = surfaceByName("sphere");
    // Near-pole point: area element ~ 5e-12, below the regularity floor.
    CHECK_THROWS_AS(sphere->forms(0.0, 1.57079632679), DegenerateSurfaceError);
    CHECK_THROWS_AS(sphere->forms(8.0, 0.0), OutOfDomainError);
    CHECK_THROWS_AS(sphere->jet(0.0, -2.0), OutOfDomainError);
    // Rank-deficient patch: pv == 0 everywhere.
    const SurfacePtr bad = makeSurface("bad", "u", "2*u", "0", {-1, 1, -1, 1});
    CHECK_THROWS_AS(bad->forms(0.0, 0.0), DegenerateSurfaceError);
    // The regularity floor is configurable through makeForms.
    const SurfaceJet nearPole = sphere->jet(0.0, 1.5707);
    CHECK_NOTHROW(makeForms(nearPole));
    CHECK_THROWS_AS(makeForms(nearPole, 1e-3), DegenerateSurfaceError);
}

TEST_CASE("expression errors surface as eval errors with locations") {
    const SurfacePtr s = makeSurface("logpatch", "log(u)", "v", "u+v", {-1, 2, -1, 1});
    CHECK_THROWS_AS(s->jet(-0.5, 0.0), EvalError);
    CHECK_NOTHROW(s->jet(0.5, 0.0));
}
