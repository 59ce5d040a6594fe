#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "isocurve/curve.hpp"
#include "isocurve/errors.hpp"
#include "isocurve/fmt.hpp"
#include "isocurve/frames.hpp"
#include "isocurve/rng.hpp"
#include "isocurve/surface.hpp"

namespace isocurve {

/// Two patches sharing a chart on which E, F, G agree pointwise.
struct IsometricPair {
    std::string name;
    SurfacePtr first;
    SurfacePtr second;
    DomainRect sharedDomain;
};

/// Catalog curve with its known classification.
struct NamedCurve {
    std::string name;
    std::string surface;
    std::string uSrc, vSrc;
    double t0 = 0.0, t1 = 1.0;
    CurveClass expected = CurveClass::kGeneric;
};

inline SurfacePtr makeSurface(std::string name, const std::string& x, const std::string& y,
                              const std::string& z, DomainRect domain) {
    return std::make_shared<const SurfacePatch>(
        SurfacePatch::fromExpressions(std::move(name), x, y, z, domain));
}

/// Member of the helicoid-catenoid associate family; theta = 0 is a
/// helicoid, theta = pi/2 the catenoid. E = G = cosh(v)^2, F = 0 for all
/// theta, so any two members are isometric on the shared chart.
inline SurfacePtr makeAssociate(double theta, std::string name = {}) {
    const std::string c = formatDouble(std::cos(theta));
    const std::string s = formatDouble(std::sin(theta));
    if (name.empty()) name = "associate-" + formatDouble(theta);
    return makeSurface(std::move(name),
                       c + "*sinh(v)*sin(u)+" + s + "*cosh(v)*cos(u)",
                       "-" + c + "*sinh(v)*cos(u)+" + s + "*cosh(v)*sin(u)",
                       c + "*u+" + s + "*v", {-2.5, 2.5, -2.5, 2.5});
}

/// Built-in surfaces. The sphere domain deliberately includes the poles
/// (degenerate parametrization points) so degeneracy handling is reachable.
inline const std::vector<SurfacePtr>& builtinSurfaces() {
    static const std::vector<SurfacePtr> surfaces = [] {
        std::vector<SurfacePtr> v;
        v.push_back(makeSurface("plane", "u", "v", "0", {-10, 10, -10, 10}));
        v.push_back(makeSurface("cylinder", "cos(u)", "sin(u)", "v", {-7, 7, -10, 10}));
        v.push_back(makeSurface("sphere", "cos(v)*cos(u)", "cos(v)*sin(u)", "sin(v)",
                                {-7, 7, -1.6, 1.6}));
        // Half-angle pi/6: sin = 0.5, cos = sqrt(3)/2.
        v.push_back(makeSurface("cone", "0.5*v*cos(u)", "0.5*v*sin(u)",
                                "0.8660254037844386*v", {-7, 7, 0.1, 5}));
        v.push_back(makeSurface("helicoid", "sinh(v)*cos(u)", "sinh(v)*sin(u)", "u",
                                {-2.5, 2.5, -2.5, 2.5}));
        v.push_back(makeSurface("catenoid", "cosh(v)*cos(u)", "cosh(v)*sin(u)", "v",
                                {-2.5, 2.5, -2.5, 2.5}));
        v.push_back(makeAssociate(std::numbers::pi / 4, "associate"));
        v.push_back(makeSurface("torus", "(2+cos(v))*cos(u)", "(2+cos(v))*sin(u)", "sin(v)",
                                {-7, 7, -7, 7}));
        return v;
    }();
    return surfaces;
}

inline SurfacePtr surfaceByName(const std::string& name) {
    for (const auto& s : builtinSurfaces())
        if (s->name() == name) return s;
    std::string known;
    for (const auto& s : builtinSurfaces()) {
        if (!known.empty()) known += ", ";
        known += s->name();
    }
    throw UsageError("unknown surface '" + name + "' (known: " + known + ")");
}

inline IsometricPair makeSelfPair(SurfacePtr s) {
    IsometricPair p;
    p.name = s->name() + "-self";
    p.sharedDomain = s->domain();
    p.first = s;
    p.second = std::move(s);
    return p;
}

/// theta applies to the "associate" pair only: its members are the family
/// surfaces at 0 and theta.
inline IsometricPair pairByName(const std::string& name,
                                double theta = std::numbers::pi / 4) {
    if (name == "plane-cylinder")
        return {"plane-cylinder", surfaceByName("plane"), surfaceByName("cylinder"),
                {-7, 7, -10, 10}};
    if (name == "helicoid-catenoid")
        return {"helicoid-catenoid", surfaceByName("helicoid"), surfaceByName("catenoid"),
                {-2.5, 2.5, -2.5, 2.5}};
    if (name == "associate")
        return {"associate", makeAssociate(0.0), makeAssociate(theta),
                {-2.5, 2.5, -2.5, 2.5}};
    throw UsageError("unknown pair '" + name +
                     "' (known: plane-cylinder, helicoid-catenoid, associate)");
}

inline std::vector<IsometricPair> builtinPairs() {
    return {pairByName("plane-cylinder"), pairByName("helicoid-catenoid"),
            pairByName("associate")};
}

/// Curves with a known classification. plane-line (straight, so the Frenet
/// frame never exists) lives only in the full registry.
inline const std::vector<NamedCurve>& knownCurves() {
    static const std::vector<NamedCurve> curves = {
        {"great-circle", "sphere", "t", "0", 0.0, 6.283185307179586,
         CurveClass::kOsculating},
        {"sphere-latitude", "sphere", "t", "0.6", 0.0, 6.283185307179586,
         CurveClass::kNormal},
        {"cone-geodesic", "cone", "2*t", "1.5/cos(t)", -0.9, 0.9,
         CurveClass::kRectifying},
        {"cylinder-helix", "cylinder", "0.8*t", "0.6*t", 0.0, 6.0, CurveClass::kGeneric},
    };
    return curves;
}

inline const std::vector<NamedCurve>& curveRegistry() {
    static const std::vector<NamedCurve> curves = [] {
        std::vector<NamedCurve> v = knownCurves();
        v.push_back({"plane-line", "plane", "t", "1", 0.0, 5.0, CurveClass::kDegenerate});
        return v;
    }();
    return curves;
}

inline const NamedCurve& curveByName(const std::string& name) {
    for (const auto& c : curveRegistry())
        if (c.name == name) return c;
    std::string known;
    for (const auto& c : curveRegistry()) {
        if (!known.empty()) known += ", ";
        known += c.name;
    }
    throw UsageError("unknown curve '" + name + "' (known: " + known + ")");
}

inline CurveOnSurface buildNamedCurve(const NamedCurve& n, int tableSegments = 400,
                                      double quadTol = kDefaultQuadTol) {
    return CurveOnSurface::build(
        CurveDef::fromExpressions(n.name, surfaceByName(n.surface), n.uSrc, n.vSrc, n.t0,
                                  n.t1),
        tableSegments, quadTol);
}

/// Closed coordinate circle centered in the shared domain of a pair, hosted
/// on the first member. Curved enough on both members for Frenet data.
inline CurveDef defaultProbeCurve(const IsometricPair& p) {
    const DomainRect& d = p.sharedDomain;
    const double uc = 0.5 * (d.u0 + d.u1);
    const double vc = 0.5 * (d.v0 + d.v1);
    const double r = std::min(1.0, 0.35 * 0.5 * std::min(d.uSpan(), d.vSpan()));
    return CurveDef::fromExpressions(
        "probe-" + p.name, p.first,
        formatDouble(uc) + "+" + formatDouble(r) + "*cos(t)",
        formatDouble(vc) + "+" + formatDouble(r) + "*sin(t)", 0.0, 6.283185307179586);
}

inline double pairFormMismatch(const IsometricPair& p, double u, double v) {
    const FormBundle a = p.first->forms(u, v);
    const FormBundle b = p.second->forms(u, v);
    return std::max({std::fabs(a.E - b.E), std::fabs(a.F - b.F), std::fabs(a.G - b.G)});
}

/// Worst E/F/G mismatch over `samples` points drawn uniformly from the
/// shared domain.
inline double validatePair(const IsometricPair& p, int samples, std::uint64_t seed) {
    Lcg64 rng(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double u = rng.uniform(p.sharedDomain.u0, p.sharedDomain.u1);
        const double v = rng.uniform(p.sharedDomain.v0, p.sharedDomain.v1);
        worst = std::max(worst, pairFormMismatch(p, u, v));
    }
    return worst;
}

} // namespace isocurve
