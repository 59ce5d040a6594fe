#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "isocurve/curve.hpp"
#include "isocurve/errors.hpp"
#include "isocurve/surface.hpp"

namespace isocurve {

enum class CurveClass {
    kRectifying, // gamma . n == 0 along the curve
    kOsculating, // gamma . b == 0
    kNormal,     // gamma . t == 0
    kGeneric,
    kDegenerate, // Frenet frame undefined on > 10% of samples
};

inline const char* toString(CurveClass c) {
    switch (c) {
    case CurveClass::kRectifying: return "rectifying";
    case CurveClass::kOsculating: return "osculating";
    case CurveClass::kNormal: return "normal";
    case CurveClass::kGeneric: return "generic";
    case CurveClass::kDegenerate: return "degenerate";
    }
    return "?";
}

/// Tangent direction field T = a phi_u + b phi_v with constant coefficients.
struct TangentDirection {
    double a = 1.0;
    double b = 0.0;
};

/// Position vector dotted with the Frenet frame.
struct FrenetComponents {
    double dotT = 0.0;
    double dotN = 0.0;
    double dotB = 0.0;
};

/// Position vector dotted with the surface frame attached to T:
///   compT    = gamma . T
///   compN    = gamma . N                      (N the unit surface normal)
///   compTN   = gamma . (T x N)
///   paperTN  = (Fa + Gb)(gamma . phi_u) - (Ea + Fb)(gamma . phi_v)
/// paperTN equals areaElement * compTN identically.
struct SurfaceFrameComponents {
    double compT = 0.0;
    double compN = 0.0;
    double compTN = 0.0;
    double paperTN = 0.0;
};

struct Classification {
    CurveClass kind = CurveClass::kGeneric;
    double maxDotN = 0.0; // residual against the rectifying condition
    double maxDotB = 0.0; // ... osculating
    double maxDotT = 0.0; // ... normal
    bool asymptotic = false; // max |kappa_n| <= tol
    bool geodesic = false;   // max |kappa_g| <= tol
    double maxKappaN = 0.0;
    double maxKappaG = 0.0;
    double degenerateFraction = 0.0;
    int grid = 0;
    double tol = 0.0;
};

inline FrenetComponents frenetComponents(const CurveOnSurface& curve, double s) {
    const CurveState st = curve.state(s);
    const FrenetData fd = curve.frenet(s);
    return {dot(st.gamma, fd.t), dot(st.gamma, fd.n), dot(st.gamma, fd.b)};
}

inline SurfaceFrameComponents surfaceFrameComponents(const CurveOnSurface& curve, double s,
                                                     TangentDirection dir) {
    const CoordState c = curve.coords(s);
    const SurfaceJet j = curve.host().jet(c.u, c.v);
    const FormBundle f = makeForms(j);
    const Vec3 gamma = j.p;
    const Vec3 T = j.pu * dir.a + j.pv * dir.b;
    SurfaceFrameComponents out;
    out.compT = dot(gamma, T);
    out.compN = dot(gamma, f.normal);
    out.compTN = dot(gamma, cross(T, f.normal));
    out.paperTN = (f.F * dir.a + f.G * dir.b) * dot(gamma, j.pu) -
                  (f.E * dir.a + f.F * dir.b) * dot(gamma, j.pv);
    return out;
}

/// Classifies by the vanishing Frenet component of the position vector on a
/// uniform arc-length grid. Priority when several residuals pass:
/// rectifying, then osculating, then normal. Samples where the Frenet frame
/// is undefined are skipped; if more than 10% are skipped the curve is
/// reported degenerate.
inline Classification classify(const CurveOnSurface& curve, int grid = 257,
                               double tol = 1e-6) {
    if (grid < 2) throw UsageError("classification grid needs at least 2 samples");
    Classification r;
    r.grid = grid;
    r.tol = tol;
    const double L = curve.length();
    int degenerate = 0;
    for (int i = 0; i < grid; ++i) {
        const double s = L * i / (grid - 1);
        const CoordState c = curve.coords(s);
        const SurfaceJet j = curve.host().jet(c.u, c.v);
        const FormBundle f = makeForms(j);
        const CurveState st = embedOn(j, c);
        r.maxKappaN = std::max(r.maxKappaN, std::fabs(normalCurvatureOf(f, c.u1, c.v1)));
        r.maxKappaG =
            std::max(r.maxKappaG, std::fabs(dot(st.gamma2, cross(st.gamma1, f.normal))));
        try {
            const FrenetData fd = frenetFrom(st);
            r.maxDotT = std::max(r.maxDotT, std::fabs(dot(st.gamma, fd.t)));
            r.maxDotN = std::max(r.maxDotN, std::fabs(dot(st.gamma, fd.n)));
            r.maxDotB = std::max(r.maxDotB, std::fabs(dot(st.gamma, fd.b)));
        } catch (const DegenerateCurvatureError&) {
            ++degenerate;
        }
    }
    r.degenerateFraction = static_cast<double>(degenerate) / grid;
    r.asymptotic = r.maxKappaN <= tol;
    r.geodesic = r.maxKappaG <= tol;
    if (r.degenerateFraction > 0.10)
        r.kind = CurveClass::kDegenerate;
    else if (r.maxDotN <= tol)
        r.kind = CurveClass::kRectifying;
    else if (r.maxDotB <= tol)
        r.kind = CurveClass::kOsculating;
    else if (r.maxDotT <= tol)
        r.kind = CurveClass::kNormal;
    else
        r.kind = CurveClass::kGeneric;
    return r;
}

} // namespace isocurve
