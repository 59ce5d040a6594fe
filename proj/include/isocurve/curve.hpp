#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "isocurve/errors.hpp"
#include "isocurve/expr.hpp"
#include "isocurve/fmt.hpp"
#include "isocurve/surface.hpp"
#include "isocurve/vec3.hpp"

namespace isocurve {

inline constexpr double kKappaMin = 1e-6;
inline constexpr double kSpeedMin = 1e-10;
inline constexpr double kDefaultQuadTol = 1e-11;
inline constexpr double kArcInversionTol = 1e-10;

namespace detail {

template <class F>
double adaptiveSimpsonRec(const F& f, double a, double fa, double b, double fb, double m,
                          double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptiveSimpsonRec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptiveSimpsonRec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace detail

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
template <class F>
double adaptiveSimpson(const F& f, double a, double b, double tol, int maxDepth = 48) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptiveSimpsonRec(f, a, fa, b, fb, m, fm, whole, tol, maxDepth);
}

/// Curve in surface coordinates: t -> (u(t), v(t)), t in [t0, t1].
struct CurveDef {
    std::string name;
    SurfacePtr surface;
    ExprAst u, v;
    double t0 = 0.0, t1 = 1.0;

    static CurveDef fromExpressions(std::string name, SurfacePtr surface,
                                    const std::string& uSrc, const std::string& vSrc,
                                    double t0, double t1) {
        if (!surface) throw UsageError("curve requires a host surface");
        if (!(t1 > t0)) throw UsageError("curve domain must satisfy t0 < t1");
        CurveDef d;
        d.name = std::move(name);
        d.surface = std::move(surface);
        d.u = parseExpression(uSrc, {"t"});
        d.v = parseExpression(vSrc, {"t"});
        d.t0 = t0;
        d.t1 = t1;
        return d;
    }
};

/// Coordinate kinematics at arc length s: u, v and their first and second
/// derivatives with respect to s. These depend only on the coordinate
/// functions and on E, F, G, so they are shared by every surface with the
/// same first fundamental form on the chart.
struct CoordState {
    double s = 0.0;
    double t = 0.0; // original curve parameter
    double u = 0.0, v = 0.0;
    double u1 = 0.0, v1 = 0.0; // du/ds, dv/ds
    double u2 = 0.0, v2 = 0.0; // d2u/ds2, d2v/ds2
};

/// CoordState pushed through a particular patch: gamma(s) and its first
/// two s-derivatives in R^3.
struct CurveState {
    double s = 0.0;
    double u = 0.0, v = 0.0;
    double u1 = 0.0, v1 = 0.0;
    double u2 = 0.0, v2 = 0.0;
    Vec3 gamma, gamma1, gamma2;
};

struct FrenetData {
    Vec3 t, n, b;
    double kappa = 0.0;
    /// |kappa b - coordinate expansion of gamma' x gamma''|; filled by
    /// CurveOnSurface::frenet, zero when built directly from a state.
    double expansionResidual = 0.0;
};

inline CurveState embedOn(const SurfaceJet& j, const CoordState& c) {
    CurveState st;
    st.s = c.s;
    st.u = c.u;
    st.v = c.v;
    st.u1 = c.u1;
    st.v1 = c.v1;
    st.u2 = c.u2;
    st.v2 = c.v2;
    st.gamma = j.p;
    st.gamma1 = j.pu * c.u1 + j.pv * c.v1;
    st.gamma2 = j.pu * c.u2 + j.pv * c.v2 + j.puu * (c.u1 * c.u1) +
                j.puv * (2.0 * c.u1 * c.v1) + j.pvv * (c.v1 * c.v1);
    return st;
}

/// Frenet frame of a unit-speed state. Throws DegenerateCurvatureError
/// below kappaMin.
inline FrenetData frenetFrom(const CurveState& st, double kappaMin = kKappaMin) {
    FrenetData fd;
    fd.kappa = norm(st.gamma2);
    if (!(fd.kappa >= kappaMin))
        throw DegenerateCurvatureError("curvature " + formatDouble(fd.kappa) +
                                           " below kappa_min at s = " + formatDouble(st.s),
                                       fd.kappa);
    fd.t = st.gamma1;
    fd.n = st.gamma2 / fd.kappa;
    fd.b = cross(fd.t, fd.n);
    return fd;
}

inline double normalCurvatureOf(const FormBundle& f, double u1, double v1) {
    return f.L * u1 * u1 + 2.0 * f.M * u1 * v1 + f.Ncoef * v1 * v1;
}

/// Coordinate-basis expansion of gamma' x gamma'' (which equals kappa b):
/// the (u'v'' - v'u'') multiple of phi_u x phi_v plus the cubic terms in
/// the second-order patch derivatives.
inline Vec3 gammaCrossExpansion(const SurfaceJet& j, double u1, double v1, double u2,
                                double v2) {
    return cross(j.pu, j.pv) * (u1 * v2 - v1 * u2) + cross(j.pu, j.puu) * (u1 * u1 * u1) +
           cross(j.pu, j.puv) * (2.0 * u1 * u1 * v1) + cross(j.pu, j.pvv) * (u1 * v1 * v1) +
           cross(j.pv, j.puu) * (u1 * u1 * v1) + cross(j.pv, j.puv) * (2.0 * u1 * v1 * v1) +
           cross(j.pv, j.pvv) * (v1 * v1 * v1);
}

/// A CurveDef equipped with an arc-length reparametrization. Arc length is
/// accumulated with adaptive Simpson over a knot table; s -> t inversion
/// uses a cubic Hermite seed refined by bisection-safeguarded Newton.
class CurveOnSurface {
public:
    static CurveOnSurface build(CurveDef def, int tableSegments = 400,
                                double quadTol = kDefaultQuadTol) {
        if (tableSegments < 2) throw UsageError("arc table needs at least 2 segments");
        CurveOnSurface c;
        c.def_ = std::move(def);
        c.quadTol_ = quadTol;
        const int n = tableSegments;
        c.tKnots_.resize(static_cast<std::size_t>(n) + 1);
        c.sKnots_.resize(static_cast<std::size_t>(n) + 1);
        c.invSpeedKnots_.resize(static_cast<std::size_t>(n) + 1);
        const double t0 = c.def_.t0;
        const double dt = (c.def_.t1 - c.def_.t0) / n;
        for (int i = 0; i <= n; ++i) {
            const double t = i == n ? c.def_.t1 : t0 + i * dt;
            c.tKnots_[static_cast<std::size_t>(i)] = t;
            c.invSpeedKnots_[static_cast<std::size_t>(i)] = 1.0 / c.speed(t);
        }
        c.sKnots_[0] = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double seg = adaptiveSimpson([&c](double t) { return c.speed(t); },
                                               c.tKnots_[static_cast<std::size_t>(i - 1)],
                                               c.tKnots_[static_cast<std::size_t>(i)],
                                               quadTol);
            const double prev = c.sKnots_[static_cast<std::size_t>(i - 1)];
            c.sKnots_[static_cast<std::size_t>(i)] = prev + seg;
            if (!(c.sKnots_[static_cast<std::size_t>(i)] > prev))
                throw InternalCheckError("arc-length table is not strictly increasing");
        }
        return c;
    }

    const CurveDef& def() const { return def_; }
    const SurfacePatch& host() const { return *def_.surface; }
    const SurfacePtr& hostPtr() const { return def_.surface; }
    double length() const { return sKnots_.back(); }

    /// Speed ds/dt of the coordinate curve, from the first fundamental form.
    double speed(double t) const {
        const Jet<1> uj = def_.u.jet1(t);
        const Jet<1> vj = def_.v.jet1(t);
        const FormBundle f = host().forms(uj.val, vj.val);
        const double s2 = f.E * uj.d[0] * uj.d[0] + 2.0 * f.F * uj.d[0] * vj.d[0] +
                          f.G * vj.d[0] * vj.d[0];
        if (!(s2 > kSpeedMin * kSpeedMin))
            throw NonRegularCurveError("curve '" + def_.name + "' is not regular at t = " +
                                       formatDouble(t) + " (speed " +
                                       formatDouble(std::sqrt(std::max(s2, 0.0))) + ")");
        return std::sqrt(s2);
    }

    double tFromS(double s) const {
        const double L = length();
        const double slack = 1e-9 * std::max(1.0, L);
        if (s < -slack || s > L + slack)
            throw OutOfDomainError("arc length " + formatDouble(s) +
                                   " outside [0, " + formatDouble(L) + "]");
        s = std::clamp(s, 0.0, L);
        const auto it = std::upper_bound(sKnots_.begin(), sKnots_.end(), s);
        std::size_t hi = static_cast<std::size_t>(it - sKnots_.begin());
        hi = std::min(std::max<std::size_t>(hi, 1), sKnots_.size() - 1);
        const std::size_t lo = hi - 1;
        const double sl = sKnots_[lo];
        const double sh = sKnots_[hi];
        const double tl = tKnots_[lo];
        const double th = tKnots_[hi];
        const double ds = sh - sl;
        // Cubic Hermite seed for t(s) on the bracketing segment.
        const double x = (s - sl) / ds;
        const double x2 = x * x;
        const double x3 = x2 * x;
        const double m0 = invSpeedKnots_[lo] * ds;
        const double m1 = invSpeedKnots_[hi] * ds;
        double t = tl * (2.0 * x3 - 3.0 * x2 + 1.0) + th * (3.0 * x2 - 2.0 * x3) +
                   m0 * (x3 - 2.0 * x2 + x) + m1 * (x3 - x2);
        double loT = tl;
        double hiT = th;
        t = std::clamp(t, loT, hiT);
        for (int iter = 0; iter < 80; ++iter) {
            const double g =
                sl + adaptiveSimpson([this](double tt) { return speed(tt); }, tl, t, quadTol_) -
                s;
            if (std::fabs(g) <= kArcInversionTol) return t;
            if (g > 0.0)
                hiT = t;
            else
                loT = t;
            double tn = t - g / speed(t);
            if (!(tn > loT && tn < hiT)) tn = 0.5 * (loT + hiT);
            if (tn == t) return t; // machine-precision stall; g is already tiny
            t = tn;
        }
        throw InternalCheckError("arc-length inversion did not converge");
    }

    CoordState coords(double s) const {
        const double t = tFromS(s);
        const Jet<1> uj = def_.u.jet1(t);
        const Jet<1> vj = def_.v.jet1(t);
        const FormBundle f = host().forms(uj.val, vj.val);
        const double du = uj.d[0];
        const double dv = vj.d[0];
        const double ddu = uj.dd[0];
        const double ddv = vj.dd[0];
        const double sig2 = f.E * du * du + 2.0 * f.F * du * dv + f.G * dv * dv;
        if (!(sig2 > kSpeedMin * kSpeedMin))
            throw NonRegularCurveError("curve '" + def_.name +
                                       "' is not regular at t = " + formatDouble(t));
        const double sig = std::sqrt(sig2);
        const double dE = f.Eu * du + f.Ev * dv;
        const double dF = f.Fu * du + f.Fv * dv;
        const double dG = f.Gu * du + f.Gv * dv;
        const double dsig2 = dE * du * du + 2.0 * f.E * du * ddu + 2.0 * dF * du * dv +
                             2.0 * f.F * (ddu * dv + du * ddv) + dG * dv * dv +
                             2.0 * f.G * dv * ddv;
        const double dsig = 0.5 * dsig2 / sig;
        CoordState c;
        c.s = s;
        c.t = t;
        c.u = uj.val;
        c.v = vj.val;
        c.u1 = du / sig;
        c.v1 = dv / sig;
        c.u2 = ddu / sig2 - du * dsig / (sig2 * sig);
        c.v2 = ddv / sig2 - dv * dsig / (sig2 * sig);
        return c;
    }

    CurveState state(double s) const {
        const CoordState c = coords(s);
        return embedOn(host().jet(c.u, c.v), c);
    }

    /// Frenet frame at s, cross-checked against the coordinate expansion of
    /// gamma' x gamma'' in the patch basis.
    FrenetData frenet(double s) const {
        const CoordState c = coords(s);
        const SurfaceJet j = host().jet(c.u, c.v);
        const CurveState st = embedOn(j, c);
        FrenetData fd = frenetFrom(st);
        const Vec3 expansion = gammaCrossExpansion(j, c.u1, c.v1, c.u2, c.v2);
        fd.expansionResidual = norm(fd.b * fd.kappa - expansion);
        if (fd.expansionResidual > 1e-8)
            throw InternalCheckError("binormal expansion cross-check failed: residual " +
                                     formatDouble(fd.expansionResidual) + " at s = " +
                                     formatDouble(s));
        return fd;
    }

    /// kappa_n via the second fundamental form, cross-checked against
    /// gamma'' . N.
    double normalCurvature(double s) const {
        const CoordState c = coords(s);
        const SurfaceJet j = host().jet(c.u, c.v);
        const FormBundle f = makeForms(j);
        const double viaForms = normalCurvatureOf(f, c.u1, c.v1);
        const double viaAccel = dot(embedOn(j, c).gamma2, f.normal);
        if (std::fabs(viaForms - viaAccel) > 1e-9)
            throw InternalCheckError("normal curvature cross-check failed: |" +
                                     formatDouble(viaForms) + " - " +
                                     formatDouble(viaAccel) + "| at s = " + formatDouble(s));
        return viaForms;
    }

    /// kappa_g = gamma'' . (gamma' x N).
    double geodesicCurvature(double s) const {
        const CoordState c = coords(s);
        const SurfaceJet j = host().jet(c.u, c.v);
        const FormBundle f = makeForms(j);
        const CurveState st = embedOn(j, c);
        return dot(st.gamma2, cross(st.gamma1, f.normal));
    }

private:
    CurveOnSurface() = default;

    CurveDef def_;
    double quadTol_ = kDefaultQuadTol;
    std::vector<double> tKnots_, sKnots_, invSpeedKnots_;
};

} // namespace isocurve
