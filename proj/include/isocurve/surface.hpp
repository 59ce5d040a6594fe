#pragma once

#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <utility>

#include "isocurve/errors.hpp"
#include "isocurve/expr.hpp"
#include "isocurve/fmt.hpp"
#include "isocurve/vec3.hpp"

namespace isocurve {

/// Regularity floor for |phi_u x phi_v|.
inline constexpr double kRegularityEps = 1e-8;

struct DomainRect {
    double u0 = 0.0, u1 = 0.0, v0 = 0.0, v1 = 0.0;

    bool contains(double u, double v) const {
        return u >= u0 && u <= u1 && v >= v0 && v <= v1;
    }
    double uSpan() const { return u1 - u0; }
    double vSpan() const { return v1 - v0; }
};

/// Position and all partials of phi through second order at one point.
struct SurfaceJet {
    double u = 0.0, v = 0.0;
    Vec3 p, pu, pv, puu, puv, pvv;
};

/// First and second fundamental form coefficients, their u/v derivatives
/// (first form only), the unit normal and the area element at one point.
struct FormBundle {
    double E = 0.0, F = 0.0, G = 0.0;
    double Eu = 0.0, Ev = 0.0, Fu = 0.0, Fv = 0.0, Gu = 0.0, Gv = 0.0;
    double L = 0.0, M = 0.0, Ncoef = 0.0;
    Vec3 normal;
    double areaElement = 0.0; // sqrt(E G - F^2) == |phi_u x phi_v|
};

/// Builds a FormBundle from an evaluated jet. Throws DegenerateSurfaceError
/// when |phi_u x phi_v| <= regularity epsilon.
inline FormBundle makeForms(const SurfaceJet& j, double regEps = kRegularityEps) {
    const Vec3 cr = cross(j.pu, j.pv);
    const double area = norm(cr);
    if (!(area > regEps))
        throw DegenerateSurfaceError("degenerate surface point at (u, v) = (" +
                                     formatDouble(j.u) + ", " + formatDouble(j.v) +
                                     "): |phi_u x phi_v| = " + formatDouble(area));
    FormBundle f;
    f.E = dot(j.pu, j.pu);
    f.F = dot(j.pu, j.pv);
    f.G = dot(j.pv, j.pv);
    f.Eu = 2.0 * dot(j.puu, j.pu);
    f.Ev = 2.0 * dot(j.puv, j.pu);
    f.Fu = dot(j.puu, j.pv) + dot(j.pu, j.puv);
    f.Fv = dot(j.puv, j.pv) + dot(j.pu, j.pvv);
    f.Gu = 2.0 * dot(j.puv, j.pv);
    f.Gv = 2.0 * dot(j.pvv, j.pv);
    f.normal = cr / area;
    f.L = dot(j.puu, f.normal);
    f.M = dot(j.puv, f.normal);
    f.Ncoef = dot(j.pvv, f.normal);
    f.areaElement = area;
    return f;
}

/// Parametric surface patch phi(u, v) = (x, y, z) over a rectangular domain,
/// with each component given as an expression in u and v.
class SurfacePatch {
public:
    static SurfacePatch fromExpressions(std::string name, const std::string& xSrc,
                                        const std::string& ySrc, const std::string& zSrc,
                                        DomainRect domain) {
        SurfacePatch p;
        p.name_ = std::move(name);
        p.x_ = parseExpression(xSrc, {"u", "v"});
        p.y_ = parseExpression(ySrc, {"u", "v"});
        p.z_ = parseExpression(zSrc, {"u", "v"});
        p.domain_ = domain;
        return p;
    }

    const std::string& name() const { return name_; }
    const DomainRect& domain() const { return domain_; }
    const ExprAst& xExpr() const { return x_; }
    const ExprAst& yExpr() const { return y_; }
    const ExprAst& zExpr() const { return z_; }

    void requireInDomain(double u, double v) const {
        if (!domain_.contains(u, v))
            throw OutOfDomainError("(u, v) = (" + formatDouble(u) + ", " + formatDouble(v) +
                                   ") is outside the domain of surface '" + name_ + "'");
    }

    SurfaceJet jet(double u, double v) const {
        requireInDomain(u, v);
        const Jet<2> xj = x_.jet2(u, v);
        const Jet<2> yj = y_.jet2(u, v);
        const Jet<2> zj = z_.jet2(u, v);
        SurfaceJet j;
        j.u = u;
        j.v = v;
        j.p = {xj.val, yj.val, zj.val};
        j.pu = {xj.d[0], yj.d[0], zj.d[0]};
        j.pv = {xj.d[1], yj.d[1], zj.d[1]};
        j.puu = {xj.dd[0], yj.dd[0], zj.dd[0]};
        j.puv = {xj.dd[1], yj.dd[1], zj.dd[1]};
        j.pvv = {xj.dd[2], yj.dd[2], zj.dd[2]};
        return j;
    }

    FormBundle forms(double u, double v) const { return makeForms(jet(u, v)); }

    /// Residuals of the six identities tying first-form derivatives to
    /// second-order position derivatives:
    ///   phi_uu . phi_u = Eu/2          phi_uv . phi_u = Ev/2
    ///   phi_uv . phi_v = Gu/2          phi_vv . phi_v = Gv/2
    ///   phi_uu . phi_v = Fu - Ev/2     phi_vv . phi_u = Fv - Gu/2
    std::array<double, 6> metricIdentityResiduals(double u, double v) const {
        const SurfaceJet j = jet(u, v);
        const FormBundle f = makeForms(j);
        return {
            std::fabs(dot(j.puu, j.pu) - 0.5 * f.Eu),
            std::fabs(dot(j.puv, j.pu) - 0.5 * f.Ev),
            std::fabs(dot(j.puv, j.pv) - 0.5 * f.Gu),
            std::fabs(dot(j.pvv, j.pv) - 0.5 * f.Gv),
            std::fabs(dot(j.puu, j.pv) - (f.Fu - 0.5 * f.Ev)),
            std::fabs(dot(j.pvv, j.pu) - (f.Fv - 0.5 * f.Gu)),
        };
    }

private:
    std::string name_;
    ExprAst x_, y_, z_;
    DomainRect domain_;
};

using SurfacePtr = std::shared_ptr<const SurfacePatch>;

} // namespace isocurve
