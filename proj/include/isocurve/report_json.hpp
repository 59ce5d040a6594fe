#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "isocurve/curve.hpp"
#include "isocurve/fmt.hpp"
#include "isocurve/frames.hpp"
#include "isocurve/harness.hpp"
#include "isocurve/surface.hpp"

namespace isocurve {

using Json = nlohmann::json;

inline Json toJson(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

inline Json toJson(const DomainRect& d) { return Json::array({d.u0, d.u1, d.v0, d.v1}); }

inline Json toJson(const FormBundle& f) {
    Json j;
    j["E"] = f.E;
    j["F"] = f.F;
    j["G"] = f.G;
    j["Eu"] = f.Eu;
    j["Ev"] = f.Ev;
    j["Fu"] = f.Fu;
    j["Fv"] = f.Fv;
    j["Gu"] = f.Gu;
    j["Gv"] = f.Gv;
    j["L"] = f.L;
    j["M"] = f.M;
    j["Ncoef"] = f.Ncoef;
    j["normal"] = toJson(f.normal);
    j["areaElement"] = f.areaElement;
    return j;
}

inline Json toJson(const FrenetData& fd) {
    Json j;
    j["t"] = toJson(fd.t);
    j["n"] = toJson(fd.n);
    j["b"] = toJson(fd.b);
    j["kappa"] = fd.kappa;
    return j;
}

inline Json toJson(const CurveState& st) {
    Json j;
    j["s"] = st.s;
    j["u"] = st.u;
    j["v"] = st.v;
    j["u1"] = st.u1;
    j["v1"] = st.v1;
    j["u2"] = st.u2;
    j["v2"] = st.v2;
    j["gamma"] = toJson(st.gamma);
    j["gamma1"] = toJson(st.gamma1);
    j["gamma2"] = toJson(st.gamma2);
    return j;
}

inline Json toJson(const Classification& c) {
    Json j;
    j["kind"] = toString(c.kind);
    j["residuals"] = {{"maxDotN", c.maxDotN}, {"maxDotB", c.maxDotB}, {"maxDotT", c.maxDotT}};
    j["asymptotic"] = c.asymptotic;
    j["geodesic"] = c.geodesic;
    j["maxKappaN"] = c.maxKappaN;
    j["maxKappaG"] = c.maxKappaG;
    j["degenerateFraction"] = c.degenerateFraction;
    j["grid"] = c.grid;
    j["tol"] = c.tol;
    return j;
}

inline Json toJson(const TheoremReport& r) {
    Json j;
    j["theoremId"] = toString(r.id);
    j["samples"] = r.samples;
    j["maxResidual"] = r.maxResidual;
    j["meanResidual"] = r.meanResidual;
    j["paperLiteralResidual"] = r.paperLiteralResidual;
    j["pass"] = r.pass;
    j["tol"] = r.tol;
    j["worstS"] = r.worstS;
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline const char* kSampleCsvHeader = "s,lhs,rhs,residual,kappaN_first,kappaN_second,areaElement";

inline std::string toCsv(const std::vector<SampleRecord>& records) {
    std::string out(kSampleCsvHeader);
    out += '\n';
    for (const auto& r : records) {
        out += formatDouble(r.s);
        out += ',';
        out += formatDouble(r.lhs);
        out += ',';
        out += formatDouble(r.rhs);
        out += ',';
        out += formatDouble(r.residual);
        out += ',';
        out += formatDouble(r.kappaNFirst);
        out += ',';
        out += formatDouble(r.kappaNSecond);
        out += ',';
        out += formatDouble(r.areaElement);
        out += '\n';
    }
    return out;
}

struct SweepRow {
    double theta = 0.0;
    double maxResidual = 0.0;
    double maxKappaNDiff = 0.0;
};

inline const char* kSweepCsvHeader = "theta,maxResidual,maxKappaNDiff";

inline std::string toCsv(const std::vector<SweepRow>& rows) {
    std::string out(kSweepCsvHeader);
    out += '\n';
    for (const auto& r : rows) {
        out += formatDouble(r.theta);
        out += ',';
        out += formatDouble(r.maxResidual);
        out += ',';
        out += formatDouble(r.maxKappaNDiff);
        out += '\n';
    }
    return out;
}

inline Json toJson(const SweepRow& r) {
    Json j;
    j["theta"] = r.theta;
    j["maxResidual"] = r.maxResidual;
    j["maxKappaNDiff"] = r.maxKappaNDiff;
    return j;
}

} // namespace isocurve
