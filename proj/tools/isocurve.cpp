#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isocurve/catalog.hpp"
#include "isocurve/curve.hpp"
#include "isocurve/errors.hpp"
#include "isocurve/fmt.hpp"
#include "isocurve/frames.hpp"
#include "isocurve/harness.hpp"
#include "isocurve/io_json.hpp"
#include "isocurve/report_json.hpp"
#include "isocurve/surface.hpp"

namespace {

using namespace isocurve;

void emit(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(outPath, std::ios::binary);
    f << text;
    if (!f) throw UsageError("cannot write to '" + outPath + "'");
}

void requireFormat(const std::string& format, std::initializer_list<const char*> allowed,
                   const char* command) {
    for (const char* a : allowed)
        if (format == a) return;
    throw UsageError("format '" + format + "' is not available for " + command);
}

Json surfaceSummary(const SurfacePatch& s) {
    Json j;
    j["name"] = s.name();
    j["x"] = s.xExpr().source();
    j["y"] = s.yExpr().source();
    j["z"] = s.zExpr().source();
    j["domain"] = toJson(s.domain());
    return j;
}

Json pairSummary(const IsometricPair& p) {
    Json j;
    j["name"] = p.name;
    j["first"] = p.first->name();
    j["second"] = p.second->name();
    j["sharedDomain"] = toJson(p.sharedDomain);
    return j;
}

Json curveSummary(const CurveDef& d) {
    Json j;
    j["name"] = d.name;
    j["surface"] = d.surface->name();
    j["u"] = d.u.source();
    j["v"] = d.v.source();
    j["domain"] = Json::array({d.t0, d.t1});
    return j;
}

std::string textBlock(const Json& j, int indent = 0) {
    std::string out;
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : j.items()) {
        if (value.is_object()) {
            out += pad + key + ":\n" + textBlock(value, indent + 2);
        } else {
            out += pad + key + " = " + value.dump() + "\n";
        }
    }
    return out;
}

struct EvalOptions {
    std::string surface, surfaceFile, curve, curveFile;
    double u = 0.0, v = 0.0, s = 0.0;
    bool haveU = false, haveV = false, haveS = false;
    std::string format = "json";
    std::string out;
};

int runEval(const EvalOptions& o) {
    requireFormat(o.format, {"json", "text"}, "eval");
    const int sources = (!o.surface.empty()) + (!o.surfaceFile.empty()) +
                        (!o.curve.empty()) + (!o.curveFile.empty());
    if (sources != 1)
        throw UsageError(
            "eval needs exactly one of --surface, --surface-file, --curve, --curve-file");
    Json j;
    j["command"] = "eval";
    if (!o.surface.empty() || !o.surfaceFile.empty()) {
        if (!o.haveU || !o.haveV) throw UsageError("surface eval needs --u and --v");
        if (o.haveS) throw UsageError("--s applies to curve eval only");
        const SurfacePtr s =
            o.surface.empty() ? loadSurfaceFile(o.surfaceFile) : surfaceByName(o.surface);
        j["mode"] = "surface";
        j["surface"] = surfaceSummary(*s);
        j["point"] = {{"u", o.u}, {"v", o.v}};
        j["forms"] = toJson(s->forms(o.u, o.v));
    } else {
        if (!o.haveS) throw UsageError("curve eval needs --s");
        if (o.haveU || o.haveV) throw UsageError("--u/--v apply to surface eval only");
        CurveDef def = o.curve.empty() ? loadCurveFile(o.curveFile) : [&] {
            const NamedCurve& n = curveByName(o.curve);
            return CurveDef::fromExpressions(n.name, surfaceByName(n.surface), n.uSrc,
                                             n.vSrc, n.t0, n.t1);
        }();
        const CurveOnSurface curve = CurveOnSurface::build(std::move(def));
        Json cj = curveSummary(curve.def());
        cj["length"] = curve.length();
        j["mode"] = "curve";
        j["curve"] = cj;
        j["s"] = o.s;
        j["state"] = toJson(curve.state(o.s));
        j["frenet"] = toJson(curve.frenet(o.s));
        j["kappaN"] = curve.normalCurvature(o.s);
        j["kappaG"] = curve.geodesicCurvature(o.s);
    }
    emit(o.format == "json" ? j.dump(2) + "\n" : textBlock(j), o.out);
    return 0;
}

struct ClassifyOptions {
    std::string curve, curveFile;
    int grid = 257;
    double tol = 1e-6;
    std::string format = "json";
    std::string out;
    std::string expect; // optional: fail unless the kind matches
};

int runClassify(const ClassifyOptions& o) {
    requireFormat(o.format, {"json", "text"}, "classify");
    if (o.curve.empty() == o.curveFile.empty())
        throw UsageError("classify needs exactly one of --curve, --curve-file");
    CurveDef def = o.curve.empty() ? loadCurveFile(o.curveFile) : [&] {
        const NamedCurve& n = curveByName(o.curve);
        return CurveDef::fromExpressions(n.name, surfaceByName(n.surface), n.uSrc, n.vSrc,
                                         n.t0, n.t1);
    }();
    const CurveOnSurface curve = CurveOnSurface::build(std::move(def));
    const Classification cls = classify(curve, o.grid, o.tol);
    Json j;
    j["command"] = "classify";
    j["curve"] = curveSummary(curve.def());
    j["classification"] = toJson(cls);
    emit(o.format == "json" ? j.dump(2) + "\n" : textBlock(j), o.out);
    if (!o.expect.empty() && o.expect != toString(cls.kind)) {
        std::cerr << "classification '" << toString(cls.kind) << "' != expected '"
                  << o.expect << "'\n";
        return 1;
    }
    if (cls.kind == CurveClass::kDegenerate) {
        std::cerr << "curvature below threshold (kappa <= " << formatDouble(kKappaMin)
                  << ") on " << formatDouble(100.0 * cls.degenerateFraction)
                  << "% of samples; Frenet classification is undefined\n";
        return 3;
    }
    return 0;
}

struct VerifyOptions {
    std::string pair = "plane-cylinder";
    std::string pairFile;
    double theta = 0.7853981633974483; // pi/4, associate pair only
    std::string curve, curveFile;
    std::string coeffLambda = "1";
    std::string coeffRatio = "1";
    double dirA = 1.0, dirB = 1.0;
    std::string theorem = "all";
    int samples = 200;
    double tol = 1e-7;
    std::uint64_t seed = 1;
    int draws = 0;
    std::string format = "json";
    std::string out;
};

const std::vector<std::string> kTheoremTokens = {"all", "rt45", "rt4",  "rt5",       "3.1",
                                                 "3.2", "4.1",  "4.2", "asymptotic"};

std::vector<TheoremReport> runTheorems(const std::string& token, const PairProbe& probe,
                                       const CoefficientSpec& coeffs, TangentDirection dir,
                                       int samples, double tol,
                                       std::vector<SampleRecord>* records) {
    if (token == "all") return runAllTheorems(probe, coeffs, dir, samples, tol);
    if (token == "rt45") {
        const RT45Reports rt = verifyRT45(probe, coeffs, samples, tol);
        return {rt.rt4, rt.rt5};
    }
    if (token == "rt4")
        return {verifyRT45(probe, coeffs, samples, tol, records).rt4};
    if (token == "rt5")
        return {verifyRT45(probe, coeffs, samples, tol, nullptr, records).rt5};
    if (token == "3.1") return {verifyT31(probe, coeffs, dir, samples, tol, records)};
    if (token == "3.2") return {verifyT32(probe, coeffs, dir, samples, tol, records)};
    if (token == "4.1") return {verifyT41(probe, coeffs, samples, tol, records)};
    if (token == "4.2") return {verifyT42(probe, coeffs, dir, samples, tol, records)};
    if (token == "asymptotic") {
        const AsymptoticReports ar = verifyAsymptoticCorollary(probe, dir, samples, tol);
        return {ar.rectifying, ar.osculating};
    }
    throw UsageError("unknown theorem '" + token + "'");
}

IsometricPair resolvePair(const VerifyOptions& o) {
    if (!o.pairFile.empty()) return loadPairFile(o.pairFile);
    return pairByName(o.pair, o.theta);
}

CurveDef resolveVerifyCurve(const VerifyOptions& o, const IsometricPair& pair) {
    if (!o.curveFile.empty()) return loadCurveFile(o.curveFile);
    if (!o.curve.empty()) {
        const NamedCurve& n = curveByName(o.curve);
        return CurveDef::fromExpressions(n.name, surfaceByName(n.surface), n.uSrc, n.vSrc,
                                         n.t0, n.t1);
    }
    return defaultProbeCurve(pair);
}

Json verifyConfig(const VerifyOptions& o, const IsometricPair& pair) {
    Json c;
    c["pair"] = pairSummary(pair);
    c["coeffLambda"] = o.coeffLambda;
    c["coeffRatio"] = o.coeffRatio;
    c["dir"] = {{"a", o.dirA}, {"b", o.dirB}};
    c["theorem"] = o.theorem;
    c["samples"] = o.samples;
    c["tol"] = o.tol;
    c["seed"] = o.seed;
    c["draws"] = o.draws;
    c["defaults"] = {{"kappaMin", kKappaMin},
                     {"regularityEps", kRegularityEps},
                     {"quadTol", kDefaultQuadTol},
                     {"inversionTol", kArcInversionTol}};
    return c;
}

int finishVerify(const VerifyOptions& o, Json& j, const std::vector<TheoremReport>& reports,
                 const std::vector<SampleRecord>& records) {
    bool allPass = true;
    Json arr = Json::array();
    for (const auto& r : reports) {
        allPass = allPass && r.pass;
        arr.push_back(toJson(r));
    }
    j["reports"] = arr;
    j["pass"] = allPass;
    if (o.format == "csv")
        emit(toCsv(records), o.out);
    else if (o.format == "json")
        emit(j.dump(2) + "\n", o.out);
    else
        emit(textBlock(j), o.out);
    if (!allPass) {
        for (const auto& r : reports)
            if (!r.pass)
                std::cerr << toString(r.id) << " FAILED: maxResidual "
                          << formatDouble(r.maxResidual) << " > tol " << formatDouble(r.tol)
                          << " (worst sample s = " << formatDouble(r.worstS) << ")\n";
        return 1;
    }
    return 0;
}

int runVerify(const VerifyOptions& o) {
    requireFormat(o.format, {"json", "csv", "text"}, "verify");
    const bool wantRecords = o.format == "csv";
    if (wantRecords &&
        (o.theorem == "all" || o.theorem == "rt45" || o.theorem == "asymptotic"))
        throw UsageError("csv output needs a single-identity theorem "
                         "(3.1, 3.2, 4.1, 4.2, rt4 or rt5)");
    if (wantRecords && o.draws > 0)
        throw UsageError("csv output is not available with --draws");
    IsometricPair pair = resolvePair(o);
    const CoefficientSpec coeffs =
        CoefficientSpec::fromSources(o.coeffLambda, o.coeffRatio);
    const TangentDirection dir{o.dirA, o.dirB};
    Json j;
    j["command"] = "verify";
    Json config = verifyConfig(o, pair);

    std::vector<TheoremReport> reports;
    std::vector<SampleRecord> records;
    if (o.draws > 0) {
        // Worst report per theorem across independently drawn setups.
        Lcg64 rng(o.seed);
        config["curve"] = {{"mode", "random-draws"}, {"count", o.draws}};
        for (int d = 0; d < o.draws; ++d) {
            const VerifyDraw draw = drawVerifySetup(rng, pair);
            const PairProbe probe = PairProbe::make(pair, draw.curve.def());
            const auto batch =
                runTheorems(o.theorem, probe, draw.coeffs, draw.dir, o.samples, o.tol,
                            nullptr);
            if (reports.empty()) {
                reports = batch;
                for (auto& r : reports) r.detail["worstDraw"] = 0.0;
            } else {
                for (std::size_t i = 0; i < batch.size(); ++i) {
                    if (batch[i].maxResidual > reports[i].maxResidual) {
                        reports[i] = batch[i];
                        reports[i].detail["worstDraw"] = d;
                    }
                    reports[i].pass = reports[i].pass && batch[i].pass;
                }
            }
        }
        for (auto& r : reports) r.detail["draws"] = o.draws;
    } else {
        const CurveDef def = resolveVerifyCurve(o, pair);
        const PairProbe probe = PairProbe::make(pair, def);
        config["curve"] = curveSummary(probe.curve().def());
        reports = runTheorems(o.theorem, probe, coeffs, dir, o.samples, o.tol,
                              wantRecords ? &records : nullptr);
    }
    j["config"] = config;
    return finishVerify(o, j, reports, records);
}

struct SweepOptions {
    double thetaMin = 0.0;
    double thetaMax = 1.5707963267948966;
    int thetaSteps = 5;
    std::string theorem = "all";
    std::string coeffLambda = "1";
    std::string coeffRatio = "1";
    double dirA = 1.0, dirB = 1.0;
    int samples = 200;
    double tol = 1e-7;
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out;
};

int runSweep(const SweepOptions& o) {
    requireFormat(o.format, {"csv", "json", "text"}, "sweep");
    if (o.thetaSteps < 1) throw UsageError("--theta-steps must be >= 1");
    if (o.theorem == "asymptotic")
        throw UsageError("sweep needs an identity theorem, not 'asymptotic'");
    const CoefficientSpec coeffs =
        CoefficientSpec::fromSources(o.coeffLambda, o.coeffRatio);
    const TangentDirection dir{o.dirA, o.dirB};
    std::vector<SweepRow> rows;
    bool allPass = true;
    for (int i = 0; i < o.thetaSteps; ++i) {
        const double theta =
            o.thetaSteps == 1
                ? o.thetaMin
                : o.thetaMin + (o.thetaMax - o.thetaMin) * i / (o.thetaSteps - 1);
        const IsometricPair pair = pairByName("associate", theta);
        const PairProbe probe = PairProbe::makeDefault(pair);
        const auto reports =
            runTheorems(o.theorem, probe, coeffs, dir, o.samples, o.tol, nullptr);
        SweepRow row;
        row.theta = theta;
        for (const auto& r : reports) {
            row.maxResidual = std::max(row.maxResidual, r.maxResidual);
            allPass = allPass && r.pass;
        }
        for (int k = 0; k < o.samples; ++k) {
            const PairSample ps = probe.at(probe.length() * k / (o.samples - 1));
            row.maxKappaNDiff = std::max(row.maxKappaNDiff, std::fabs(ps.kn2 - ps.kn1));
        }
        rows.push_back(row);
    }
    if (o.format == "csv") {
        emit(toCsv(rows), o.out);
    } else {
        Json j;
        j["command"] = "sweep";
        j["config"] = {{"thetaMin", o.thetaMin},   {"thetaMax", o.thetaMax},
                       {"thetaSteps", o.thetaSteps}, {"theorem", o.theorem},
                       {"samples", o.samples},     {"tol", o.tol},
                       {"coeffLambda", o.coeffLambda}, {"coeffRatio", o.coeffRatio},
                       {"dir", Json{{"a", o.dirA}, {"b", o.dirB}}}};
        Json arr = Json::array();
        for (const auto& r : rows) arr.push_back(toJson(r));
        j["rows"] = arr;
        j["pass"] = allPass;
        emit(o.format == "json" ? j.dump(2) + "\n" : textBlock(j), o.out);
    }
    return allPass ? 0 : 1;
}

struct SurfacesOptions {
    std::string format = "json";
    std::string out;
};

int runSurfaces(const SurfacesOptions& o) {
    requireFormat(o.format, {"json", "text"}, "surfaces");
    Json j;
    j["command"] = "surfaces";
    Json surfaces = Json::array();
    for (const auto& s : builtinSurfaces()) surfaces.push_back(surfaceSummary(*s));
    j["surfaces"] = surfaces;
    Json pairs = Json::array();
    for (const auto& p : builtinPairs()) pairs.push_back(pairSummary(p));
    j["pairs"] = pairs;
    Json curves = Json::array();
    for (const auto& c : curveRegistry()) {
        Json cj;
        cj["name"] = c.name;
        cj["surface"] = c.surface;
        cj["u"] = c.uSrc;
        cj["v"] = c.vSrc;
        cj["domain"] = Json::array({c.t0, c.t1});
        cj["expectedClass"] = toString(c.expected);
        curves.push_back(cj);
    }
    j["curves"] = curves;
    if (o.format == "json") {
        emit(j.dump(2) + "\n", o.out);
    } else {
        std::string text = "surfaces:\n";
        for (const auto& s : builtinSurfaces())
            text += "  " + s->name() + "  (" + s->xExpr().source() + ", " +
                    s->yExpr().source() + ", " + s->zExpr().source() + ")\n";
        text += "pairs:\n";
        for (const auto& p : builtinPairs())
            text += "  " + p.name + "  " + p.first->name() + " <-> " + p.second->name() +
                    "\n";
        text += "curves:\n";
        for (const auto& c : curveRegistry())
            text += "  " + c.name + "  on " + c.surface + "  u=" + c.uSrc + " v=" + c.vSrc +
                    "  [" + toString(c.expected) + "]\n";
        emit(text, o.out);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"curves on isometric surfaces: fundamental forms, Frenet and surface "
                 "frames, curve classification, and invariance verification"};
    app.require_subcommand(1);

    EvalOptions evalOpt;
    CLI::App* evalCmd = app.add_subcommand(
        "eval", "evaluate forms at a surface point or frames along a curve");
    evalCmd->add_option("--surface", evalOpt.surface, "built-in surface name");
    evalCmd->add_option("--surface-file", evalOpt.surfaceFile, "surface JSON file");
    evalCmd->add_option("--curve", evalOpt.curve, "built-in curve name");
    evalCmd->add_option("--curve-file", evalOpt.curveFile, "curve JSON file");
    evalCmd->add_option("--u", evalOpt.u, "u coordinate");
    evalCmd->add_option("--v", evalOpt.v, "v coordinate");
    evalCmd->add_option("--s", evalOpt.s, "arc length along the curve");
    evalCmd->add_option("--format", evalOpt.format, "json|text")
        ->check(CLI::IsMember({"json", "text", "csv"}));
    evalCmd->add_option("--out", evalOpt.out, "write output to a file");

    ClassifyOptions clsOpt;
    CLI::App* classifyCmd =
        app.add_subcommand("classify", "classify a curve by its vanishing Frenet component");
    classifyCmd->add_option("--curve", clsOpt.curve, "built-in curve name");
    classifyCmd->add_option("--curve-file", clsOpt.curveFile, "curve JSON file");
    classifyCmd->add_option("--grid", clsOpt.grid, "arc-length sample count")
        ->check(CLI::PositiveNumber);
    classifyCmd->add_option("--tol", clsOpt.tol, "residual tolerance");
    classifyCmd->add_option("--expect", clsOpt.expect,
                            "fail (exit 1) unless the kind matches");
    classifyCmd->add_option("--format", clsOpt.format, "json|text")
        ->check(CLI::IsMember({"json", "text", "csv"}));
    classifyCmd->add_option("--out", clsOpt.out, "write output to a file");

    VerifyOptions verOpt;
    CLI::App* verifyCmd = app.add_subcommand(
        "verify", "check the invariance identities on an isometric pair");
    verifyCmd->add_option("--pair", verOpt.pair, "built-in pair name");
    verifyCmd->add_option("--pair-file", verOpt.pairFile, "pair JSON file");
    verifyCmd->add_option("--theta", verOpt.theta,
                          "family angle of the second member (pair 'associate')");
    verifyCmd->add_option("--curve", verOpt.curve, "built-in curve name");
    verifyCmd->add_option("--curve-file", verOpt.curveFile, "curve JSON file");
    verifyCmd->add_option("--coeff-lambda", verOpt.coeffLambda,
                          "tangential coefficient lambda(s)");
    verifyCmd->add_option("--coeff-ratio", verOpt.coeffRatio,
                          "curvature coefficient ratio c(s)");
    verifyCmd->add_option("--dir-a", verOpt.dirA, "direction field coefficient a");
    verifyCmd->add_option("--dir-b", verOpt.dirB, "direction field coefficient b");
    verifyCmd->add_option("--theorem", verOpt.theorem, "which identity to check")
        ->check(CLI::IsMember(kTheoremTokens));
    verifyCmd->add_option("--samples", verOpt.samples, "arc-length samples")
        ->check(CLI::PositiveNumber);
    verifyCmd->add_option("--tol", verOpt.tol, "pass/fail residual tolerance");
    verifyCmd->add_option("--seed", verOpt.seed, "random draw seed");
    verifyCmd->add_option("--draws", verOpt.draws,
                          "number of random setups (0 = use the given curve/coefficients)")
        ->check(CLI::NonNegativeNumber);
    verifyCmd->add_option("--format", verOpt.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    verifyCmd->add_option("--out", verOpt.out, "write output to a file");

    SweepOptions sweepOpt;
    CLI::App* sweepCmd = app.add_subcommand(
        "sweep", "verify across the associate family angle theta");
    sweepCmd->add_option("--theta-min", sweepOpt.thetaMin, "first theta");
    sweepCmd->add_option("--theta-max", sweepOpt.thetaMax, "last theta");
    sweepCmd->add_option("--theta-steps", sweepOpt.thetaSteps, "number of thetas");
    sweepCmd->add_option("--theorem", sweepOpt.theorem, "which identity to check")
        ->check(CLI::IsMember(kTheoremTokens));
    sweepCmd->add_option("--coeff-lambda", sweepOpt.coeffLambda,
                         "tangential coefficient lambda(s)");
    sweepCmd->add_option("--coeff-ratio", sweepOpt.coeffRatio,
                         "curvature coefficient ratio c(s)");
    sweepCmd->add_option("--dir-a", sweepOpt.dirA, "direction field coefficient a");
    sweepCmd->add_option("--dir-b", sweepOpt.dirB, "direction field coefficient b");
    sweepCmd->add_option("--samples", sweepOpt.samples, "arc-length samples")
        ->check(CLI::PositiveNumber);
    sweepCmd->add_option("--tol", sweepOpt.tol, "pass/fail residual tolerance");
    sweepCmd->add_option("--seed", sweepOpt.seed, "reserved; echoed into the config");
    sweepCmd->add_option("--format", sweepOpt.format, "csv|json|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sweepCmd->add_option("--out", sweepOpt.out, "write output to a file");

    SurfacesOptions surfOpt;
    CLI::App* surfacesCmd =
        app.add_subcommand("surfaces", "list built-in surfaces, pairs and curves");
    surfacesCmd->add_option("--format", surfOpt.format, "json|text")
        ->check(CLI::IsMember({"json", "text"}));
    surfacesCmd->add_option("--out", surfOpt.out, "write output to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (evalCmd->parsed()) {
            evalOpt.haveU = evalCmd->count("--u") > 0;
            evalOpt.haveV = evalCmd->count("--v") > 0;
            evalOpt.haveS = evalCmd->count("--s") > 0;
            return runEval(evalOpt);
        }
        if (classifyCmd->parsed()) return runClassify(clsOpt);
        if (verifyCmd->parsed()) return runVerify(verOpt);
        if (sweepCmd->parsed()) return runSweep(sweepOpt);
        if (surfacesCmd->parsed()) return runSurfaces(surfOpt);
        return 2;
    } catch (const OutOfDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const GeometryError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InternalCheckError& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
