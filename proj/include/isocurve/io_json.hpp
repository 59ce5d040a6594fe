#pragma once

#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

#include "isocurve/catalog.hpp"
#include "isocurve/curve.hpp"
#include "isocurve/errors.hpp"
#include "isocurve/surface.hpp"

namespace isocurve {

inline nlohmann::json readJsonFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("invalid JSON in '" + path + "': " + e.what());
    }
    return j;
}

namespace detail {

inline const nlohmann::json& requireKey(const nlohmann::json& j, const char* key,
                                        const char* what) {
    const auto it = j.find(key);
    if (it == j.end())
        throw UsageError(std::string(what) + " definition is missing key '" + key + "'");
    return *it;
}

inline std::string requireString(const nlohmann::json& j, const char* key,
                                 const char* what) {
    const auto& v = requireKey(j, key, what);
    if (!v.is_string())
        throw UsageError(std::string(what) + " key '" + key + "' must be a string");
    return v.get<std::string>();
}

inline void requireDomain4(const nlohmann::json& v, const char* what, const char* key,
                           double out[4]) {
    if (!v.is_array() || v.size() != 4)
        throw UsageError(std::string(what) + " key '" + key +
                         "' must be an array of four numbers");
    for (int i = 0; i < 4; ++i) {
        if (!v[static_cast<std::size_t>(i)].is_number())
            throw UsageError(std::string(what) + " key '" + key +
                             "' must be an array of four numbers");
        out[i] = v[static_cast<std::size_t>(i)].get<double>();
    }
}

} // namespace detail

/// Surface definition object: {"name", "x", "y", "z", "domain": [u0,u1,v0,v1]}.
inline SurfacePtr surfaceFromJson(const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("surface definition must be a JSON object");
    const std::string name = detail::requireString(j, "name", "surface");
    double d[4];
    detail::requireDomain4(detail::requireKey(j, "domain", "surface"), "surface", "domain",
                           d);
    if (!(d[1] > d[0]) || !(d[3] > d[2]))
        throw UsageError("surface domain must satisfy u0 < u1 and v0 < v1");
    return makeSurface(name, detail::requireString(j, "x", "surface"),
                       detail::requireString(j, "y", "surface"),
                       detail::requireString(j, "z", "surface"),
                       {d[0], d[1], d[2], d[3]});
}

inline SurfacePtr loadSurfaceFile(const std::string& path) {
    return surfaceFromJson(readJsonFile(path));
}

/// Curve definition object: {"name", "surface": <catalog name or surface
/// object>, "u", "v", "domain": [t0, t1]}.
inline CurveDef curveFromJson(const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("curve definition must be a JSON object");
    const std::string name = detail::requireString(j, "name", "curve");
    const auto& host = detail::requireKey(j, "surface", "curve");
    SurfacePtr surface;
    if (host.is_string())
        surface = surfaceByName(host.get<std::string>());
    else
        surface = surfaceFromJson(host);
    const auto& dom = detail::requireKey(j, "domain", "curve");
    if (!dom.is_array() || dom.size() != 2 || !dom[0].is_number() || !dom[1].is_number())
        throw UsageError("curve key 'domain' must be an array of two numbers");
    return CurveDef::fromExpressions(name, std::move(surface),
                                     detail::requireString(j, "u", "curve"),
                                     detail::requireString(j, "v", "curve"),
                                     dom[0].get<double>(), dom[1].get<double>());
}

inline CurveDef loadCurveFile(const std::string& path) {
    return curveFromJson(readJsonFile(path));
}

/// Pair definition object: {"name", "first": <catalog name or surface
/// object>, "second": ..., "sharedDomain": [u0,u1,v0,v1]}.
inline IsometricPair pairFromJson(const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("pair definition must be a JSON object");
    IsometricPair p;
    p.name = detail::requireString(j, "name", "pair");
    const auto member = [&](const char* key) -> SurfacePtr {
        const auto& m = detail::requireKey(j, key, "pair");
        if (m.is_string()) return surfaceByName(m.get<std::string>());
        return surfaceFromJson(m);
    };
    p.first = member("first");
    p.second = member("second");
    double d[4];
    detail::requireDomain4(detail::requireKey(j, "sharedDomain", "pair"), "pair",
                           "sharedDomain", d);
    if (!(d[1] > d[0]) || !(d[3] > d[2]))
        throw UsageError("pair sharedDomain must satisfy u0 < u1 and v0 < v1");
    p.sharedDomain = {d[0], d[1], d[2], d[3]};
    return p;
}

inline IsometricPair loadPairFile(const std::string& path) {
    return pairFromJson(readJsonFile(path));
}

} // namespace isocurve
