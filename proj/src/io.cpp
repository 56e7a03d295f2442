/*
 * fcm: convex polyhedral Fuchsian cone-manifolds
 * Copyright 2026 the fcm authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "fcm/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fcm::io {

using nlohmann::json;

namespace {

json parseFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("json parse failure: ") + e.what());
    }
    return j;
}

json parseText(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("json parse failure: ") + e.what());
    }
}

void requireKeys(const json& j, const std::set<std::string>& required,
                 const std::set<std::string>& optional) {
    if (!j.is_object()) throw ParseError("document root must be an object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!required.count(key) && !optional.count(key))
            throw ParseError("unknown field '" + key + "'");
    }
    for (const auto& key : required)
        if (!j.contains(key)) throw ParseError("missing field '" + key + "'");
}

std::vector<HalfEdgeRec> parseHalfedges(const json& j) {
    if (!j.is_array()) throw ParseError("'halfedges' must be an array");
    std::vector<HalfEdgeRec> he;
    he.reserve(j.size());
    for (const auto& r : j) {
        requireKeys(r, {"twin", "next", "origin"}, {});
        HalfEdgeRec rec;
        rec.twin = r.at("twin").get<int>();
        rec.next = r.at("next").get<int>();
        rec.origin = r.at("origin").get<int>();
        he.push_back(rec);
    }
    return he;
}

std::vector<double> parseLengths(const json& j, int nEdges) {
    if (!j.is_object()) throw ParseError("'lengths' must be an object keyed by edge id");
    std::vector<double> len(nEdges, -1.0);
    for (const auto& [key, value] : j.items()) {
        int e = -1;
        try {
            e = std::stoi(key);
        } catch (...) {
            throw ParseError("length key '" + key + "' is not an edge id");
        }
        if (e < 0 || e >= nEdges) throw ParseError("length key " + key + " out of range");
        len[e] = value.get<double>();
    }
    for (int e = 0; e < nEdges; ++e)
        if (len[e] < 0) throw ParseError("missing length for edge " + std::to_string(e));
    return len;
}

SurfaceFile surfaceFromJson(const json& j) {
    requireKeys(j, {"type", "genus", "halfedges", "lengths", "marked_vertices"}, {"heights"});
    if (j.at("type").get<std::string>() != "surface")
        throw ParseError("expected document type 'surface'");
    CombSurface surf(parseHalfedges(j.at("halfedges")));
    auto lengths = parseLengths(j.at("lengths"), surf.nEdges());
    std::vector<int> marked = j.at("marked_vertices").get<std::vector<int>>();
    int genus = j.at("genus").get<int>();
    if (genus != surf.genus())
        throw ParseError("declared genus " + std::to_string(genus) + " but combinatorics give " +
                         std::to_string(surf.genus()));
    int nv = surf.nVertices();
    ConeMetric metric(std::move(surf), std::move(lengths), std::move(marked));
    SurfaceFile out{std::move(metric), std::nullopt};
    if (j.contains("heights")) {
        const auto& hj = j.at("heights");
        if (!hj.is_object()) throw ParseError("'heights' must be an object keyed by vertex id");
        std::vector<double> h(nv, -1.0);
        for (const auto& [key, value] : hj.items()) {
            int v = std::stoi(key);
            if (v < 0 || v >= nv) throw ParseError("height key out of range");
            h[v] = value.get<double>();
        }
        for (int v = 0; v < nv; ++v)
            if (h[v] < 0) throw ParseError("missing height for vertex " + std::to_string(v));
        out.heights = Heights(std::move(h));
    }
    return out;
}

json surfaceToJson(const ConeMetric& m, const Heights* heights) {
    json j;
    j["type"] = "surface";
    j["genus"] = m.surface().genus();
    json he = json::array();
    for (const auto& r : m.surface().halfedges())
        he.push_back({{"twin", r.twin}, {"next", r.next}, {"origin", r.origin}});
    j["halfedges"] = he;
    json len = json::object();
    for (int e = 0; e < m.surface().nEdges(); ++e) len[std::to_string(e)] = m.length(e);
    j["lengths"] = len;
    j["marked_vertices"] = m.marked();
    if (heights) {
        json h = json::object();
        for (int v = 0; v < heights->size(); ++v) h[std::to_string(v)] = (*heights)[v];
        j["heights"] = h;
    }
    return j;
}

ConeTriangle triangleFromJson(const json& j) {
    requireKeys(j, {"type", "corners", "halfedges", "lengths"}, {"interior_vertices"});
    if (j.at("type").get<std::string>() != "cone_triangle")
        throw ParseError("expected document type 'cone_triangle'");
    auto he = parseHalfedges(j.at("halfedges"));
    // count edges the same way the ConeTriangle does
    int nEdges = 0;
    for (int h = 0; h < static_cast<int>(he.size()); ++h)
        if (he[h].twin == -1 || h < he[h].twin) ++nEdges;
    auto lengths = parseLengths(j.at("lengths"), nEdges);
    auto cornersVec = j.at("corners").get<std::vector<int>>();
    if (cornersVec.size() != 3) throw ParseError("'corners' must list exactly 3 vertices");
    ConeTriangle t(std::move(he), std::move(lengths),
                   {cornersVec[0], cornersVec[1], cornersVec[2]});
    if (j.contains("interior_vertices")) {
        for (const auto& r : j.at("interior_vertices")) {
            requireKeys(r, {"id", "nu"}, {});
            int v = r.at("id").get<int>();
            double nuTarget = r.at("nu").get<double>();
            if (v < 0 || v >= t.nVertices() || !t.interiorVertex(v))
                throw ParseError("interior vertex " + std::to_string(v) + " is not interior");
            if (std::fabs(t.interiorNu(v) - nuTarget) > 1e-6)
                throw ParseError("interior vertex " + std::to_string(v) +
                                 " curvature differs from declared target");
        }
    }
    return t;
}

json triangleToJson(const ConeTriangle& t) {
    json j;
    j["type"] = "cone_triangle";
    j["corners"] = t.corners();
    json he = json::array();
    for (const auto& r : t.halfedges())
        he.push_back({{"twin", r.twin}, {"next", r.next}, {"origin", r.origin}});
    j["halfedges"] = he;
    json len = json::object();
    for (int e = 0; e < t.nEdges(); ++e) len[std::to_string(e)] = t.length(e);
    j["lengths"] = len;
    json iv = json::array();
    for (int v = 0; v < t.nVertices(); ++v)
        if (t.interiorVertex(v))
            iv.push_back({{"id", v}, {"nu", t.interiorNu(v)}});
    j["interior_vertices"] = iv;
    return j;
}

}  // namespace

SurfaceFile read_surface(const std::string& path) { return surfaceFromJson(parseFile(path)); }
SurfaceFile read_surface_text(const std::string& text) {
    return surfaceFromJson(parseText(text));
}

std::string surface_to_text(const ConeMetric& m, const Heights* heights) {
    return surfaceToJson(m, heights).dump(2) + "\n";
}

void write_surface(const std::string& path, const ConeMetric& m, const Heights* heights) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << surface_to_text(m, heights);
}

ConeTriangle read_cone_triangle(const std::string& path) {
    return triangleFromJson(parseFile(path));
}
ConeTriangle read_cone_triangle_text(const std::string& text) {
    return triangleFromJson(parseText(text));
}

std::string cone_triangle_to_text(const ConeTriangle& t) {
    return triangleToJson(t).dump(2) + "\n";
}

void write_cone_triangle(const std::string& path, const ConeTriangle& t) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write " + path);
    out << cone_triangle_to_text(t);
}

std::string document_type(const std::string& path) {
    json j = parseFile(path);
    if (!j.is_object() || !j.contains("type")) throw ParseError("document has no 'type' field");
    return j.at("type").get<std::string>();
}

std::string swept_to_text(const SweepOutcome& outcome) {
    json j;
    j["type"] = "swept_triangle";
    j["kind"] = outcome.kind == SweptKind::strict ? "strict" : "hyperbolic";
    if (outcome.kind == SweptKind::strict) {
        j["x"] = outcome.swept.x;
        j["beta"] = outcome.swept.beta;
        j["cone_curvature"] = outcome.swept.coneCurvature();
    }
    j["six_tuple"] = outcome.sixTuple;
    json steps = json::array();
    for (const auto& st : outcome.log)
        steps.push_back({{"u", st.u}, {"v", st.v}, {"w", st.w},
                         {"chord", st.chordLength}, {"nu_u", st.nuU}, {"nu_v", st.nuV},
                         {"nu_w", st.nuW}, {"diam_ub_before", st.diamUpperBefore},
                         {"diam_ub_after", st.diamUpperAfter}, {"nu_budget", st.nuBudget}});
    j["merge_log"] = steps;
    return j.dump(2) + "\n";
}

}  // namespace fcm::io
