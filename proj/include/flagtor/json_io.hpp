/**
 * @file json_io.hpp
 * @brief JSON reading and writing for complexes, homology, Tor tables and series.
 *
 * Multidegrees leave the library in doubled grading:
 * {"t": -i, "lambda": [2α_1, ..., 2α_m]}.
 */
#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "flagtor/complexes.hpp"
#include "flagtor/homology.hpp"
#include "flagtor/pontryagin.hpp"
#include "flagtor/series.hpp"

namespace flagtor {

using Json = nlohmann::ordered_json;

inline SimplicialComplex complex_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object() || !j.contains("m") || !j.contains("facets"))
            throw InputError("complex JSON needs keys \"m\" and \"facets\"");
        const int m = j.at("m").get<int>();
        const auto facets = j.at("facets").get<std::vector<std::vector<int>>>();
        return SimplicialComplex::from_facets(m, facets);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed complex JSON: ") + e.what());
    }
}

inline SimplicialComplex read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("input is not valid JSON: " + std::string(e.what()));
    }
    return complex_from_json(j);
}

inline Json mask_json(VertexMask s) { return mask_to_vertices(s); }

inline Json complex_json(const SimplicialComplex& k) {
    return Json{{"m", k.vertex_count()}, {"facets", k.facet_lists()}};
}

inline Json multidegree_json(int i, const Exponent& alpha) {
    std::vector<int> doubled;
    for (int a : alpha) doubled.push_back(2 * a);
    return Json{{"t", -i}, {"lambda", doubled}};
}

inline Json group_json(const DegreeGroup& g) {
    Json tors = Json::array();
    for (const Integer& q : g.torsion) tors.push_back(q.get_str());
    return Json{{"rank", g.rank}, {"torsion", tors}};
}

inline Json profile_json(const HomologyProfile& h) {
    Json out = Json::array();
    for (int n = h.min_degree(); n <= h.max_degree(); ++n) {
        if (h.group(n).is_zero()) continue;
        Json g = group_json(h.group(n));
        g["degree"] = n;
        out.push_back(std::move(g));
    }
    return out;
}

inline Json tor_json(const TorTable& t, int m) {
    Json entries = Json::array();
    for (const auto& e : t.entries) {
        Json g = group_json(e.group);
        g["n"] = e.n;
        g["J"] = mask_json(e.subset);
        g["multidegree"] = multidegree_json(mask_size(e.subset), exponent_of_mask(e.subset, m));
        entries.push_back(std::move(g));
    }
    return Json{{"coeff", t.coeff.to_string()}, {"entries", entries}};
}

template <class Coeff>
Json series_json(const TruncatedSeries<Coeff>& s) {
    Json terms = Json::array();
    for (const auto& [alpha, c] : s.terms()) {
        Json term = multidegree_json(total_degree(alpha), alpha);
        term["coeff"] = c.get_str();
        terms.push_back(std::move(term));
    }
    Json graded = Json::array();
    for (const auto& c : s.graded_coefficients()) graded.push_back(c.get_str());
    return Json{{"trunc", s.truncation()}, {"terms", terms}, {"graded", graded}};
}

}  // namespace flagtor
