#pragma once

#include "hilbcurve/bipoly.hpp"
#include "hilbcurve/fanocore.hpp"
#include "hilbcurve/fibrations.hpp"
#include "hilbcurve/rational.hpp"
#include "hilbcurve/toric.hpp"
#include "hilbcurve/unipoly.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hilb {

using Json = nlohmann::json;

// Interchange schema: {"vars":["x","y"],"terms":[{"i":..,"j":..,"num":"..","den":".."}]},
// terms in descending lexicographic (i, j) order; univariate uses
// {"vars":["z"],"terms":[{"i":..,"num":..,"den":..}]}.

inline Json bipoly_to_json(const BiPoly& p) {
    Json terms = Json::array();
    const auto& t = p.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const auto& [k, c] = *it;
        terms.push_back({{"i", k[0]},
                         {"j", k[1]},
                         {"num", numerator(c).str()},
                         {"den", denominator(c).str()}});
    }
    return Json{{"vars", Json::array({"x", "y"})}, {"terms", terms}};
}

inline BiPoly bipoly_from_json(const Json& j) {
    if (!j.contains("terms")) throw std::invalid_argument("polynomial JSON: missing terms");
    BiPoly p;
    for (const auto& t : j.at("terms")) {
        Rational c = make_rational(Int(t.at("num").get<std::string>()), Int(t.at("den").get<std::string>()));
        p.add_term(t.at("i").get<int>(), t.value("j", 0), c);
    }
    return p;
}

inline Json unipoly_to_json(const UniPoly& q) {
    Json terms = Json::array();
    for (int k = q.degree(); k >= 0; --k) {
        if (q[k] == 0) continue;
        terms.push_back({{"i", k}, {"num", numerator(q[k]).str()}, {"den", denominator(q[k]).str()}});
    }
    return Json{{"vars", Json::array({"z"})}, {"terms", terms}};
}

inline UniPoly unipoly_from_json(const Json& j) {
    if (!j.contains("terms")) throw std::invalid_argument("polynomial JSON: missing terms");
    std::vector<Rational> c;
    for (const auto& t : j.at("terms")) {
        int k = t.at("i").get<int>();
        if (k >= static_cast<int>(c.size())) c.resize(static_cast<size_t>(k) + 1, Rational(0));
        c[static_cast<size_t>(k)] =
            make_rational(Int(t.at("num").get<std::string>()), Int(t.at("den").get<std::string>()));
    }
    return UniPoly::from_coeffs(std::move(c));
}

// FanoInput JSON: either {"n","iota","r","h0":[..]} or
// {"n","kind":"pn|quadric|delpezzo|mukai","r","d"}.
struct FanoRequest {
    std::optional<FanoInput> table;
    std::optional<FanoKind> kind;
    int n = 0, r = 1;
    std::optional<Int> d;
};

inline FanoKind fano_kind_from_string(const std::string& s) {
    if (s == "pn") return FanoKind::Pn;
    if (s == "quadric") return FanoKind::Quadric;
    if (s == "delpezzo") return FanoKind::DelPezzo;
    if (s == "mukai") return FanoKind::Mukai;
    throw std::invalid_argument("unknown Fano kind: " + s);
}

inline FanoRequest fano_request_from_json(const Json& j) {
    FanoRequest req;
    req.n = j.at("n").get<int>();
    req.r = j.value("r", 1);
    if (j.contains("h0")) {
        FanoInput in;
        in.n = req.n;
        in.r = req.r;
        in.iota = j.at("iota").get<int>();
        for (const auto& v : j.at("h0")) in.h0.push_back(Int(v.get<long long>()));
        req.table = in;
    } else {
        req.kind = fano_kind_from_string(j.at("kind").get<std::string>());
        if (j.contains("d")) req.d = Int(j.at("d").get<long long>());
    }
    return req;
}

// Polytope JSON: {"id":int?,"dim":int,"vertices":[[..]],"dual":[[..]]?},
// plus an optional "printed_p" univariate polynomial used to flag catalogued
// discrepancies.
struct PolytopeRecordJson {
    std::optional<int> id;
    LatticePolytope primal;
    std::optional<LatticePolytope> dual;
    std::optional<UniPoly> printed_p;
    // catalogued columns, cross-checked when present
    std::optional<int> iota;
    std::optional<Int> degree;
    std::optional<Int> vol;
};

inline std::vector<std::vector<Int>> vertices_from_json(const Json& j) {
    std::vector<std::vector<Int>> verts;
    for (const auto& row : j) {
        std::vector<Int> v;
        for (const auto& x : row) v.push_back(Int(x.get<long long>()));
        verts.push_back(std::move(v));
    }
    return verts;
}

inline PolytopeRecordJson polytope_record_from_json(const Json& j) {
    PolytopeRecordJson rec;
    if (j.contains("id")) rec.id = j.at("id").get<int>();
    rec.primal.dim = j.at("dim").get<int>();
    rec.primal.vertices = vertices_from_json(j.at("vertices"));
    if (j.contains("dual")) {
        LatticePolytope d;
        d.dim = rec.primal.dim;
        d.vertices = vertices_from_json(j.at("dual"));
        rec.dual = d;
    }
    if (j.contains("printed_p")) rec.printed_p = unipoly_from_json(j.at("printed_p"));
    if (j.contains("iota")) rec.iota = j.at("iota").get<int>();
    if (j.contains("degree")) rec.degree = Int(j.at("degree").get<long long>());
    if (j.contains("vol")) rec.vol = Int(j.at("vol").get<long long>());
    return rec;
}

inline std::vector<PolytopeRecordJson> polytope_file_from_json(const Json& j) {
    std::vector<PolytopeRecordJson> out;
    if (!j.is_array()) throw std::invalid_argument("polytope file: expected a JSON array of records");
    int index = 0;
    for (const auto& rec : j) {
        try {
            out.push_back(polytope_record_from_json(rec));
        } catch (const std::exception& e) {
            throw std::invalid_argument("polytope file: record " + std::to_string(index) + ": " +
                                        e.what());
        }
        ++index;
    }
    return out;
}

inline Json geography_to_json(const GeographyReport& g) {
    Json lines = Json::array();
    for (const auto& l : g.lines) {
        Json jl{{"label", l.label},
                {"slope", to_string(l.slope)},
                {"multiplicity", l.multiplicity}};
        if (l.symbolic)
            jl["intercept"] = std::string(l.sqrt_sign > 0 ? "+" : "-") + "sqrt(" + to_string(g.h) +
                              ")" + (g.r == 1 ? "" : "/" + std::to_string(g.r));
        else
            jl["intercept"] = to_string(l.intercept);
        lines.push_back(jl);
    }
    Json overlaps = Json::array();
    for (const auto& [i, m] : g.overlaps) overlaps.push_back({{"ell", i}, {"multiplicity", m}});
    Json out{{"n", g.n},
             {"d", g.d.str()},
             {"r", g.r},
             {"h", to_string(g.h)},
             {"G_class_R", conic_class_name(g.class_R)},
             {"G_class_Q", conic_class_name(g.class_Q)},
             {"lines", lines},
             {"overlaps", overlaps}};
    if (g.sqrt_h) out["sqrt_h"] = to_string(*g.sqrt_h);
    return out;
}

// Fibration request JSON mirrors the constructor fields:
// {"family":"scroll|quadric|delpezzo","n":..,"r":..,"g":..,...} for curve
// bases and {"n","chi0","chiL","k","h"} for the surface scroll.
inline Json surface_scroll_to_json(const SurfaceScrollInput& in) {
    return Json{{"n", in.n},
                {"chi0", in.chi0.str()},
                {"chiL", in.chiL.str()},
                {"k", in.k.str()},
                {"h", in.h.str()}};
}

inline SurfaceScrollInput surface_scroll_from_json(const Json& j) {
    auto as_int = [&](const char* key) {
        const Json& v = j.at(key);
        return v.is_string() ? Int(v.get<std::string>()) : Int(v.get<long long>());
    };
    return SurfaceScrollInput{j.at("n").get<int>(), as_int("chi0"), as_int("chiL"), as_int("k"),
                              as_int("h")};
}

inline Json recurrence_spec_to_json(const RecurrenceSpec& spec) {
    Json j{{"degree", spec.degree},
           {"shift", Json::array({to_string(spec.dx), to_string(spec.dy)})},
           {"scale", to_string(spec.scale)},
           {"source", bipoly_to_json(spec.source)}};
    if (spec.pre_map) {
        const auto& m = *spec.pre_map;
        j["pre_map"] = Json{{"m", Json::array({to_string(m.m11), to_string(m.m12), to_string(m.m21),
                                               to_string(m.m22)})},
                            {"v", Json::array({to_string(m.v1), to_string(m.v2)})}};
    }
    Json cons = Json::array();
    for (const auto& c : spec.constraints)
        cons.push_back(Json{{"x", to_string(c.x)}, {"y", to_string(c.y)}, {"value", to_string(c.value)}});
    j["constraints"] = cons;
    if (spec.serre_parity) j["serre_parity"] = *spec.serre_parity;
    return j;
}

inline RecurrenceSpec recurrence_spec_from_json(const Json& j) {
    RecurrenceSpec spec;
    spec.degree = j.at("degree").get<int>();
    spec.dx = rational_from_string(j.at("shift").at(0).get<std::string>());
    spec.dy = rational_from_string(j.at("shift").at(1).get<std::string>());
    spec.scale = rational_from_string(j.at("scale").get<std::string>());
    spec.source = bipoly_from_json(j.at("source"));
    if (j.contains("pre_map")) {
        const auto& pm = j.at("pre_map");
        PreMap m;
        m.m11 = rational_from_string(pm.at("m").at(0).get<std::string>());
        m.m12 = rational_from_string(pm.at("m").at(1).get<std::string>());
        m.m21 = rational_from_string(pm.at("m").at(2).get<std::string>());
        m.m22 = rational_from_string(pm.at("m").at(3).get<std::string>());
        m.v1 = rational_from_string(pm.at("v").at(0).get<std::string>());
        m.v2 = rational_from_string(pm.at("v").at(1).get<std::string>());
        spec.pre_map = m;
    }
    if (j.contains("constraints"))
        for (const auto& c : j.at("constraints"))
            spec.constraints.push_back({rational_from_string(c.at("x").get<std::string>()),
                                        rational_from_string(c.at("y").get<std::string>()),
                                        rational_from_string(c.at("value").get<std::string>())});
    if (j.contains("serre_parity")) spec.serre_parity = j.at("serre_parity").get<int>();
    return spec;
}

// Chain results as an ordered list labeled X_{m-1} .. X_0.
inline Json chain_to_json(const std::vector<ChainLevel>& chain) {
    Json out = Json::array();
    for (const auto& lvl : chain) {
        Json j{{"level", "X_" + std::to_string(lvl.level)}};
        switch (lvl.outcome.status) {
            case RecurrenceOutcome::Status::Solved:
                j["status"] = "solved";
                j["poly"] = bipoly_to_json(lvl.outcome.solution);
                break;
            case RecurrenceOutcome::Status::Inconsistent:
                j["status"] = "inconsistent";
                break;
            case RecurrenceOutcome::Status::Underdetermined:
                j["status"] = "underdetermined";
                j["nullity"] = lvl.outcome.nullity;
                break;
        }
        out.push_back(j);
    }
    return out;
}

inline Json reducibility_to_json(const ReducibilityReport& r) {
    Json lin = Json::array();
    for (const auto& [c, m] : r.linear)
        lin.push_back({{"constant", to_string(c)}, {"multiplicity", m}});
    return Json{{"over_C", r.over_C},
                {"over_R", r.over_R},
                {"over_Q", r.over_Q},
                {"lead", to_string(r.lead)},
                {"linear_factors", lin},
                {"cofactor", unipoly_to_json(r.cofactor)}};
}

}  // namespace hilb
