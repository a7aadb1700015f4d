#pragma once

#include "hilbcurve/classify.hpp"
#include "hilbcurve/json_io.hpp"
#include "hilbcurve/render.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hilb {

// One result of a CLI command: the polynomial in expanded and factored form,
// the centered picture, and whatever analysis applied. The factored form is
// structural (lead * prod factors^power) so that it multiplies back to the
// expanded polynomial exactly.
struct Report {
    std::string command;
    Json input_echo;
    int n = 0;
    int r = 1;
    BiPoly expanded;
    Rational factored_lead = 1;
    std::vector<std::pair<BiPoly, int>> factors;
    BiPoly centered;  // p(1/2 + u, v), variables (u, v)
    std::optional<FactoredHC> hc;
    std::optional<GeographyReport> geography;
    std::optional<ReducibilityReport> reducibility;
    std::optional<ClassificationResult> classification;
    std::vector<std::string> notes;

    BiPoly factored_product() const {
        BiPoly acc(factored_lead);
        for (const auto& [f, m] : factors) acc = acc * f.pow(m);
        return acc;
    }
};

inline BiPoly centered_form(const BiPoly& p) { return substitute_affine(p, 1, 0, 0, 1, rat(1, 2), 0); }

// Fano factored structure: lead * prod (z + c)^m * cofactor(z), each factor
// expanded as a linear form in (x, y).
inline void attach_factored_hc(Report& rep, const FactoredHC& hc) {
    FactoredForm f = factor_q(hc.q());
    rep.factored_lead = f.lead;
    rep.factors.clear();
    for (const auto& [c, m] : f.linear)
        rep.factors.emplace_back(BiPoly::linear(Rational(-hc.iota), Rational(hc.r), c), m);
    if (f.cofactor.degree() >= 1)
        rep.factors.emplace_back(compose_line(f.cofactor, hc.r, hc.iota), 1);
    rep.hc = hc;
}

inline Json classification_to_json(const ClassificationResult& c) {
    Json arr = Json::array();
    for (const auto& m : c.matches) {
        Json pm = Json::object();
        for (const auto& [k, v] : m.params) pm[k] = to_string(v);
        arr.push_back({{"family", family_name(m.family)}, {"params", pm}});
    }
    return arr;
}

inline Json report_to_json(const Report& rep) {
    Json factors = Json::array();
    for (const auto& [f, m] : rep.factors)
        factors.push_back({{"poly", bipoly_to_json(f)}, {"power", m}});
    Json out{{"command", rep.command},
             {"input", rep.input_echo},
             {"n", rep.n},
             {"r", rep.r},
             {"polynomial",
              {{"expanded", bipoly_to_json(rep.expanded)},
               {"factored", {{"lead", to_string(rep.factored_lead)}, {"factors", factors}}}}},
             {"centered", bipoly_to_json(rep.centered)},
             {"notes", rep.notes}};
    if (rep.geography) out["geography"] = geography_to_json(*rep.geography);
    if (rep.reducibility) out["reducibility"] = reducibility_to_json(*rep.reducibility);
    if (rep.classification) out["classification"] = classification_to_json(*rep.classification);
    return out;
}

inline std::string report_to_text(const Report& rep) {
    std::ostringstream os;
    os << "# " << rep.command << "\n";
    os << "p(x,y) = " << poly_text(rep.expanded) << "\n";
    if (rep.hc)
        os << "factored: q(z) = " << factored_q_string(*rep.hc, false) << "\n";
    else if (!rep.factors.empty()) {
        os << "factored: " << to_string(rep.factored_lead);
        for (const auto& [f, m] : rep.factors) {
            os << " * (" << poly_text(f) << ")";
            if (m > 1) os << "^" << m;
        }
        os << "\n";
    }
    os << "centered: p(1/2+u, v) = "
       << (rep.hc ? centered_q_string(*rep.hc, false) : poly_string(rep.centered, false, "u", "v"))
       << "\n";
    if (rep.reducibility) {
        const auto& red = *rep.reducibility;
        os << "reducible over C: yes; over R: " << (red.over_R ? "yes" : "no")
           << "; over Q: " << (red.over_Q ? "yes" : "no") << "\n";
    }
    if (rep.geography) {
        const auto& g = *rep.geography;
        os << "geography: h = " << to_string(g.h) << "; G over R: " << conic_class_name(g.class_R)
           << "; G over Q: " << conic_class_name(g.class_Q) << "\n";
        for (const auto& l : g.lines) {
            os << "  " << l.label << ": v = " << to_string(l.slope) << "*u";
            if (l.symbolic) {
                os << (l.sqrt_sign > 0 ? " + " : " - ") << "sqrt(" << to_string(g.h) << ")";
                if (g.r != 1) os << "/" << g.r;
            } else if (l.intercept > 0)
                os << " + " << to_string(l.intercept);
            else if (l.intercept < 0)
                os << " - " << to_string(-l.intercept);
            if (l.multiplicity > 1) os << "  (multiplicity " << l.multiplicity << ")";
            os << "\n";
        }
    }
    if (rep.classification) {
        if (rep.classification->empty())
            os << "classification: NoMatch\n";
        else
            for (const auto& m : rep.classification->matches) {
                os << "classification: " << family_name(m.family);
                for (const auto& [k, v] : m.params) os << " " << k << "=" << to_string(v);
                os << "\n";
            }
    }
    for (const auto& note : rep.notes) os << "note: " << note << "\n";
    return os.str();
}

inline std::string report_to_latex(const Report& rep) {
    std::ostringstream os;
    if (rep.hc) {
        os << "p = " << factored_string(factor_q(rep.hc->q()), true, "z") << ", \\quad z = "
           << (rep.hc->r == 1 ? "" : std::to_string(rep.hc->r)) << "y - "
           << (rep.hc->iota == 1 ? "" : std::to_string(rep.hc->iota)) << "x \\\\\n";
        os << "p\\left(\\tfrac{1}{2}+u, v\\right) = " << centered_q_string(*rep.hc, true) << "\n";
    } else {
        os << "p(x,y) = " << poly_latex(rep.expanded) << " \\\\\n";
        os << "p\\left(\\tfrac{1}{2}+u, v\\right) = " << poly_string(rep.centered, true, "u", "v")
           << "\n";
    }
    if (rep.geography) {
        const auto& g = *rep.geography;
        os << "\\Gamma_{\\mathbb{R}}:\\ ";
        bool first = true;
        for (const auto& l : g.lines) {
            if (!first) os << " + ";
            if (l.multiplicity > 1) os << l.multiplicity;
            os << "\\{v = " << latex_rational(l.slope) << "u";
            if (l.symbolic) {
                os << (l.sqrt_sign > 0 ? " + " : " - ") << "\\sqrt{" << latex_rational(g.h) << "}";
                if (g.r != 1) os << "/" << g.r;
            } else if (l.intercept > 0)
                os << " + " << latex_rational(l.intercept);
            else if (l.intercept < 0)
                os << " - " << latex_rational(-l.intercept);
            os << "\\}";
            first = false;
        }
        os << ", \\quad h = " << latex_rational(g.h) << ",\\ G_{\\mathbb{R}}\\ \\text{"
           << conic_class_name(g.class_R) << "},\\ G_{\\mathbb{Q}}\\ \\text{"
           << conic_class_name(g.class_Q) << "}\n";
    }
    return os.str();
}

}  // namespace hilb
