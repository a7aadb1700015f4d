// hilbcurve: construct, classify, cross-check and render Hilbert curves of
// polarized manifolds. Everything is exact rational arithmetic.

#include "hilbcurve/hilbcurve.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace hilb;

namespace {

// Exit codes: 0 success (including NoMatch), 1 usage, 2 mathematical
// inconsistency, 3 input parse failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMath = 2;
constexpr int kExitParse = 3;

struct MathError {
    std::string message;
};
struct ParseFailure {
    std::string message;
};

std::string default_format() {
    if (const char* env = std::getenv("HILBCURVE_FORMAT")) return env;
    return "text";
}

void emit(const Report& rep, const std::string& format) {
    if (format == "json")
        std::cout << report_to_json(rep).dump(2) << "\n";
    else if (format == "latex")
        std::cout << report_to_latex(rep);
    else
        std::cout << report_to_text(rep);
}

Json slurp_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseFailure{"cannot open " + path};
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseFailure{path + ": " + e.what()};
    }
}

std::vector<Int> parse_h0_list(const std::string& csv) {
    std::vector<Int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.emplace_back(item);
    }
    if (out.empty()) throw CLI::ValidationError("--h0", "expected a comma-separated list");
    return out;
}

Report base_report(const std::string& command, int n, int r, const BiPoly& p) {
    Report rep;
    rep.command = command;
    rep.n = n;
    rep.r = r;
    rep.expanded = p;
    rep.centered = centered_form(p);
    return rep;
}

// ---- fano -----------------------------------------------------------------

struct FanoArgs {
    int n = 0, index = 0, r = 1;
    std::string h0_csv, kind;
    long long d = 0;
    bool has_d = false;
    std::string format = default_format();
};

int run_fano(const FanoArgs& args) {
    FactoredHC hc;
    Json echo{{"n", args.n}, {"r", args.r}};
    std::string provenance;
    if (!args.h0_csv.empty()) {
        FanoInput in;
        in.n = args.n;
        in.iota = args.index;
        in.r = args.r;
        in.h0 = parse_h0_list(args.h0_csv);
        hc = fano_hc(in);
        echo["iota"] = args.index;
        Json h0 = Json::array();
        for (const auto& v : in.h0) h0.push_back(v.str());
        echo["h0"] = h0;
        provenance = "interpolated from the h^0 table through the Vandermonde system";
    } else {
        std::optional<Int> d;
        if (args.has_d) d = Int(args.d);
        hc = closed_form(fano_kind_from_string(args.kind), args.n, args.r, d);
        echo["kind"] = args.kind;
        if (args.has_d) echo["d"] = args.d;
        provenance = "closed form of the " + args.kind + " family";
    }
    Report rep = base_report("fano", args.n, args.r, hc.expanded);
    rep.input_echo = echo;
    attach_factored_hc(rep, hc);
    rep.reducibility = reducibility(hc);
    rep.notes.push_back(provenance);
    if (hc.iota == args.n - 1 && args.n >= 3) {
        Rational dq = Rational(factorial(args.n)) * hc.phi.lead();
        if (is_integer(dq) && numerator(dq) >= 1) {
            rep.geography = geography(args.n, to_int(dq), args.r);
            rep.notes.push_back("geography attached for the index n-1 pair, d = " + to_string(dq));
        }
    }
    emit(rep, args.format);
    return kExitOk;
}

// ---- fibration ------------------------------------------------------------

struct FibrationArgs {
    std::string base, family;
    int n = 0, r = 1;
    long long g = 0, d = 0, e = 0, a = 0, b = 0, delta = 0, t = 0;
    long long chi0 = 0, chiL = 0, k = 0, h = 0;
    bool has_chi = false;
    long long chi = 0;
    bool cross_check = false;
    std::string format = default_format();
};

// Recurrence route for the curve-scroll, with b = 0 and rational e = d/r^n.
BiPoly scroll_recurrence_route(int n, int r, long long g, long long d) {
    const Rational e = Rational(d) / pow_int(Rational(r), n);
    const Rational t = (2 * Rational(g) - 2 + e) * r;
    if (t == 0)
        throw MathError{"cross-check unavailable: the fiber-restriction step degenerates (t = 0)"};
    RecurrenceSpec spec = fiber_recurrence(1, r, n, t, BiPoly(Rational(1) / Rational(factorial(n - 1))));
    spec.constraints = {{0, 0, (1 - Rational(g)) / Rational(factorial(n - 1))},
                        {0, (2 * Rational(g) - 2 + e) / t,
                         (e + Rational(n) * (1 - Rational(g))) / Rational(factorial(n))}};
    auto out = solve_recurrence(spec);
    if (out.status != RecurrenceOutcome::Status::Solved)
        throw MathError{"cross-check recurrence was not uniquely solvable"};
    return out.solution * detail::forced_product(r, n, n - 1);
}

BiPoly quadric_recurrence_route(int n, int r, long long g, long long e, long long a, long long b) {
    Int t = quadric_fibration_t(n, r, g, e, a, b);
    if (t == 0)
        throw MathError{"cross-check unavailable: the fiber-restriction step degenerates (t = 0)"};
    UniPoly phi = UniPoly::from_coeffs(
        {Rational(1) / Rational(factorial(n - 2)), Rational(2) / Rational(factorial(n - 1))});
    auto spec = fiber_recurrence(2, r, n - 1, Rational(t), compose_line(phi, r, n - 1));
    spec.serre_parity = 0;
    Rational tr(t), br(b);
    spec.constraints = {{0, 0, (1 - Rational(g)) / Rational(factorial(n - 2))},
                        {-br / tr, (tr - (n - 1) * br) / (Rational(r) * tr),
                         (Rational(e) + (n + 1) * (1 - Rational(g))) / Rational(factorial(n - 1))}};
    auto out = solve_recurrence(spec);
    if (out.status != RecurrenceOutcome::Status::Solved)
        throw MathError{"cross-check recurrence was not uniquely solvable"};
    return out.solution * detail::forced_product(r, n - 1, n - 2);
}

BiPoly surface_scroll_chain_route(const SurfaceScrollInput& in, int s) {
    Rational q1 = 1 + Rational(s) * (Rational(in.k) + s * Rational(in.h)) / 2;
    Rational d = Rational(s) * (Rational(in.h) - Rational(in.k));
    Rational f2(factorial(in.n - 2)), f1(factorial(in.n - 1));
    std::vector<LevelConditions> conds(2);
    conds[1].constraints = {{0, 0, (1 - q1) / f2}, {0, 1, (d + (in.n - 1) * (1 - q1)) / f1}};
    conds[0].constraints = {{0, 0, Rational(in.chi0) / f2}, {0, 1, Rational(in.chiL) / f1}};
    conds[0].serre_parity = 0;
    auto chain = solve_base_chain(2, s, 1, in.n - 1, Rational(in.h), BiPoly(1 / f2), conds);
    if (chain.size() != 2 || chain[1].outcome.status != RecurrenceOutcome::Status::Solved)
        throw MathError{"cross-check chain was not uniquely solvable at level " +
                        std::to_string(chain.back().level)};
    return chain[1].outcome.solution * detail::forced_product(1, in.n - 1, in.n - 2);
}

void cross_check_or_throw(Report& rep, const BiPoly& closed, const BiPoly& alt,
                          const std::string& label) {
    if (closed != alt)
        throw MathError{"cross-check mismatch: closed form " + poly_text(closed) + " versus " +
                        label + " " + poly_text(alt)};
    rep.notes.push_back("cross-check: recurrence path agrees with the closed form");
}

int run_fibration(const FibrationArgs& args) {
    Report rep;
    if (args.base == "curve" && args.family == "scroll") {
        BiPoly p = scroll_over_curve(args.n, args.r, args.g, args.d);
        rep = base_report("fibration scroll/curve", args.n, args.r, p);
        rep.input_echo = Json{{"n", args.n}, {"r", args.r}, {"g", args.g}, {"d", args.d}};
        rep.factored_lead = Rational(1) / Rational(factorial(args.n));
        rep.factors.emplace_back(
            BiPoly::linear(Rational(2 * args.n * (args.g - 1)),
                           Rational(args.d) / pow_int(Rational(args.r), args.n - 1),
                           Rational(args.n * (1 - args.g))),
            1);
        for (int j = 1; j <= args.n - 1; ++j)
            rep.factors.emplace_back(BiPoly::linear(Rational(-args.n), Rational(args.r), Rational(j)), 1);
        if (args.cross_check)
            cross_check_or_throw(rep, p, scroll_recurrence_route(args.n, args.r, args.g, args.d),
                                 "recurrence route");
    } else if (args.base == "curve" && args.family == "quadric") {
        BiPoly p = quadric_fibration(args.n, args.r, args.g, args.e, args.a, args.b);
        rep = base_report("fibration quadric/curve", args.n, args.r, p);
        rep.input_echo = Json{{"n", args.n}, {"r", args.r}, {"g", args.g},
                              {"e", args.e}, {"a", args.a}, {"b", args.b}};
        auto bracket = detail::strip_forced(p, args.r, args.n - 1, args.n - 2);
        rep.factored_lead = 1;
        rep.factors.emplace_back(*bracket, 1);
        for (int j = 1; j <= args.n - 2; ++j)
            rep.factors.emplace_back(BiPoly::linear(Rational(-(args.n - 1)), Rational(args.r), Rational(j)), 1);
        rep.notes.push_back("t = " +
                            quadric_fibration_t(args.n, args.r, args.g, args.e, args.a, args.b).str());
        if (args.cross_check)
            cross_check_or_throw(
                rep, p, quadric_recurrence_route(args.n, args.r, args.g, args.e, args.a, args.b),
                "recurrence route");
    } else if (args.base == "curve" && args.family == "delpezzo") {
        std::optional<Int> chi;
        if (args.has_chi) chi = Int(args.chi);
        auto f = delpezzo_fibration(args.n, args.g, args.d, args.delta, args.t, chi);
        rep = base_report("fibration delpezzo/curve", args.n, 1, f.p);
        rep.input_echo = Json{{"n", args.n}, {"g", args.g},     {"d", args.d},
                              {"delta", args.delta}, {"t", args.t}};
        auto bracket = detail::strip_forced(f.p, 1, args.n - 2, args.n - 3);
        rep.factored_lead = 1;
        rep.factors.emplace_back(*bracket, 1);
        for (int j = 1; j <= args.n - 3; ++j)
            rep.factors.emplace_back(BiPoly::linear(Rational(-(args.n - 2)), 1, Rational(j)), 1);
        rep.notes.push_back("chi(L) = " + to_string(f.chi));
        bool relations = f.c.at({3, 0}) == 4 * f.c.at({0, 0}) + 2 * f.c.at({1, 0}) &&
                         f.c.at({2, 1}) == -f.c.at({1, 1}) && f.c.at({1, 2}) == -2 * f.c.at({0, 2}) &&
                         f.c.at({2, 0}) == -6 * f.c.at({0, 0}) - 3 * f.c.at({1, 0});
        Json cij = Json::object();
        for (const auto& [ij, v] : f.c)
            cij["c" + std::to_string(ij.first) + std::to_string(ij.second)] = to_string(v);
        rep.input_echo["c_ij"] = cij;
        if (!relations) throw MathError{"coefficient relations violated"};
        rep.notes.push_back("coefficient relations c30=4c00+2c10, c21=-c11, c12=-2c02, "
                            "c20=-6c00-3c10 verified");
    } else if (args.base == "surface") {
        SurfaceScrollInput in{args.n, args.chi0, args.chiL, args.k, args.h};
        BiPoly p = scroll_over_surface(in);
        rep = base_report("fibration scroll/surface", args.n, 1, p);
        rep.input_echo = Json{{"n", args.n}, {"chi0", args.chi0}, {"chiL", args.chiL},
                              {"k", args.k}, {"h", args.h}};
        auto bracket = detail::strip_forced(p, 1, args.n - 1, args.n - 2);
        rep.factored_lead = 1;
        rep.factors.emplace_back(*bracket, 1);
        for (int j = 1; j <= args.n - 2; ++j)
            rep.factors.emplace_back(BiPoly::linear(Rational(-(args.n - 1)), 1, Rational(j)), 1);
        if (args.cross_check) {
            BiPoly via1 = surface_scroll_chain_route(in, 1);
            BiPoly via2 = surface_scroll_chain_route(in, 2);
            if (via1 != via2) throw MathError{"chain routes at s=1 and s=2 disagree"};
            cross_check_or_throw(rep, p, via1, "chain route");
        }
    } else {
        throw CLI::ValidationError("--family", "unsupported base/family combination");
    }
    emit(rep, args.format);
    return kExitOk;
}

// ---- toric ----------------------------------------------------------------

struct ToricArgs {
    std::string file;
    int id = 0;
    bool has_id = false;
    int r = 1;
    bool sweep = false;
    std::string format = default_format();
};

struct ToricRowResult {
    int id = 0;
    std::string error;
    ToricFanoRecord record;
    ToricHC hc;
    std::vector<std::string> notes;
};

int run_toric(const ToricArgs& args) {
    auto records = polytope_file_from_json(slurp_json(args.file));
    if (!args.sweep && !args.has_id)
        throw CLI::ValidationError("--id", "give --id N or --sweep");

    auto build_row = [&](const PolytopeRecordJson& rec) {
        ToricRowResult row;
        row.id = rec.id.value_or(0);
        try {
            row.record = ToricFanoRecord::build(rec.primal, rec.dual, rec.id);
            row.hc = toric_hc(row.record, args.r);
            if (rec.printed_p && *rec.printed_p != row.hc.hc.q())
                row.notes.push_back(
                    "computed q(z) = " + unipoly_string(row.hc.hc.q(), false) +
                    " differs from the catalogued printed form " +
                    unipoly_string(*rec.printed_p, false) +
                    "; the direct section count chi(tH) confirms the computed polynomial");
            if (rec.iota && *rec.iota != row.record.iota)
                row.notes.push_back("catalogued iota " + std::to_string(*rec.iota) +
                                    " differs from the computed " + std::to_string(row.record.iota));
            if (rec.degree && *rec.degree != row.record.degree)
                row.notes.push_back("catalogued degree " + rec.degree->str() +
                                    " differs from the computed " + row.record.degree.str());
            if (rec.vol && *rec.vol != row.record.vol_primal)
                row.notes.push_back("catalogued volume " + rec.vol->str() +
                                    " differs from the computed " + row.record.vol_primal.str());
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        return row;
    };

    if (args.sweep) {
        // independent records; merge by id regardless of completion order
        std::vector<std::future<ToricRowResult>> futures;
        for (const auto& rec : records)
            futures.push_back(std::async(std::launch::async, build_row, std::cref(rec)));
        std::map<int, ToricRowResult> rows;
        for (auto& f : futures) {
            ToricRowResult row = f.get();
            rows[row.id] = std::move(row);
        }
        Json out = Json::array();
        for (const auto& [id, row] : rows) {
            if (!row.error.empty()) {
                if (args.format == "json")
                    out.push_back({{"id", id}, {"error", row.error}});
                else
                    std::cout << id << "  ERROR: " << row.error << "\n";
                continue;
            }
            if (args.format == "json") {
                Json j{{"id", id},
                       {"iota", row.record.iota},
                       {"degree", row.record.degree.str()},
                       {"vol", row.record.vol_primal.str()},
                       {"q", unipoly_to_json(row.hc.hc.q())},
                       {"q_factored", factored_q_string(row.hc.hc, false)},
                       {"totally_Q_reducible", row.hc.reducibility.over_Q}};
                if (!row.notes.empty()) j["notes"] = row.notes;
                out.push_back(j);
            } else if (args.format == "latex") {
                std::cout << id << " & " << row.record.iota << " & "
                          << factored_string(factor_q(row.hc.hc.q()), true, "z") << " & "
                          << row.record.degree << " & " << row.record.vol_primal << " & "
                          << (row.hc.reducibility.over_Q ? "yes" : "no") << " \\\\\n";
            } else {
                std::cout << id << "  iota=" << row.record.iota << "  (-K)^n=" << row.record.degree
                          << "  Vol=" << row.record.vol_primal
                          << "  q = " << factored_string(factor_q(row.hc.hc.q()), false, "z")
                          << "  Q-reducible: " << (row.hc.reducibility.over_Q ? "yes" : "no") << "\n";
                for (const auto& note : row.notes) std::cout << "    note: " << note << "\n";
            }
        }
        if (args.format == "json") std::cout << out.dump(2) << "\n";
        return kExitOk;
    }

    for (const auto& rec : records) {
        if (!rec.id || *rec.id != args.id) continue;
        ToricRowResult row = build_row(rec);
        if (!row.error.empty()) throw MathError{row.error};
        Report rep = base_report("toric", row.record.n, args.r, row.hc.hc.expanded);
        rep.input_echo = Json{{"file", args.file}, {"id", args.id}, {"r", args.r},
                              {"iota", row.record.iota},
                              {"degree", row.record.degree.str()},
                              {"vol", row.record.vol_primal.str()}};
        attach_factored_hc(rep, row.hc.hc);
        rep.reducibility = row.hc.reducibility;
        rep.notes = row.notes;
        rep.notes.push_back("assembled from lattice-point counts of the fundamental divisor");
        emit(rep, args.format);
        return kExitOk;
    }
    throw ParseFailure{"no record with id " + std::to_string(args.id) + " in " + args.file};
}

// ---- classify ---------------------------------------------------------------

struct ClassifyArgs {
    std::string poly_file;
    int n = 0, r = 1;
    std::string format = default_format();
};

int run_classify(const ClassifyArgs& args) {
    Json j = slurp_json(args.poly_file);
    BiPoly p;
    try {
        if (j.contains("polynomial"))
            p = bipoly_from_json(j.at("polynomial").at("expanded"));
        else
            p = bipoly_from_json(j);
    } catch (const Json::exception& e) {
        throw ParseFailure{std::string("polynomial JSON: ") + e.what()};
    } catch (const std::invalid_argument& e) {
        throw ParseFailure{std::string("polynomial JSON: ") + e.what()};
    }
    Report rep = base_report("classify", args.n, args.r, p);
    rep.input_echo = Json{{"poly", args.poly_file}, {"n", args.n}, {"r", args.r}};
    rep.classification = match_canonical(p, args.n, args.r);
    emit(rep, args.format);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Hilbert curves of polarized manifolds"};
    app.require_subcommand(1);
    // the surface-scroll data uses a literal --h for A^2, so help is --help only
    app.set_help_flag("--help", "print help");

    FanoArgs fano_args;
    auto* fano = app.add_subcommand("fano", "Hilbert curve of a Fano pair (rk<K,L> = 1)");
    fano->set_help_flag("--help", "print help");
    fano->add_option("--n", fano_args.n, "dimension")->required();
    fano->add_option("--r", fano_args.r, "L = r H");
    fano->add_option("--index", fano_args.index, "Fano index iota (with --h0)");
    auto* h0_opt = fano->add_option("--h0", fano_args.h0_csv, "h^0(sH) for s = 0..coindex, comma separated");
    auto* kind_opt = fano->add_option("--kind", fano_args.kind, "pn|quadric|delpezzo|mukai")
                         ->check(CLI::IsMember({"pn", "quadric", "delpezzo", "mukai"}));
    auto* d_opt = fano->add_option("--d", fano_args.d, "degree d = H^n (delpezzo/mukai)");
    fano->add_option("--format", fano_args.format, "text|json|latex");
    h0_opt->excludes(kind_opt);
    h0_opt->needs(fano->get_option("--index"));

    FibrationArgs fib_args;
    auto* fib = app.add_subcommand("fibration", "Hilbert curve of a Fano fibration (rk<K,L> = 2)");
    fib->set_help_flag("--help", "print help");
    fib->add_option("--base", fib_args.base, "curve|surface")
        ->required()
        ->check(CLI::IsMember({"curve", "surface"}));
    fib->add_option("--family", fib_args.family, "scroll|quadric|delpezzo")
        ->check(CLI::IsMember({"scroll", "quadric", "delpezzo"}));
    fib->add_option("--n", fib_args.n, "dimension")->required();
    fib->add_option("--r", fib_args.r, "fiber polarization multiple");
    fib->add_option("--g", fib_args.g, "base curve genus");
    fib->add_option("--d", fib_args.d, "degree L^n");
    fib->add_option("--e", fib_args.e, "deg E");
    fib->add_option("--a", fib_args.a, "deg A");
    fib->add_option("--b", fib_args.b, "deg B");
    fib->add_option("--delta", fib_args.delta, "F . L^{n-1}");
    fib->add_option("--t", fib_args.t, "K + (n-2)L = t F");
    auto* chi_opt = fib->add_option("--chi", fib_args.chi, "chi(L), validated against the data");
    fib->add_option("--chi0", fib_args.chi0, "chi(O_S)");
    fib->add_option("--chiL", fib_args.chiL, "chi(L)");
    fib->add_option("--k", fib_args.k, "K_S . A");
    fib->add_option("--h", fib_args.h, "A^2");
    fib->add_flag("--cross-check", fib_args.cross_check, "also run the recurrence route");
    fib->add_option("--format", fib_args.format, "text|json|latex");

    ToricArgs toric_args;
    auto* toric = app.add_subcommand("toric", "Hilbert curves of toric Fano records");
    toric->set_help_flag("--help", "print help");
    toric->add_option("--file", toric_args.file, "polytope JSON file")->required();
    auto* id_opt = toric->add_option("--id", toric_args.id, "record id");
    toric->add_option("--r", toric_args.r, "L = r H");
    toric->add_flag("--sweep", toric_args.sweep, "process every record");
    toric->add_option("--format", toric_args.format, "text|json|latex");

    ClassifyArgs cls_args;
    auto* cls = app.add_subcommand("classify", "match a polynomial against the canonical families");
    cls->set_help_flag("--help", "print help");
    cls->add_option("--poly", cls_args.poly_file, "polynomial JSON file")->required();
    cls->add_option("--n", cls_args.n, "dimension")->required();
    cls->add_option("--r", cls_args.r, "polarization multiple");
    cls->add_option("--format", cls_args.format, "text|json|latex");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*fano) {
            if (fano_args.h0_csv.empty() == fano_args.kind.empty()) {
                std::cerr << "fano: give exactly one of --h0 (with --index) or --kind\n";
                return kExitUsage;
            }
            fano_args.has_d = d_opt->count() > 0;
            return run_fano(fano_args);
        }
        if (*fib) {
            fib_args.has_chi = chi_opt->count() > 0;
            if (fib_args.base == "curve" && fib_args.family.empty()) {
                std::cerr << "fibration: --family is required over a curve base\n";
                return kExitUsage;
            }
            if (fib_args.base == "surface" && !fib_args.family.empty() && fib_args.family != "scroll") {
                std::cerr << "fibration: only the scroll family is catalogued over a surface base\n";
                return kExitUsage;
            }
            return run_fibration(fib_args);
        }
        if (*toric) {
            toric_args.has_id = id_opt->count() > 0;
            return run_toric(toric_args);
        }
        if (*cls) return run_classify(cls_args);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseFailure& e) {
        std::cerr << "parse failure: " << e.message << "\n";
        return kExitParse;
    } catch (const MathError& e) {
        std::cerr << "inconsistency: " << e.message << "\n";
        return kExitMath;
    } catch (const Json::exception& e) {
        std::cerr << "parse failure: " << e.what() << "\n";
        return kExitParse;
    } catch (const InconsistentInvariantsError& e) {
        std::cerr << "inconsistency: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    }
    return kExitUsage;
}
