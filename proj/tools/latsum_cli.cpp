// latsum — Dirichlet characters, L-series, and 2-D lattice sums.
//
// Subcommands:
//   characters --modulus K            enumerate characters mod K
//   lseries    --label "L_{-4}" --s 2 evaluate an L-series (or --special m)
//   sum        q|s|sigma|t ...        evaluate a lattice sum
//   verify     --all | --id ID ...    check catalog identities
//   funceq     --r R --s S            functional-equation check for T
//   pole       --r R                  Laurent data of T at s=1 and s=0 slope
//   table1     [--s S]                closed forms vs resummation, r=1..13
//
// Exit codes: 0 ok, 1 verification failure, 2 usage/input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "latsum/latsum.hpp"

using json = nlohmann::ordered_json;
using namespace latsum;

namespace {

json complex_json(Complex z) {
    if (z.imag() == 0.0) return json(z.real());
    return json{{"re", z.real()}, {"im", z.imag()}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_characters(long modulus, const std::string& format) {
    auto chars = enumerate_characters(modulus);
    if (format == "json") {
        json rows = json::array();
        for (const auto& chi : chars) {
            json vals = json::array();
            for (long n = 0; n < chi.modulus(); ++n)
                vals.push_back(chi.at(n).str(
                    detail::ambient_order(chi.modulus())));
            rows.push_back({{"label", chi.label()},
                            {"parity", chi.parity_sign()},
                            {"conductor", chi.conductor()},
                            {"primitive", chi.is_primitive()},
                            {"principal", chi.is_principal()},
                            {"real", chi.is_real()},
                            {"order", chi.order()},
                            {"values", vals}});
        }
        emit(json{{"command", "characters"},
                  {"modulus", modulus},
                  {"count", chars.size()},
                  {"characters", rows}});
        return 0;
    }
    std::printf("characters mod %ld: %zu\n", modulus, chars.size());
    unsigned amb = detail::ambient_order(modulus);
    for (const auto& chi : chars) {
        std::printf("%-28s parity=%+d conductor=%-4ld %s%s values:",
                    chi.label().c_str(), chi.parity_sign(), chi.conductor(),
                    chi.is_primitive() ? "primitive" : "imprimitive",
                    chi.is_principal() ? " principal" : "");
        for (long n = 1; n < chi.modulus() || (chi.modulus() == 1 && n == 1);
             ++n)
            std::printf(" %s", chi.at(n).str(amb).c_str());
        if (chi.modulus() == 1) std::printf(" 1");
        std::printf("\n");
    }
    return 0;
}

int cmd_lseries(const std::string& label, long modulus, const std::string& sstr,
                int special_m, const std::string& format, bool list) {
    if (list || (label.empty() && special_m < 0 && modulus > 0)) {
        // list labels for a modulus
        auto chars = enumerate_characters(modulus > 0 ? modulus : 1);
        json rows = json::array();
        for (const auto& chi : chars) rows.push_back(chi.label());
        if (format == "json") {
            emit(json{{"command", "lseries"},
                      {"modulus", modulus},
                      {"labels", rows}});
        } else {
            for (const auto& chi : chars)
                std::printf("%s\n", chi.label().c_str());
        }
        return 0;
    }
    if (label.empty()) throw input_error("lseries: --label required");
    DirichletCharacter chi = character_by_label(label);
    if (special_m >= 0) {
        auto sv = l_special_value(chi, static_cast<unsigned>(special_m));
        double numeric = l_series(chi, Complex(special_m, 0.0)).real();
        if (format == "json") {
            emit(json{{"command", "lseries"},
                      {"label", chi.label()},
                      {"special_m", special_m},
                      {"closed_form", sv.str()},
                      {"rational", rational_str(sv.R)},
                      {"value", sv.value()},
                      {"series_value", numeric},
                      {"abs_diff", std::abs(sv.value() - numeric)}});
        } else {
            std::printf("%s(%d) = %s = %s\n", chi.label().c_str(), special_m,
                        sv.str().c_str(), format_double(sv.value()).c_str());
            std::printf("series value        %s\n",
                        format_double(numeric).c_str());
        }
        return 0;
    }
    Complex s = parse_complex(sstr);
    Complex v = (s == Complex(1.0, 0.0) && !chi.is_principal())
                    ? l_series_at_1(chi)
                    : l_series(chi, s);
    if (format == "json") {
        emit(json{{"command", "lseries"},
                  {"label", chi.label()},
                  {"s", format_complex(s)},
                  {"value", complex_json(v)}});
    } else {
        std::printf("%s(%s) = %s\n", chi.label().c_str(),
                    format_complex(s).c_str(), format_complex(v).c_str());
    }
    return 0;
}

json sum_result_json(const SumResult& r) {
    json j;
    j["value"] = complex_json(r.value);
    j["error_estimate"] = r.error_estimate;
    j["error_kind"] = r.error_kind == ErrorKind::Proven ? "proven" : "empirical";
    if (r.radius > 0) j["radius"] = r.radius;
    j["terms"] = r.terms;
    j["seconds"] = r.seconds;
    if (r.convergence_warning) j["convergence_warning"] = true;
    return j;
}

void print_sum_result(const std::string& name, const SumResult& r) {
    std::printf("%s = %s\n", name.c_str(), format_complex(r.value).c_str());
    std::printf("  error %s %.3e, terms %llu, %.3fs%s\n",
                r.error_kind == ErrorKind::Proven ? "bound" : "estimate",
                r.error_estimate, static_cast<unsigned long long>(r.terms),
                r.seconds, r.convergence_warning ? "  [convergence warning]" : "");
}

int cmd_sum(const std::string& kind, std::vector<long> abc,
            std::vector<long> prj, long r_param, const std::string& sstr,
            double tol, long max_radius, bool use_mellin,
            const std::string& format) {
    Complex s = parse_complex(sstr);
    SumResult res;
    std::string name;
    if (kind == "q") {
        if (abc.size() != 3) throw input_error("sum q: need --abc a,b,c");
        if (use_mellin) {
            if (!(abc[0] == 1 && abc[1] == 0))
                throw input_error("sum q --mellin: form must be (1,0,lam)");
            QuadratureSpec qs;
            qs.rel_tol = tol;
            res = q_theta_mellin(abc[2], s, qs);
        } else {
            res = q_sum(abc[0], abc[1], abc[2], s, tol, max_radius);
        }
        name = "Q(" + std::to_string(abc[0]) + "," + std::to_string(abc[1]) +
               "," + std::to_string(abc[2]) + "; " + format_complex(s) + ")";
    } else if (kind == "s") {
        if (prj.size() != 3) throw input_error("sum s: need --prj p,r,j");
        if (use_mellin) {
            QuadratureSpec qs;
            qs.rel_tol = tol;
            res = s_sum_via_theta(prj[0], prj[1], prj[2], s, qs);
        } else {
            res = s_sum(prj[0], prj[1], prj[2], s, tol, max_radius);
        }
        name = "S(" + std::to_string(prj[0]) + "," + std::to_string(prj[1]) +
               "," + std::to_string(prj[2]) + "; " + format_complex(s) + ")";
    } else if (kind == "sigma") {
        if (prj.size() != 3) throw input_error("sum sigma: need --prj p,r,j");
        res = sigma_sum(prj[0], prj[1], prj[2], s, tol, max_radius);
        name = "sigma(" + std::to_string(prj[0]) + "," +
               std::to_string(prj[1]) + "," + std::to_string(prj[2]) + "; " +
               format_complex(s) + ")";
    } else if (kind == "t") {
        name = "T(1,0,-" + std::to_string(r_param * r_param) + "; " +
               format_complex(s) + ")";
        if (use_mellin)
            throw input_error("sum t: no mellin route");
        if (max_radius > 0 && max_radius != 2000000) {
            res = t_direct(r_param, s, max_radius);
        } else {
            res.value = t_via_kl(r_param, s);
            res.error_estimate = 1e-12 * std::abs(res.value);
            res.error_kind = ErrorKind::Empirical;
        }
    } else {
        throw input_error("sum: kind must be q, s, sigma or t");
    }
    if (format == "json") {
        json j{{"command", "sum"}, {"kind", kind}, {"name", name},
               {"s", format_complex(s)}};
        j.update(sum_result_json(res));
        emit(j);
    } else {
        print_sum_result(name, res);
    }
    return 0;
}

int cmd_verify(bool all, std::vector<std::string> ids,
               std::vector<std::string> groups, const std::string& sgrid,
               double tol, int jobs, const std::string& report) {
    Catalog cat = Catalog::builtin();
    std::vector<const Identity*> sel;
    if (all || (ids.empty() && groups.empty())) {
        for (const auto& it : cat.items) sel.push_back(&it);
    } else {
        for (const auto& id : ids) {
            const Identity* p = cat.find(id);
            if (!p) throw input_error("verify: unknown id " + id);
            sel.push_back(p);
        }
        for (const auto& g : groups)
            for (const auto& it : cat.items)
                if (it.group == g) sel.push_back(&it);
        if (sel.empty()) throw input_error("verify: no identities selected");
    }
    VerifyOptions opt;
    opt.tol = tol;
    opt.jobs = jobs;
    if (!sgrid.empty()) {
        std::stringstream ss(sgrid);
        std::string tok;
        while (std::getline(ss, tok, ','))
            opt.s_grid.push_back(parse_complex(tok));
    }
    auto recs = verify(sel, opt);

    int unexpected = 0;
    for (const auto& r : recs)
        if (r.unexpected) ++unexpected;

    if (report == "json") {
        json rows = json::array();
        for (const auto& r : recs) {
            json row{{"id", r.id},
                     {"s", format_complex(r.s)},
                     {"route", r.route},
                     {"tol", r.tol},
                     {"pass", r.pass},
                     {"expected_fail", r.expected_fail},
                     {"unexpected", r.unexpected}};
            if (r.error.empty()) {
                row["lhs"] = complex_json(r.lhs);
                row["rhs"] = complex_json(r.rhs);
                row["abs_err"] = r.abs_err;
                row["rel_err"] = r.rel_err;
            } else {
                row["error"] = r.error;
            }
            rows.push_back(row);
        }
        emit(json{{"command", "verify"},
                  {"identities", sel.size()},
                  {"checks", recs.size()},
                  {"unexpected_failures", unexpected},
                  {"records", rows}});
    } else if (report == "csv") {
        std::printf("id,s,route,tol,rel_err,pass,expected_fail,unexpected\n");
        for (const auto& r : recs)
            std::printf("%s,%s,%s,%s,%s,%d,%d,%d\n", r.id.c_str(),
                        format_complex(r.s).c_str(), r.route.c_str(),
                        format_double(r.tol).c_str(),
                        r.error.empty() ? format_double(r.rel_err).c_str()
                                        : "error",
                        static_cast<int>(r.pass),
                        static_cast<int>(r.expected_fail),
                        static_cast<int>(r.unexpected));
    } else {
        for (const auto& r : recs) {
            const char* status =
                r.unexpected ? (r.pass ? "UNEXPECTED-PASS" : "FAIL")
                             : (r.pass ? "pass" : "xfail");
            if (r.error.empty())
                std::printf("%-16s %-28s s=%-8s %-6s rel=%.3e tol=%.1e %s\n",
                            status, r.id.c_str(), format_complex(r.s).c_str(),
                            r.route.c_str(), r.rel_err, r.tol,
                            r.expected_fail ? "(expected fail)" : "");
            else
                std::printf("%-16s %-28s s=%-8s %-6s error: %s\n", status,
                            r.id.c_str(), format_complex(r.s).c_str(),
                            r.route.c_str(), r.error.c_str());
        }
        std::fprintf(stderr, "%zu checks, %d unexpected\n", recs.size(),
                     unexpected);
    }
    return unexpected == 0 ? 0 : 1;
}

int cmd_funceq(long r, const std::string& sstr, double tol,
               const std::string& format) {
    Complex s = parse_complex(sstr);
    auto res = functional_equation_check(r, s, tol);
    if (format == "json") {
        emit(json{{"command", "funceq"},
                  {"r", r},
                  {"s", format_complex(s)},
                  {"lhs", complex_json(res.lhs)},
                  {"rhs", complex_json(res.rhs)},
                  {"rel_err", res.rel_err},
                  {"tol", tol},
                  {"pass", res.pass}});
    } else {
        std::printf("T(s)               = %s\n",
                    format_complex(res.lhs).c_str());
        std::printf("reflection of T(1-s) = %s\n",
                    format_complex(res.rhs).c_str());
        std::printf("rel err %.3e  tol %.1e  %s\n", res.rel_err, tol,
                    res.pass ? "pass" : "FAIL");
    }
    return res.pass ? 0 : 1;
}

int cmd_pole(long r, const std::string& format) {
    auto p = pole_expansion(r);
    auto z = zero_expansion(r);
    double ref = pole_constant_reference(r);
    if (format == "json") {
        json j{{"command", "pole"},
               {"r", r},
               {"laurent",
                {{"c_minus2", p.c_m2},
                 {"c_minus2_expected", p.expected_m2},
                 {"c_minus1", p.c_m1},
                 {"c_minus1_expected", p.expected_m1},
                 {"c0", p.c_0},
                 {"C_r", p.Cr}}},
               {"zero",
                {{"value_at_0", z.value_at_0},
                 {"slope", z.slope},
                 {"slope_expected", z.slope_expected}}}};
        if (!std::isnan(ref)) j["laurent"]["C_r_reference"] = ref;
        emit(j);
    } else {
        std::printf("T(1,0,-%ld^2) near s=1:\n", r);
        std::printf("  c_-2 = %.12g   (expected %.12g, err %.2e)\n", p.c_m2,
                    p.expected_m2, p.err_m2);
        std::printf("  c_-1 = %.12g   (expected %.12g, err %.2e)\n", p.c_m1,
                    p.expected_m1, p.err_m1);
        std::printf("  c_0  = %.12g   C(r) = %.12g", p.c_0, p.Cr);
        if (!std::isnan(ref))
            std::printf("   (reference %.12g, err %.2e)", ref,
                        std::abs(p.Cr - ref));
        std::printf("\n");
        std::printf("near s=0: T(0) = %.15g, slope = %.12g (expected %.12g)\n",
                    z.value_at_0, z.slope, z.slope_expected);
    }
    return 0;
}

int cmd_table1(const std::string& sstr, double tol, const std::string& format) {
    Complex s = parse_complex(sstr);
    Catalog cat = Catalog::builtin();
    json rows = json::array();
    int fails = 0;
    for (int r = 1; r <= 13; ++r) {
        std::string id = "table1.r" + std::to_string(r);
        const Identity* it = cat.find(id);
        if (!it) throw input_error("catalog is missing " + id);
        auto rec = verify_one(*it, s, tol, 0.1);
        if (!rec.pass) ++fails;
        if (format == "json") {
            rows.push_back({{"r", r},
                            {"display", it->display},
                            {"lhs", complex_json(rec.lhs)},
                            {"rhs", complex_json(rec.rhs)},
                            {"rel_err", rec.rel_err},
                            {"pass", rec.pass}});
        } else {
            std::printf("r=%-3d %-10s rel=%.3e  %s\n", r,
                        format_complex(rec.lhs).c_str(), rec.rel_err,
                        rec.pass ? "pass" : "FAIL");
            if (!it->display.empty())
                std::printf("      %s\n", it->display.c_str());
        }
    }
    if (format == "json")
        emit(json{{"command", "table1"},
                  {"s", format_complex(s)},
                  {"tol", tol},
                  {"failures", fails},
                  {"rows", rows}});
    return fails == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"latsum: Dirichlet characters, L-series and lattice sums"};
    app.require_subcommand(1);
    std::string format = "table";

    auto* c_chars = app.add_subcommand("characters",
                                       "Enumerate Dirichlet characters");
    long modulus = 0;
    c_chars->add_option("--modulus,-k", modulus, "modulus")->required();
    c_chars->add_option("--format", format, "table|json");

    auto* c_lser = app.add_subcommand("lseries", "Evaluate Dirichlet L-series");
    std::string label, sstr = "2";
    int special_m = -1;
    bool list = false;
    long lmod = 0;
    c_lser->add_option("--label", label, "character label, e.g. L_{-4}");
    c_lser->add_option("--modulus,-k", lmod, "modulus (with --list)");
    c_lser->add_flag("--list", list, "list labels for --modulus");
    c_lser->add_option("--s", sstr, "evaluation point (complex ok)");
    c_lser->add_option("--special", special_m,
                       "exact special value at integer m");
    c_lser->add_option("--format", format, "table|json");

    auto* c_sum = app.add_subcommand("sum", "Evaluate a lattice sum");
    std::string kind;
    std::vector<long> abc, prj;
    long r_param = 1;
    double tol = 1e-8;
    long max_radius = 2000000;
    bool use_mellin = false;
    long a_val = 0, b_val = 0, c_val = 0, p_val = 0, j_val = 0;
    c_sum->add_option("kind", kind, "q|s|sigma|t")->required();
    c_sum->add_option("--abc", abc, "Q form coefficients a,b,c")
        ->delimiter(',');
    c_sum->add_option("--prj", prj, "S/sigma parameters p,r,j")->delimiter(',');
    auto* opt_a = c_sum->add_option("--a", a_val, "Q coefficient a");
    c_sum->add_option("--b", b_val, "Q coefficient b");
    auto* opt_c = c_sum->add_option("--c", c_val, "Q coefficient c");
    auto* opt_p = c_sum->add_option("--p", p_val, "S/sigma parameter p");
    auto* opt_j = c_sum->add_option("--j", j_val, "S/sigma parameter j");
    c_sum->add_option("--r", r_param, "T parameter r (also S/sigma r with --p/--j)");
    c_sum->add_option("--s", sstr, "evaluation point");
    c_sum->add_option("--tol", tol, "relative tolerance");
    c_sum->add_option("--max-radius", max_radius,
                      "shell cap (t: direct-sum radius)");
    c_sum->add_flag("--mellin", use_mellin, "theta-Mellin quadrature route");
    c_sum->add_option("--format", format, "table|json");

    auto* c_ver = app.add_subcommand("verify", "Verify catalog identities");
    bool all = false;
    std::vector<std::string> ids, groups;
    std::string sgrid;
    double vtol = 0.0;
    int jobs = 1;
    std::string report = "table";
    c_ver->add_flag("--all", all, "verify the whole catalog");
    c_ver->add_option("--id", ids, "identity id (repeatable)");
    c_ver->add_option("--group", groups, "identity group (repeatable)");
    c_ver->add_option("--s-grid", sgrid, "comma-separated s values");
    c_ver->add_option("--tol", vtol, "tolerance override");
    c_ver->add_option("--jobs", jobs, "worker threads");
    c_ver->add_option("--report,--format", report, "table|json|csv");

    auto* c_feq = app.add_subcommand("funceq", "Functional equation for T");
    long feq_r = 1;
    double feq_tol = 1e-8;
    c_feq->add_option("--r", feq_r, "r parameter")->required();
    c_feq->add_option("--s", sstr, "evaluation point")->required();
    c_feq->add_option("--tol", feq_tol, "tolerance");
    c_feq->add_option("--format", format, "table|json");

    auto* c_pole = app.add_subcommand("pole",
                                      "Laurent data of T at s=1 (and s=0)");
    long pole_r = 1;
    c_pole->add_option("--r", pole_r, "r parameter")->required();
    c_pole->add_option("--format", format, "table|json");

    auto* c_t1 = app.add_subcommand("table1",
                                    "Closed forms vs resummation, r=1..13");
    double t1_tol = 1e-10;
    c_t1->add_option("--s", sstr, "evaluation point");
    c_t1->add_option("--tol", t1_tol, "tolerance");
    c_t1->add_option("--format", format, "table|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*c_chars) return cmd_characters(modulus, format);
        if (*c_lser)
            return cmd_lseries(label, lmod, sstr, special_m, format, list);
        if (*c_sum) {
            if (abc.empty() && opt_a->count() && opt_c->count())
                abc = {a_val, b_val, c_val};
            if (prj.empty() && opt_p->count() && opt_j->count())
                prj = {p_val, r_param, j_val};
            return cmd_sum(kind, abc, prj, r_param, sstr, tol, max_radius,
                           use_mellin, format);
        }
        if (*c_ver)
            return cmd_verify(all, ids, groups, sgrid, vtol, jobs, report);
        if (*c_feq) return cmd_funceq(feq_r, sstr, feq_tol, format);
        if (*c_pole) return cmd_pole(pole_r, format);
        if (*c_t1) return cmd_table1(sstr, t1_tol, format);
    } catch (const input_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
