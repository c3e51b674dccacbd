#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "latsum/errors.hpp"
#include "latsum/expr.hpp"
#include "latsum/format.hpp"

namespace latsum {

// One catalog identity: lhs and rhs expressions plus verification policy.
struct Identity {
    std::string id;
    std::string group;
    std::string provenance;   // source location note (section/equation/table row)
    std::string display;      // human-readable formula
    std::string note;
    std::string lhs_text, rhs_text;
    ExprPtr lhs, rhs;
    bool expected_fail = false;
    bool complex_ok = false;        // RHS is not conjugation-closed
    double tol = 0.0;               // 0 -> default by route
    std::vector<Complex> s_grid;    // empty -> default by route
    bool direct_route = false;      // any Q/S/sig leaf on either side
};

struct VerificationRecord {
    std::string id;
    Complex s;
    Complex lhs{}, rhs{};
    double abs_err = 0.0, rel_err = 0.0, tol = 0.0;
    bool pass = false;
    bool expected_fail = false;
    bool unexpected = false;  // pass != !expected_fail
    std::string route;
    std::string error;        // nonempty when evaluation threw
    double seconds = 0.0;
};

class Catalog {
  public:
    std::map<std::string, ExprPtr> defs;
    std::vector<Identity> items;

    static Catalog load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw input_error("catalog: cannot open " + path);
        Catalog cat;
        std::string line;
        std::string cur_name;  // current [section]
        bool cur_is_def = false;
        std::map<std::string, std::string> fields;
        int lineno = 0;

        auto flush = [&]() {
            if (cur_name.empty()) return;
            if (cur_is_def) {
                auto it = fields.find("expr");
                if (it == fields.end())
                    throw input_error("catalog: def " + cur_name +
                                      " missing expr");
                cat.defs[cur_name] = parse_expr(it->second, &cat.defs);
            } else {
                Identity id;
                id.id = cur_name;
                id.group = fields.count("group") ? fields["group"] : cur_name;
                id.provenance = fields.count("provenance")
                                    ? fields["provenance"]
                                    : "";
                id.display = fields.count("display") ? fields["display"] : "";
                id.note = fields.count("note") ? fields["note"] : "";
                if (!fields.count("lhs") || !fields.count("rhs"))
                    throw input_error("catalog: " + cur_name +
                                      " missing lhs/rhs");
                id.lhs_text = fields["lhs"];
                id.rhs_text = fields["rhs"];
                id.lhs = parse_expr(id.lhs_text, &cat.defs);
                id.rhs = parse_expr(id.rhs_text, &cat.defs);
                if (fields.count("expect_fail"))
                    id.expected_fail = fields["expect_fail"] == "true";
                if (fields.count("complex_ok"))
                    id.complex_ok = fields["complex_ok"] == "true";
                if (fields.count("tol"))
                    id.tol = std::strtod(fields["tol"].c_str(), nullptr);
                if (fields.count("s_grid")) {
                    std::stringstream ss(fields["s_grid"]);
                    std::string tok;
                    while (std::getline(ss, tok, ','))
                        id.s_grid.push_back(parse_complex(tok));
                }
                id.direct_route =
                    has_direct_leaf(id.lhs) || has_direct_leaf(id.rhs);
                cat.items.push_back(std::move(id));
            }
            fields.clear();
            cur_name.clear();
        };

        while (std::getline(in, line)) {
            ++lineno;
            // strip comments and trailing ws
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            while (!line.empty() &&
                   (line.back() == ' ' || line.back() == '\t' ||
                    line.back() == '\r'))
                line.pop_back();
            size_t b = 0;
            while (b < line.size() && (line[b] == ' ' || line[b] == '\t')) ++b;
            line.erase(0, b);
            if (line.empty()) continue;
            if (line.front() == '[' && line.back() == ']') {
                flush();
                std::string name = line.substr(1, line.size() - 2);
                cur_is_def = name.rfind("def:", 0) == 0;
                cur_name = cur_is_def ? name.substr(4) : name;
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos || cur_name.empty())
                throw input_error("catalog: syntax error at line " +
                                  std::to_string(lineno));
            std::string key = line.substr(0, eq);
            while (!key.empty() && key.back() == ' ') key.pop_back();
            std::string val = line.substr(eq + 1);
            size_t vb = 0;
            while (vb < val.size() && val[vb] == ' ') ++vb;
            fields[key] = val.substr(vb);
        }
        flush();
        return cat;
    }

    static std::string default_path() {
        if (const char* env = std::getenv("LATSUM_CATALOG")) return env;
#ifdef LATSUM_CATALOG_FILE
        return LATSUM_CATALOG_FILE;
#else
        return "data/catalog.txt";
#endif
    }

    static Catalog builtin() { return load(default_path()); }

    const Identity* find(const std::string& id) const {
        for (const auto& it : items)
            if (it.id == id) return &it;
        return nullptr;
    }
};

struct VerifyOptions {
    std::vector<Complex> s_grid;  // override; empty -> per-identity defaults
    double tol = 0.0;             // override; 0 -> per-identity defaults
    int jobs = 1;
    // Leaf sums run at tol * factor.  The margin absorbs cancellation in
    // multi-leaf brackets (worst case eq. (4.6) j=6 rows, amplification ~50x).
    double direct_tol_factor = 0.02;
    std::vector<Complex> default_kl_grid{{1.5, 0.0}, {2.0, 0.0}, {2.5, 0.0},
                                         {3.0, 0.0}, {2.0, 1.0}};
    std::vector<Complex> default_direct_grid{{2.0, 0.0}, {2.5, 0.0},
                                             {3.0, 0.0}};
    double default_kl_tol = 1e-10;
    double default_direct_tol = 1e-6;
};

inline VerificationRecord verify_one(const Identity& id, Complex s, double tol,
                                     double direct_tol_factor) {
    VerificationRecord rec;
    rec.id = id.id;
    rec.s = s;
    rec.tol = tol;
    rec.expected_fail = id.expected_fail;
    auto t0 = std::chrono::steady_clock::now();
    EvalContext ctx;
    ctx.s = s;
    ctx.direct_tol = tol * direct_tol_factor;
    try {
        rec.lhs = eval(id.lhs, ctx);
        rec.rhs = eval(id.rhs, ctx);
        rec.abs_err = std::abs(rec.lhs - rec.rhs);
        double scale = std::max(std::abs(rec.lhs), std::abs(rec.rhs));
        rec.rel_err = scale > 0 ? rec.abs_err / scale : rec.abs_err;
        // relative comparison, absolute fallback for near-zero values
        rec.pass = std::abs(rec.rhs) < 1e-8 ? rec.abs_err <= tol
                                            : rec.rel_err <= tol;
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.pass = false;
    }
    rec.route = ctx.used_direct ? "direct" : "kl";
    rec.unexpected = (rec.pass == id.expected_fail);
    rec.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rec;
}

// Verify a set of identities over their grids.  Deterministic output order
// regardless of jobs: tasks are indexed up front and written to slots.
inline std::vector<VerificationRecord> verify(
    const std::vector<const Identity*>& ids, const VerifyOptions& opt = {}) {
    struct Task {
        const Identity* id;
        Complex s;
        double tol;
    };
    std::vector<Task> tasks;
    for (const Identity* id : ids) {
        double tol = opt.tol > 0.0 ? opt.tol
                     : id->tol > 0.0
                         ? id->tol
                         : (id->direct_route ? opt.default_direct_tol
                                             : opt.default_kl_tol);
        const std::vector<Complex>& grid =
            !opt.s_grid.empty()
                ? opt.s_grid
                : (!id->s_grid.empty()
                       ? id->s_grid
                       : (id->direct_route ? opt.default_direct_grid
                                           : opt.default_kl_grid));
        for (Complex s : grid) tasks.push_back({id, s, tol});
    }
    std::vector<VerificationRecord> out(tasks.size());
    int jobs = std::max(1, opt.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < tasks.size(); ++i)
            out[i] = verify_one(*tasks[i].id, tasks[i].s, tasks[i].tol,
                                opt.direct_tol_factor);
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= tasks.size()) break;
                out[i] = verify_one(*tasks[i].id, tasks[i].s, tasks[i].tol,
                                    opt.direct_tol_factor);
            }
        });
    for (auto& th : pool) th.join();
    return out;
}

} // namespace latsum
