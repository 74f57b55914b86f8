#pragma once

/**
 * @file cli.hpp
 * @brief Command implementations behind the qdegen executable.
 *
 * Each command returns a JSON report (with the full RunConfig embedded), a
 * text rendering of it and an exit code: 0 pass, 2 check failure,
 * 3 usage or parameter error.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "classify.hpp"
#include "compactrep.hpp"
#include "degenrep.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "qarith.hpp"
#include "rational.hpp"
#include "verify.hpp"

namespace qdegen::cli {

enum ExitCode : int { exit_pass = 0, exit_fail = 2, exit_usage = 3 };

struct RunConfig {
    std::string command;
    int r = 3;
    int s = 3;
    int epsilon = 0;
    std::string lambda_re = "0";
    std::string lambda_im_t = "0";
    std::optional<double> lambda_im;  ///< floating Im(lambda); makes lambda inexact
    bool snap = false;
    double q = 2.0;
    int cutoff = 8;
    int depth = 3;
    double tol = 1e-9;
    bool json = false;
    std::string out;

    std::string target = "degenerate";  ///< so3, class1, degenerate, compact or dump
    bool primed = false;
    std::string l = "1";
    int n = 3;
    int m = 1;
    std::string in;
    bool star = false;
    bool metric = false;
    int n_max = 6;
    int m_max = 4;

    std::string lambda_from = "-4";
    std::string lambda_to = "8";
    std::string lambda_step = "1";
};

inline Json to_json(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["target"] = c.target;
    j["r"] = c.r;
    j["s"] = c.s;
    j["epsilon"] = c.epsilon;
    j["lambda_re"] = c.lambda_re;
    j["lambda_im_t"] = c.lambda_im_t;
    if (c.lambda_im) j["lambda_im"] = *c.lambda_im;
    else j["lambda_im"] = nullptr;
    j["snap"] = c.snap;
    j["q"] = c.q;
    j["cutoff"] = c.cutoff;
    j["depth"] = c.depth;
    j["tol"] = c.tol;
    j["format"] = c.json ? "json" : "text";
    j["out"] = c.out;
    j["primed"] = c.primed;
    j["l"] = c.l;
    j["n"] = c.n;
    j["m"] = c.m;
    j["in"] = c.in;
    j["star"] = c.star;
    j["metric"] = c.metric;
    j["n_max"] = c.n_max;
    j["m_max"] = c.m_max;
    j["lambda_from"] = c.lambda_from;
    j["lambda_to"] = c.lambda_to;
    j["lambda_step"] = c.lambda_step;
    return j;
}

struct CommandResult {
    int exit_code = exit_pass;
    Json report;
    std::string text;
};

/// Best rational approximation with denominator <= max_den (continued fractions).
inline Rational snap_to_rational(double x, std::int64_t max_den = 1000) {
    if (!std::isfinite(x)) throw InvalidParameter("cannot snap a non-finite value");
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(v);
        if (std::abs(a) > 1e15) break;
        const auto ai = static_cast<std::int64_t>(a);
        const std::int64_t q2 = q0 + ai * q1;
        if (q2 > max_den) break;
        const std::int64_t p2 = p0 + ai * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double frac = v - a;
        if (frac < 1e-12) break;
        v = 1.0 / frac;
    }
    return Rational(p1, q1);
}

/**
 * Spectral parameter from the config. --lambda-im gives a floating
 * imaginary part; exact commands reject it unless --snap is set.
 */
inline SpectralParam resolve_lambda(const RunConfig& c, bool require_exact) {
    const Rational re = parse_rational(c.lambda_re);
    if (!c.lambda_im) return SpectralParam::exact(re, parse_rational(c.lambda_im_t));
    if (!c.snap) {
        if (require_exact)
            throw InvalidParameter("this command needs an exact lambda; pass --lambda-im-t, or --snap to "
                                   "round --lambda-im to a nearby rational multiple of pi/h");
        return SpectralParam::inexact({to_double(re), *c.lambda_im});
    }
    const QParam p(c.q);
    if (p.classical() && *c.lambda_im != 0.0)
        throw InvalidParameter("Im(lambda) cannot be expressed in units of pi/h at q = 1");
    const Rational im_t = p.classical() ? Rational(0) : snap_to_rational(*c.lambda_im * p.h() / std::numbers::pi);
    return SpectralParam::exact(re, im_t);
}

inline RepSpec rep_spec(const RunConfig& c) {
    RepSpec spec;
    spec.r = c.r;
    spec.s = c.s;
    spec.epsilon = c.epsilon;
    spec.lambda = resolve_lambda(c, false);
    spec.q = QParam(c.q);
    spec.cutoff = c.cutoff;
    spec.validate();
    return spec;
}

namespace detail {

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

inline std::string residual_table(const ResidualReport& rep) {
    std::string t;
    for (const auto& r : rep.relations) {
        t += std::string(r.pass ? "PASS  " : "FAIL  ") + r.name() + "  residual=" + fmt(r.residual);
        if (!r.pass && !r.worst_pattern.empty()) t += "  worst=" + r.worst_pattern;
        t += "\n";
    }
    return t;
}

}  // namespace detail

inline CommandResult run_build(const RunConfig& c) {
    CommandResult res;
    const QParam p(c.q);
    if (c.target == "so3") {
        const Rational l = parse_rational(c.l);
        auto gens = build_so3(l, p);
        res.report = dump_compact("so3", 3, l, p, {gens[0], gens[1]});
    } else if (c.target == "class1") {
        auto gens = build_class1(c.n, c.m, p);
        res.report = dump_compact("class1", c.n, Rational(c.m), p, gens);
    } else if (c.target == "degenerate") {
        const RepSpec spec = rep_spec(c);
        res.report = dump_degenerate(c.primed ? build_degenerate_primed(spec) : build_degenerate(spec));
    } else {
        throw InvalidParameter("unknown build target '" + c.target + "'");
    }
    res.report["config"] = to_json(c);
    res.text = "built " + res.report["kind"].get<std::string>() + " representation, dimension " +
               std::to_string(res.report["dimension"].get<std::size_t>()) + "\n";
    return res;
}

inline CommandResult run_verify(const RunConfig& c) {
    CommandResult res;
    Json j;
    j["config"] = to_json(c);
    bool pass = true;
    std::string text;

    if (c.target == "compact") {
        const QParam p(c.q);
        Json entries = Json::array();
        auto add = [&](const std::string& label, const std::vector<GeneratorMatrix>& gens) {
            const auto rel = check_relations(gens, p, c.tol);
            const auto star = check_star(gens, c.tol);
            Json e;
            e["representation"] = label;
            e["dimension"] = gens.front().dim();
            e["relations"] = to_json(rel);
            e["star"] = to_json(star);
            const bool ok = rel.pass() && star.pass();
            e["pass"] = ok;
            pass = pass && ok;
            text += std::string(ok ? "PASS  " : "FAIL  ") + label + "  relations=" +
                    detail::fmt(rel.max_residual()) + "  star=" + detail::fmt(star.max_residual()) + "\n";
            entries.push_back(std::move(e));
        };
        for (int twice_l = 1; twice_l < 2 * c.m_max; twice_l += 2) {
            auto g = build_so3(Rational(twice_l, 2), p);
            add("so3 l=" + std::to_string(twice_l) + "/2", {g[0], g[1]});
        }
        for (int n = 3; n <= c.n_max; ++n)
            for (int m = 0; m <= c.m_max; ++m)
                add("class1 n=" + std::to_string(n) + " m=" + std::to_string(m), build_class1(n, m, p));
        j["representations"] = std::move(entries);
    } else {
        std::optional<DegenerateRep> rep;
        std::vector<GeneratorMatrix> compact;
        std::optional<QParam> compact_q;
        if (c.target == "dump") {
            std::ifstream in(c.in);
            if (!in) throw InvalidParameter("cannot open dump file '" + c.in + "'");
            Json dump;
            try {
                dump = Json::parse(in);
            } catch (const nlohmann::json::exception& e) {
                throw InvalidParameter(std::string("malformed dump: ") + e.what());
            }
            LoadedDump loaded;
            try {
                loaded = load_dump(dump);
            } catch (const nlohmann::json::exception& e) {
                throw InvalidParameter(std::string("malformed dump: ") + e.what());
            }
            if (loaded.degenerate) {
                rep = std::move(loaded.degenerate);
            } else {
                compact = std::move(loaded.generators);
                compact_q = loaded.q;
            }
        } else if (c.target == "degenerate") {
            const RepSpec spec = rep_spec(c);
            rep = c.primed ? build_degenerate_primed(spec) : build_degenerate(spec);
        } else {
            throw InvalidParameter("unknown verify target '" + c.target + "'");
        }

        if (rep) {
            const auto rel = check_relations(*rep, c.depth, c.tol);
            j["dimension"] = rep->space->dimension();
            j["basis_kind"] = to_string(rep->basis_kind);
            j["relations"] = to_json(rel);
            pass = rel.pass();
            text += detail::residual_table(rel);
            if (c.star) {
                const auto st = check_star(*rep, c.tol);
                j["star"] = to_json(st);
                pass = pass && st.pass();
                text += detail::residual_table(st);
            }
            if (c.metric) {
                const auto ms = solve_metric(*rep);
                j["metric"] = to_json(ms, *rep->space);
                const bool ok = ms.status == MetricStatus::found;
                pass = pass && ok;
                text += std::string(ok ? "PASS  " : "FAIL  ") + "metric status=" + to_string(ms.status) + "\n";
            }
        } else {
            const auto rel = check_relations(compact, *compact_q, c.tol);
            const auto st = check_star(compact, c.tol);
            j["dimension"] = compact.front().dim();
            j["relations"] = to_json(rel);
            j["star"] = to_json(st);
            pass = rel.pass() && st.pass();
            text += detail::residual_table(rel) + detail::residual_table(st);
        }
    }
    j["pass"] = pass;
    text += pass ? "verify: PASS\n" : "verify: FAIL\n";
    res.report = std::move(j);
    res.text = std::move(text);
    res.exit_code = pass ? exit_pass : exit_fail;
    return res;
}

inline std::string classification_text(const Classification& c) {
    std::string t = "r=" + std::to_string(c.r) + " s=" + std::to_string(c.s) + " eps=" +
                    std::to_string(c.epsilon) + " lambda=" + c.lambda.to_string() + "\n";
    if (c.unclassified) t += "reducible, decomposition not tabulated\n";
    else t += c.irreducible ? "irreducible\n" : "reducible, " + std::to_string(c.constituents.size()) + " constituents\n";
    t += "star series: " + std::string(to_string(c.star_series)) + "\n";
    if (!c.irreducible)
        for (const auto& k : c.constituents)
            t += "  " + k.name + " [" + to_string(k.realized_on) + (k.star ? ", *" : "") +
                 (k.finite_dim ? ", finite" : "") + "]: " + k.region.to_string() + "\n";
    if (c.ladder) t += "ladder representation present\n";
    for (const auto& line : c.case_trace) t += "case: " + line + "\n";
    return t;
}

inline CommandResult run_classify(const RunConfig& c) {
    CommandResult res;
    const SpectralParam lam = resolve_lambda(c, true);
    const Classification cl = classify(c.r, c.s, c.epsilon, lam);
    Json j;
    j["config"] = to_json(c);
    j["classification"] = to_json(cl);
    res.text = classification_text(cl);
    if (cl.unclassified) {
        const auto scan = scan_lattice(c.r, c.s, c.epsilon, lam, recommended_scan_cutoff(c.r, c.s, lam, c.cutoff));
        j["empirical_scan"] = to_json(scan);
        res.text += "scanner: " + std::to_string(scan.components.size()) + " strongly connected region(s) up to m+m' <= " +
                    std::to_string(scan.cutoff) + "\n";
    }
    res.report = std::move(j);
    return res;
}

struct ScanRow {
    SpectralParam lambda;
    std::string theorem;  ///< irreducible, reducible or unclassified
    bool scanner_irreducible = false;
    std::size_t components = 0;
    std::optional<bool> regions_match;
    std::string status;  ///< agree, disagree or unclassified
    std::vector<std::string> problems;
};

inline ScanRow scan_point(int r, int s, int eps, const SpectralParam& lam, int cutoff) {
    ScanRow row;
    row.lambda = lam;
    const auto scan = scan_lattice(r, s, eps, lam, recommended_scan_cutoff(r, s, lam, cutoff));
    row.scanner_irreducible = scan.irreducible();
    row.components = scan.components.size();
    const Classification cl = classify(r, s, eps, lam);
    if (cl.unclassified) {
        row.theorem = "unclassified";
        row.status = "unclassified";
        return row;
    }
    row.theorem = cl.irreducible ? "irreducible" : "reducible";
    bool ok = cl.irreducible == scan.irreducible();
    if (!ok) row.problems.push_back("irreducibility verdicts differ");
    if (!cl.irreducible) {
        const auto cmp = compare_regions(cl, scan);
        row.regions_match = cmp.match;
        ok = ok && cmp.match;
        row.problems.insert(row.problems.end(), cmp.problems.begin(), cmp.problems.end());
    }
    row.status = ok ? "agree" : "disagree";
    return row;
}

inline CommandResult run_scan(const RunConfig& c) {
    CommandResult res;
    if (c.lambda_im) throw InvalidParameter("scan takes an exact grid; use --lambda-im-t");
    const Rational from = parse_rational(c.lambda_from), to = parse_rational(c.lambda_to),
                   step = parse_rational(c.lambda_step);
    const Rational im_t = parse_rational(c.lambda_im_t);
    if (step <= Rational(0)) throw InvalidParameter("lambda step must be positive");
    if (to < from) throw InvalidParameter("empty lambda grid");
    std::vector<SpectralParam> grid;
    for (Rational x = from; x <= to; x += step) {
        grid.push_back(SpectralParam::exact(x, im_t));
        if (grid.size() > 10000) throw InvalidParameter("lambda grid too large");
    }
    (void)RepSpec{c.r, c.s, c.epsilon, grid.front(), QParam(c.q), c.cutoff}.validate();

    std::vector<ScanRow> rows(grid.size());
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t start = 0; start < grid.size(); start += workers) {
        std::vector<std::future<ScanRow>> batch;
        const std::size_t stop = std::min(grid.size(), start + workers);
        for (std::size_t i = start; i < stop; ++i)
            batch.push_back(std::async(std::launch::async, scan_point, c.r, c.s, c.epsilon, grid[i], c.cutoff));
        for (std::size_t i = start; i < stop; ++i) rows[i] = batch[i - start].get();
    }

    Json j;
    j["config"] = to_json(c);
    Json arr = Json::array();
    std::size_t disagreements = 0, unclassified = 0;
    std::string text = "lambda        theorem        scanner       regions  status\n";
    for (const auto& row : rows) {
        Json e;
        e["lambda"] = qdegen::to_json(row.lambda);
        e["theorem"] = row.theorem;
        e["scanner"] = row.scanner_irreducible ? "irreducible" : "reducible";
        e["components"] = row.components;
        if (row.regions_match) e["regions_match"] = *row.regions_match;
        else e["regions_match"] = nullptr;
        e["status"] = row.status;
        e["problems"] = row.problems;
        arr.push_back(std::move(e));
        if (row.status == "disagree") ++disagreements;
        if (row.status == "unclassified") ++unclassified;
        std::ostringstream line;
        line << std::left << std::setw(14) << row.lambda.to_string() << std::setw(15) << row.theorem
             << std::setw(14) << (row.scanner_irreducible ? "irreducible" : "reducible") << std::setw(9)
             << (row.regions_match ? (*row.regions_match ? "match" : "differ") : "-") << row.status << "\n";
        text += line.str();
    }
    j["rows"] = std::move(arr);
    j["disagreements"] = disagreements;
    j["unclassified"] = unclassified;
    text += std::to_string(disagreements) + " disagreement(s), " + std::to_string(unclassified) +
            " unclassified reducible point(s)\n";
    res.report = std::move(j);
    res.text = std::move(text);
    res.exit_code = disagreements == 0 ? exit_pass : exit_fail;
    return res;
}

/// Dispatches on c.command; library errors become exit code 3.
inline CommandResult run(const RunConfig& c) {
    try {
        if (c.command == "build") return run_build(c);
        if (c.command == "verify") return run_verify(c);
        if (c.command == "classify") return run_classify(c);
        if (c.command == "scan") return run_scan(c);
        throw InvalidParameter("unknown command '" + c.command + "'");
    } catch (const Error& e) {
        CommandResult res;
        res.exit_code = exit_usage;
        Json j;
        j["config"] = to_json(c);
        j["error"] = e.what();
        res.report = std::move(j);
        res.text = std::string("error: ") + e.what() + "\n";
        return res;
    }
}

}  // namespace qdegen::cli
