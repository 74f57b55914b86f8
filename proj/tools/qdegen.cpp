#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qdegen/cli.hpp"

using qdegen::cli::RunConfig;

namespace {

void add_common(CLI::App& app, RunConfig& c) {
    app.add_option("--r", c.r, "rank of the first compact factor so'_q(r)");
    app.add_option("--s", c.s, "rank of the second compact factor so'_q(s)");
    app.add_option("--epsilon", c.epsilon, "parity of m + m' (0 or 1)");
    app.add_option("--lambda-re", c.lambda_re, "Re(lambda) as p, p/q or a decimal literal");
    app.add_option("--lambda-im-t", c.lambda_im_t, "Im(lambda) in units of pi/h, as p or p/q");
    app.add_option("--lambda-im", c.lambda_im, "Im(lambda) as a floating number (inexact)");
    app.add_flag("--snap", c.snap, "round a floating lambda to a nearby exact value");
    app.add_option("--q", c.q, "deformation parameter q > 0");
    app.add_option("--cutoff", c.cutoff, "keep blocks with m + m' <= cutoff");
    app.add_option("--depth", c.depth, "interior depth for relation checks");
    app.add_option("--tol", c.tol, "residual tolerance");
    app.add_flag("--json", c.json, "print the JSON report instead of text");
    app.add_option("--out", c.out, "also write the JSON report to this file");
}

int emit(const qdegen::cli::CommandResult& res, const RunConfig& c, bool json_default) {
    const std::string json = res.report.dump(2) + "\n";
    if (!c.out.empty() && res.exit_code != qdegen::cli::exit_usage) {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write '" << c.out << "'\n";
            return qdegen::cli::exit_usage;
        }
        f << json;
    }
    if (res.exit_code == qdegen::cli::exit_usage) {
        if (c.json) std::cout << json;
        std::cerr << res.text;
    } else if (c.json || (json_default && c.out.empty())) {
        std::cout << json;
    } else {
        std::cout << res.text;
    }
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representations of so'_q(r,s): build, verify, classify and scan"};
    app.require_subcommand(1);
    RunConfig c;

    auto* build = app.add_subcommand("build", "write a matrix dump");
    add_common(*build, c);
    bool so3 = false, class1 = false, degenerate = false;
    build->add_flag("--so3", so3, "irreducible representation of so'_q(3)");
    build->add_flag("--class1", class1, "class-1 representation of so'_q(n)");
    build->add_flag("--degenerate", degenerate, "truncated degenerate series (default)");
    build->add_flag("--primed", c.primed, "use the primed basis");
    build->add_option("--l", c.l, "so'_q(3) weight, integral or half-integral");
    build->add_option("--n", c.n, "rank n of so'_q(n)");
    build->add_option("--m", c.m, "highest label of the class-1 representation");

    auto* rep = app.add_subcommand("rep", "representation utilities");
    rep->require_subcommand(1);
    auto* dump = rep->add_subcommand("dump", "matrix dump of the degenerate series");
    add_common(*dump, c);
    dump->add_flag("--primed", c.primed, "use the primed basis");

    auto* verify = app.add_subcommand("verify", "check relations and adjointness");
    add_common(*verify, c);
    bool compact = false;
    verify->add_flag("--compact", compact, "run the compact suite (so'_q(3) and class-1 of so'_q(n))");
    verify->add_option("--n-max", c.n_max, "largest n in the compact suite");
    verify->add_option("--m-max", c.m_max, "largest highest label in the compact suite");
    verify->add_option("--in", c.in, "verify a matrix dump file");
    verify->add_flag("--primed", c.primed, "use the primed basis");
    verify->add_flag("--star", c.star, "also check the adjoint conditions");
    verify->add_flag("--metric", c.metric, "also solve for a positive block-scalar metric");

    auto* classify = app.add_subcommand("classify", "irreducibility, *-series and constituents");
    add_common(*classify, c);

    auto* scan = app.add_subcommand("scan", "compare the criterion with the lattice scanner on a lambda grid");
    add_common(*scan, c);
    scan->add_option("--lambda-from", c.lambda_from, "first grid value");
    scan->add_option("--lambda-to", c.lambda_to, "last grid value");
    scan->add_option("--lambda-step", c.lambda_step, "grid step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return qdegen::cli::exit_usage;
    }

    bool json_default = false;
    if (build->parsed()) {
        c.command = "build";
        if (so3 + class1 + degenerate > 1) {
            std::cerr << "error: choose one of --so3, --class1, --degenerate\n";
            return qdegen::cli::exit_usage;
        }
        c.target = so3 ? "so3" : class1 ? "class1" : "degenerate";
        json_default = true;
    } else if (dump->parsed()) {
        c.command = "build";
        c.target = "degenerate";
        json_default = true;
    } else if (verify->parsed()) {
        c.command = "verify";
        if (compact && !c.in.empty()) {
            std::cerr << "error: --compact and --in are exclusive\n";
            return qdegen::cli::exit_usage;
        }
        c.target = compact ? "compact" : !c.in.empty() ? "dump" : "degenerate";
    } else if (classify->parsed()) {
        c.command = "classify";
    } else {
        c.command = "scan";
    }
    return emit(qdegen::cli::run(c), c, json_default);
}
