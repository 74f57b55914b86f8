// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "support.hpp"
#include "qdegen/qdegen.hpp"

using namespace qdegen;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

SpectralParam ex(Rational re, Rational im_t = Rational(0)) { return SpectralParam::exact(re, im_t); }

RepSpec spec(int r, int s, int eps, SpectralParam lam, double q, int cutoff) {
    RepSpec sp;
    sp.r = r;
    sp.s = s;
    sp.epsilon = eps;
    sp.lambda = lam;
    sp.q = QParam(q);
    sp.cutoff = cutoff;
    return sp;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1. Compact relations for 3 <= n <= 6, 0 <= m <= 4, q in {1/2, 1, 2}.
Outcome compact_relations() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int reps = 0;
    for (double q : {0.5, 1.0, 2.0}) {
        const QParam p(q);
        for (int n = 3; n <= 6; ++n)
            for (int m = 0; m <= 4; ++m) {
                worst = std::max(worst, check_relations(build_class1(n, m, p), p, 1e-10).max_residual());
                ++reps;
            }
        for (int twice = 1; twice <= 7; twice += 2) {
            auto g = build_so3(Rational(twice, 2), p);
            worst = std::max(worst, check_relations({g[0], g[1]}, p, 1e-10).max_residual());
            ++reps;
        }
    }
    const double t = seconds_since(t0);
    return {worst < 1e-10 && t < 30.0,
            std::to_string(reps) + " representations, max residual " + sci(worst) + ", " + sci(t) + " s"};
}

// 2. Chain counts against the closed-form dimension.
Outcome dimension_oracle() {
    int checked = 0, bad = 0;
    for (int n = 3; n <= 6; ++n)
        for (int m = 0; m <= 4; ++m) {
            ++checked;
            const auto count = static_cast<std::int64_t>(enumerate_chain(n, m).size());
            if (count != oracle::class1_dim(n, m)) ++bad;
        }
    return {bad == 0, std::to_string(checked) + " (n, m) pairs, " + std::to_string(bad) + " mismatches"};
}

// 3. Degenerate relations on interior columns.
Outcome degenerate_relations() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    int runs = 0;
    std::string where;
    for (int r : {3, 4})
        for (int s : {3, 4})
            for (int eps : {0, 1})
                for (double q : {0.5, 2.0}) {
                    const std::vector<SpectralParam> lams = {
                        ex(Rational(37, 100)),
                        ex(Rational(-2)),
                        SpectralParam::inexact({(r + s - 2) / 2.0, 1.0}),
                        ex(Rational(37, 100), Rational(1)),
                    };
                    for (const auto& lam : lams) {
                        const auto rep = build_degenerate(spec(r, s, eps, lam, q, 8));
                        const double res = check_relations(rep, 3, 1e-9).max_residual();
                        ++runs;
                        if (res > worst) {
                            worst = res;
                            where = "r=" + std::to_string(r) + " s=" + std::to_string(s) + " eps=" +
                                    std::to_string(eps) + " lambda=" + lam.to_string();
                        }
                    }
                }
    const double t = seconds_since(t0);
    return {worst < 1e-9 && t < 120.0, std::to_string(runs) + " representations, max residual " + sci(worst) +
                                           " (" + where + "), " + sci(t) + " s"};
}

std::vector<SpectralParam> consistency_grid(int r, int s) {
    std::vector<SpectralParam> g;
    for (int L = -6; L <= r + s + 4; ++L) g.push_back(ex(Rational(L)));
    const Rational fracs[20] = {{1, 2},  {-1, 2}, {1, 3},   {-7, 3}, {5, 2},  {13, 4}, {-9, 4},
                                {7, 5},  {11, 3}, {-5, 6},  {17, 6}, {1, 7},  {22, 7}, {-13, 5},
                                {9, 2},  {29, 8}, {-3, 10}, {37, 10}, {41, 9}, {-1, 11}};
    for (const auto& f : fracs) g.push_back(ex(f));
    return g;
}

// 4. Irreducibility criterion against the lattice scanner.
Outcome theorem_vs_scanner() {
    int points = 0, disagreements = 0, unclassified = 0, unexpected_gap = 0;
    std::string first;
    for (int r : {3, 4, 5})
        for (int s : {3, 4, 5})
            for (int eps : {0, 1})
                for (const auto& lam : consistency_grid(r, s)) {
                    ++points;
                    const auto scan = scan_lattice(r, s, eps, lam, recommended_scan_cutoff(r, s, lam, 8));
                    const bool theorem = classify_irreducible(r, s, eps, lam);
                    const auto cl = classify(r, s, eps, lam);
                    if (cl.unclassified) {
                        ++unclassified;
                        const bool in_gap = r % 2 == 1 && s % 2 == 1 && is_integer(lam.re());
                        if (!in_gap) ++unexpected_gap;
                        continue;
                    }
                    if (theorem != scan.irreducible()) {
                        ++disagreements;
                        if (first.empty())
                            first = " first: r=" + std::to_string(r) + " s=" + std::to_string(s) +
                                    " eps=" + std::to_string(eps) + " lambda=" + lam.to_string();
                    }
                }
    return {disagreements == 0 && unexpected_gap == 0,
            std::to_string(points) + " points, " + std::to_string(disagreements) + " disagreements, " +
                std::to_string(unclassified) + " unclassified (odd/odd gap)" + first};
}

// 5. Tabulated constituents against scanner regions.
Outcome decomposition_agreement() {
    int cases = 0, bad = 0;
    std::string first;
    for (int r : {3, 4, 5})
        for (int s : {3, 4, 5})
            for (int eps : {0, 1})
                for (int L = -4; L <= r + s; ++L) {
                    const auto lam = ex(Rational(L));
                    if (classify_irreducible(r, s, eps, lam)) continue;
                    Classification cl;
                    try {
                        cl = predict_constituents(r, s, eps, lam);
                    } catch (const UnclassifiedReducibleCase&) {
                        continue;
                    }
                    ++cases;
                    const auto scan = scan_lattice(r, s, eps, lam, recommended_scan_cutoff(r, s, lam, 8));
                    const auto cmp = compare_regions(cl, scan);
                    if (!cmp.match) {
                        ++bad;
                        if (first.empty())
                            first = " first: r=" + std::to_string(r) + " s=" + std::to_string(s) + " eps=" +
                                    std::to_string(eps) + " lambda=" + std::to_string(L) + ": " + cmp.problems.front();
                    }
                }
    return {bad == 0 && cases > 0, std::to_string(cases) + " reducible cases, " + std::to_string(bad) + " mismatches" + first};
}

double max_abs_diff(const DegenerateRep& a, const DegenerateRep& b) {
    double w = 0.0;
    for (std::size_t g = 0; g < a.generators.size(); ++g) {
        SparseMatrix d = a.generators[g].matrix - b.generators[g].matrix;
        for (Eigen::Index c = 0; c < d.outerSize(); ++c)
            for (SparseMatrix::InnerIterator it(d, c); it; ++it) w = std::max(w, std::abs(it.value()));
    }
    return w;
}

// 6. Period 4 pi i/h gives identical matrices, 2 pi i/h an equivalent one.
Outcome periodicity() {
    double worst_same = 0.0, worst_res = 0.0, worst_unit = 0.0;
    bool all_found = true, alternating = true;
    int pairs = 0;
    const std::vector<std::pair<Rational, Rational>> lams = {
        {Rational(3, 10), Rational(0)}, {Rational(-2), Rational(0)}, {Rational(7, 5), Rational(1, 2)}, {Rational(5, 2), Rational(1)}};
    for (auto [r, s] : {std::pair{3, 3}, {3, 4}, {4, 4}})
        for (int eps : {0, 1})
            for (const auto& [re, it] : lams) {
                ++pairs;
                const auto base = build_degenerate(spec(r, s, eps, ex(re, it), 2.0, 8));
                const auto full = build_degenerate(spec(r, s, eps, ex(re, it + Rational(4)), 2.0, 8));
                const auto half = build_degenerate(spec(r, s, eps, ex(re, it + Rational(2)), 2.0, 8));
                worst_same = std::max(worst_same, max_abs_diff(base, full));
                const auto S = solve_intertwiner(base, half, 1e-8);
                all_found = all_found && S.found;
                worst_res = std::max(worst_res, S.residual);
                for (std::size_t b = 0; b < S.block_values.size(); ++b) {
                    worst_unit = std::max(worst_unit, std::abs(std::abs(S.block_values[b]) - 1.0));
                    const auto& blk = base.space->block(b);
                    const int sign = ((blk.m - base.space->block(0).m) % 2 == 0) ? 1 : -1;
                    if (std::abs(S.block_values[b] - Complex(sign, 0.0)) > 1e-8) alternating = false;
                }
            }
    const bool ok = worst_same < 1e-12 && all_found && worst_res < 1e-8 && worst_unit < 1e-8 && alternating;
    return {ok, std::to_string(pairs) + " parameter pairs, 4pi i/h diff " + sci(worst_same) + ", 2pi i/h intertwiner residual " +
                    sci(worst_res) + ", |S|-1 " + sci(worst_unit) + (alternating ? ", signs (-1)^m" : ", signs irregular")};
}

// 7. T_{eps,lambda} and T_{eps,r+s-2-lambda} are intertwined by a diagonal map.
Outcome mirror_equivalence() {
    const std::vector<std::pair<Rational, Rational>> lams = {{Rational(3, 10), Rational(0)},
                                                             {Rational(1, 3), Rational(0)},
                                                             {Rational(-17, 10), Rational(0)},
                                                             {Rational(9, 4), Rational(0)},
                                                             {Rational(7, 10), Rational(1, 2)}};
    double worst = 0.0;
    int runs = 0, failed = 0;
    for (auto [r, s] : {std::pair{3, 3}, {3, 4}, {4, 4}})
        for (int eps : {0, 1})
            for (const auto& [re, it] : lams) {
                ++runs;
                const auto lam = ex(re, it);
                const auto mir = ex(Rational(r + s - 2) - re, -it);
                const auto A = build_degenerate(spec(r, s, eps, lam, 2.0, 8));
                const auto B = build_degenerate(spec(r, s, eps, mir, 2.0, 8));
                const auto S = solve_intertwiner(A, B, 1e-8);
                if (!S.found) ++failed;
                worst = std::max(worst, S.residual);
            }
    return {failed == 0 && worst < 1e-8,
            std::to_string(runs) + " pairs, " + std::to_string(failed) + " failures, max residual " + sci(worst)};
}

// 8. Positive block-scalar metrics on the *-series, none off them.
Outcome star_metrics() {
    struct Case {
        const char* label;
        int r, s, eps;
        SpectralParam lam;
        bool expect_found;
    };
    const std::vector<Case> cases = {
        {"principal", 4, 4, 0, ex(3, Rational(1, 2)), true},
        {"principal", 3, 4, 1, ex(Rational(5, 2), Rational(1, 3)), true},
        {"strange", 4, 4, 0, ex(Rational(7, 10), 1), true},
        {"strange", 3, 4, 1, ex(Rational(13, 10), 1), true},
        {"supplementary same parity", 4, 4, 0, ex(Rational(7, 2)), true},
        {"supplementary mixed parity", 4, 5, 1, ex(Rational(37, 10)), true},
        {"control", 4, 4, 0, SpectralParam::inexact({0.7, 1.3}), false},
        {"control", 3, 4, 0, ex(Rational(6, 5), Rational(1, 2)), false},
    };
    std::string detail;
    bool ok = true;
    for (const auto& c : cases) {
        const auto rep = build_degenerate(spec(c.r, c.s, c.eps, c.lam, 2.0, 8));
        const auto m = solve_metric(rep);
        bool good = c.expect_found ? m.status == MetricStatus::found : m.status == MetricStatus::none;
        if (good && c.expect_found) {
            const auto ortho = conjugate(rep, m.sqrt_diagonal(*rep.space));
            good = check_star(ortho, 1e-9).pass();
        }
        ok = ok && good;
        detail += std::string(c.label) + "=" + to_string(m.status) + (good ? "" : "(!)") + " ";
    }
    double primed_worst = 0.0;
    for (auto [r, s] : {std::pair{4, 4}, {3, 4}, {3, 3}}) {
        const auto lam = ex(Rational(r + s - 2, 2), Rational(1, 2));
        const auto rep = build_degenerate_primed(spec(r, s, 0, lam, 2.0, 6));
        primed_worst = std::max(primed_worst, check_star(rep, 1e-9).max_residual());
    }
    ok = ok && primed_worst < 1e-9;
    return {ok, detail + "| primed principal star residual " + sci(primed_worst)};
}

// 9. q = 1 + 1e-8 against the classical-formula oracle at q = 1.
Outcome classical_limit() {
    const double q = 1.0 + 1e-8;
    double worst = 0.0;
    for (int n = 3; n <= 6; ++n)
        for (int m = 0; m <= 4; ++m) worst = std::max(worst, support::compact_vs_oracle(n, Rational(m), q, 1.0));
    for (int twice = 1; twice <= 7; twice += 2)
        worst = std::max(worst, support::compact_vs_oracle(3, Rational(twice, 2), q, 1.0));
    for (int r : {3, 4})
        for (int s : {3, 4})
            for (int eps : {0, 1})
                for (const auto& lam : {Rational(37, 100), Rational(-2), Rational(5, 2)}) {
                    const auto rep = build_degenerate(spec(r, s, eps, ex(lam), q, 6));
                    worst = std::max(worst, support::degenerate_vs_oracle(rep, 1.0, {to_double(lam), 0.0}));
                }
    return {worst < 1e-6, "max entry difference " + sci(worst)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"1 compact relation suite", compact_relations},
        {"2 dimension oracle", dimension_oracle},
        {"3 degenerate relation suite", degenerate_relations},
        {"4 irreducibility criterion vs lattice scanner", theorem_vs_scanner},
        {"5 constituent regions vs scanner regions", decomposition_agreement},
        {"6 imaginary periodicity and sign-flip equivalence", periodicity},
        {"7 lambda <-> r+s-2-lambda equivalence", mirror_equivalence},
        {"8 *-series metrics", star_metrics},
        {"9 classical limit", classical_limit},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s  [%s] %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
