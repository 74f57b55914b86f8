#pragma once

/**
 * @file classify.hpp
 * @brief Irreducibility and *-series decisions for T_{eps,lambda} in exact
 *        arithmetic, the tabulated decompositions at reducible points, and a
 *        lattice scanner that finds invariant regions from vanishing
 *        coefficients.
 *
 * Reducibility is governed by four lines on the (m, m') lattice, where the
 * lambda factor of one I_{r+1,r} transition vanishes:
 *
 *   (+1,+1) at m + m' = -lambda            (-1,+1) at m' - m = -lambda + r - 2
 *   (+1,-1) at m - m' = -lambda + s - 2    (-1,-1) at m + m' = lambda - r - s + 4
 *
 * Regions used by the constituents, with c_r = -lambda+r-2, c_s = -lambda+s-2:
 *
 *   F  : m + m' <= -lambda
 *   A_r: m' - m <= c_r       T^+ = complement of A_r
 *   A_s: m - m' <= c_s       T^- = complement of A_s
 *   H^0 = A_r and A_s
 */

#include <algorithm>
#include <cstdlib>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "qarith.hpp"
#include "rational.hpp"

namespace qdegen {

enum class StarSeries { principal, strange, supplementary, discrete_constituent, none };

inline const char* to_string(StarSeries s) {
    switch (s) {
        case StarSeries::principal: return "principal";
        case StarSeries::strange: return "strange";
        case StarSeries::supplementary: return "supplementary";
        case StarSeries::discrete_constituent: return "discrete_constituent";
        default: return "none";
    }
}

/// How a constituent sits in T_{eps,lambda}.
enum class Realization { subspace, quotient, subquotient, direct_summand };

inline const char* to_string(Realization r) {
    switch (r) {
        case Realization::subspace: return "subspace";
        case Realization::quotient: return "quotient";
        case Realization::subquotient: return "subquotient";
        default: return "direct_summand";
    }
}

/// a*m + b*m' <= c
struct HalfPlane {
    int a = 0;
    int b = 0;
    std::int64_t c = 0;

    bool contains(int m, int mp) const {
        return static_cast<std::int64_t>(a) * m + static_cast<std::int64_t>(b) * mp <= c;
    }

    std::string to_string() const {
        auto term = [](int coef, const char* var, bool first) {
            std::string s;
            if (coef == 0) return s;
            if (coef < 0) s += first ? "-" : " - ";
            else if (!first) s += " + ";
            if (std::abs(coef) != 1) s += std::to_string(std::abs(coef));
            return s + var;
        };
        std::string s = term(a, "m", true);
        s += term(b, "m'", s.empty());
        return s + " <= " + std::to_string(c);
    }

    bool operator==(const HalfPlane&) const = default;
};

/// Intersection of `include` minus the union of the `exclude` intersections.
struct LatticePredicate {
    std::vector<HalfPlane> include;
    std::vector<std::vector<HalfPlane>> exclude;

    bool contains(int m, int mp) const {
        auto all = [&](const std::vector<HalfPlane>& hs) {
            return std::all_of(hs.begin(), hs.end(), [&](const HalfPlane& h) { return h.contains(m, mp); });
        };
        if (!all(include)) return false;
        return std::none_of(exclude.begin(), exclude.end(), all);
    }

    std::string to_string() const {
        auto join = [](const std::vector<HalfPlane>& hs) {
            if (hs.empty()) return std::string("all");
            std::string s;
            for (std::size_t i = 0; i < hs.size(); ++i) s += (i ? " and " : "") + hs[i].to_string();
            return s;
        };
        std::string s = join(include);
        for (const auto& e : exclude) s += " minus (" + join(e) + ")";
        return s;
    }

    bool operator==(const LatticePredicate&) const = default;
};

struct Constituent {
    std::string name;  ///< T^F, T^0, T^+, T^-, T^1, T^2, T^3 or full
    LatticePredicate region;
    Realization realized_on = Realization::subspace;
    bool star = false;
    bool finite_dim = false;
};

struct Classification {
    int r = 0;
    int s = 0;
    int epsilon = 0;
    SpectralParam lambda;  ///< normalized
    SpectralRelation relation = SpectralRelation::identical;
    bool irreducible = true;
    bool unclassified = false;  ///< reducible, but no tabulated decomposition
    bool ladder = false;
    bool direct_sum = false;
    StarSeries star_series = StarSeries::none;
    std::vector<Constituent> constituents;
    std::vector<std::string> case_trace;
};

namespace detail {

inline void check_ranks(int r, int s, int eps) {
    if (r <= 2 || s <= 2)
        throw UnsupportedRank("degenerate series needs r > 2 and s > 2 (got r=" + std::to_string(r) +
                              ", s=" + std::to_string(s) + ")");
    if (eps != 0 && eps != 1) throw InvalidParameter("epsilon must be 0 or 1");
}

/// Integer value of a normalized lambda, if it is an integer.
inline std::optional<std::int64_t> integer_value(const SpectralParam& lam) {
    if (lam.im_t() != Rational(0) || !is_integer(lam.re())) return std::nullopt;
    return lam.re().numerator();
}

inline int mod2(std::int64_t v) { return static_cast<int>(((v % 2) + 2) % 2); }

}  // namespace detail

/// Irreducibility criterion. Accepts any exact lambda; it is normalized first.
inline bool classify_irreducible(int r, int s, int eps, const SpectralParam& lambda) {
    detail::check_ranks(r, s, eps);
    const auto norm = normalize_spectral(lambda);
    const auto L = detail::integer_value(norm.lambda);
    if (!L) return true;
    const bool r_even = r % 2 == 0, s_even = s % 2 == 0;
    if (r_even && s_even) return detail::mod2(*L) != eps;
    if (r_even != s_even) return false;
    // odd/odd
    return detail::mod2(*L) == eps && 2 * *L > 0 && 2 * *L < r + s - 4;
}

namespace detail {

struct Regions {
    std::int64_t L, cr, cs;

    HalfPlane F() const { return {1, 1, -L}; }
    HalfPlane not_F() const { return {-1, -1, L - 1}; }
    HalfPlane A_r() const { return {-1, 1, cr}; }
    HalfPlane A_s() const { return {1, -1, cs}; }
    HalfPlane T_plus() const { return {1, -1, -cr - 1}; }
    HalfPlane T_minus() const { return {-1, 1, -cs - 1}; }
};

inline Realization dual(Realization r) {
    switch (r) {
        case Realization::subspace: return Realization::quotient;
        case Realization::quotient: return Realization::subspace;
        default: return r;
    }
}

inline Constituent make(std::string name, LatticePredicate pred, Realization real, bool finite = false) {
    Constituent c;
    c.name = std::move(name);
    c.region = std::move(pred);
    c.realized_on = real;
    c.finite_dim = finite;
    return c;
}

}  // namespace detail

/**
 * Tabulated constituents of T_{eps,lambda}. For lambda beyond the middle the
 * equivalent parameter r+s-2-lambda is used: the regions are the same and
 * subspaces and quotients trade places.
 */
inline Classification predict_constituents(int r, int s, int eps, const SpectralParam& lambda) {
    detail::check_ranks(r, s, eps);
    Classification out;
    out.r = r;
    out.s = s;
    out.epsilon = eps;
    const auto norm = normalize_spectral(lambda);
    out.lambda = norm.lambda;
    out.relation = norm.relation;
    if (norm.relation == SpectralRelation::equivalent_flip)
        out.case_trace.push_back("shifted by 2 pi i/h to an equivalent representation");

    out.irreducible = classify_irreducible(r, s, eps, lambda);
    if (out.irreducible) {
        out.case_trace.push_back("irreducible");
        out.constituents.push_back(detail::make("full", {}, Realization::subspace));
        return out;
    }

    const std::int64_t L = *detail::integer_value(norm.lambda);
    const bool r_even = r % 2 == 0, s_even = s % 2 == 0;
    const int par = detail::mod2(L) == eps ? 0 : 1;  // 0: lambda = eps mod 2
    const int rs = r + s;

    // largest lambda handled without mirroring, as 2*bound
    std::int64_t twice_bound;
    std::string family;
    if (r_even && s_even) {
        family = "r and s even";
        twice_bound = rs - 2;
    } else if (r_even != s_even) {
        family = "r and s of different parity";
        twice_bound = rs - 3;
    } else {
        family = "r and s odd";
        if (par == 0) {
            if (L > 0 && L < rs - 2)
                throw UnclassifiedReducibleCase(
                    "r=" + std::to_string(r) + ", s=" + std::to_string(s) + ", eps=" + std::to_string(eps) +
                    ", lambda=" + std::to_string(L) +
                    ": reducible (lambda = eps mod 2, lambda >= (r+s)/2 - 2) but no decomposition is tabulated");
            twice_bound = 0;
        } else {
            twice_bound = rs - 2;
        }
    }
    out.case_trace.push_back(family);

    const bool mirrored = 2 * L > twice_bound;
    const std::int64_t Le = mirrored ? rs - 2 - L : L;
    if (mirrored)
        out.case_trace.push_back("lambda = " + std::to_string(L) + " mirrored to r+s-2-lambda = " +
                                 std::to_string(Le) + "; subspaces and quotients exchanged");
    const detail::Regions R{Le, -Le + r - 2, -Le + s - 2};
    const int par_e = detail::mod2(Le) == eps ? 0 : 1;
    auto& cs = out.constituents;
    using detail::make;

    auto strip_cases = [&](bool with_F) {
        // lambda <= (r+s)/2 - 1, constituents T^0 (possibly empty), T^-, T^+
        if (2 * Le == rs - 2) {
            out.direct_sum = true;
            out.case_trace.push_back("lambda = (r+s)/2 - 1: direct sum of the two discrete-series constituents");
            cs.push_back(make("T^-", {{R.T_minus()}, {}}, Realization::direct_summand));
            cs.push_back(make("T^+", {{R.T_plus()}, {}}, Realization::direct_summand));
            return;
        }
        if (with_F && Le <= 0) {
            out.case_trace.push_back("lambda <= 0: finite-dimensional subspace H^F inside H^0");
            cs.push_back(make("T^F", {{R.F()}, {}}, Realization::subspace, true));
            cs.push_back(make("T^0", {{R.A_r(), R.A_s()}, {{R.F()}}}, Realization::subquotient));
        } else {
            out.case_trace.push_back("lambda <= (r+s)/2 - 2: invariant subspace H^0");
            cs.push_back(make("T^0", {{R.A_r(), R.A_s()}, {}}, Realization::subspace));
        }
        if (2 * Le == rs - 4) {
            out.ladder = true;
            out.case_trace.push_back("lambda = (r+s)/2 - 2: T^0 is a ladder representation on the line m' - m = " +
                                     std::to_string(R.cr));
        }
        cs.push_back(make("T^-", {{R.T_minus()}, {}}, Realization::quotient));
        cs.push_back(make("T^+", {{R.T_plus()}, {}}, Realization::quotient));
    };

    if (r_even && s_even) {
        strip_cases(true);
    } else if (r_even != s_even) {
        // lambda = eps mod 2 opens the wall of the even rank, the other parity the odd one
        const bool wall_r = (par_e == 0) == r_even;
        const HalfPlane wall = wall_r ? R.A_r() : R.A_s();
        const std::string inner = wall_r ? "T^1" : "T^2";
        const std::string outer = wall_r ? "T^+" : "T^-";
        const bool with_F = par_e == 0 && Le <= 0;
        if (with_F) {
            out.case_trace.push_back("lambda = eps mod 2, lambda <= 0: finite-dimensional subspace H^F inside " +
                                     std::string(wall_r ? "m' - m <= -lambda+r-2" : "m - m' <= -lambda+s-2"));
            cs.push_back(make("T^F", {{R.F()}, {}}, Realization::subspace, true));
            cs.push_back(make(inner, {{wall}, {{R.F()}}}, Realization::subquotient));
        } else {
            out.case_trace.push_back(std::string(par_e == 0 ? "lambda = eps mod 2" : "lambda = eps+1 mod 2") +
                                     ", lambda <= (r+s-3)/2: one invariant half-plane");
            cs.push_back(make(inner, {{wall}, {}}, Realization::subspace));
        }
        cs.push_back(make(outer, {{wall_r ? R.T_plus() : R.T_minus()}, {}}, Realization::quotient));
    } else if (par_e == 0) {
        out.case_trace.push_back("lambda = eps mod 2, lambda <= 0: finite-dimensional subspace H^F");
        cs.push_back(make("T^F", {{R.F()}, {}}, Realization::subspace, true));
        cs.push_back(make("T^3", {{R.not_F()}, {}}, Realization::quotient));
    } else {
        strip_cases(false);
    }

    if (mirrored)
        for (auto& c : cs) c.realized_on = detail::dual(c.realized_on);
    for (auto& c : cs) {
        if (c.name == "T^+" || c.name == "T^-") c.star = true;
        if (c.name == "T^0" && 2 * Le == rs - 4) c.star = true;
    }
    return out;
}

/**
 * *-series tag. Irreducible parameters are tested against the principal line,
 * the strange line im_t = 1 and the supplementary windows (after mirroring
 * to lambda >= (r+s-2)/2); reducible ones report whether a *-constituent
 * exists.
 */
inline StarSeries classify_star(int r, int s, int eps, const SpectralParam& lambda) {
    detail::check_ranks(r, s, eps);
    const auto norm = normalize_spectral(lambda);
    const SpectralParam& lam = norm.lambda;
    if (!classify_irreducible(r, s, eps, lambda)) {
        const auto c = predict_constituents(r, s, eps, lambda);
        const bool any = std::any_of(c.constituents.begin(), c.constituents.end(),
                                     [](const Constituent& k) { return k.star; });
        return any ? StarSeries::discrete_constituent : StarSeries::none;
    }
    const int rs = r + s;
    if (lam.re() * 2 == Rational(rs - 2)) return StarSeries::principal;
    if (lam.im_t() == Rational(1)) return StarSeries::strange;
    if (lam.im_t() != Rational(0)) return StarSeries::none;
    Rational x = lam.re();
    if (x * 2 < Rational(rs - 2)) x = Rational(rs - 2) - x;
    const Rational lo(rs - 2, 2);
    if (rs % 2 == 0) {
        if (x > lo && x < Rational(rs, 2) && eps == (rs / 2) % 2) return StarSeries::supplementary;
    } else {
        if (x > lo && x < Rational(rs - 1, 2)) return StarSeries::supplementary;
    }
    return StarSeries::none;
}

/// Full classification. Parameters in the untabulated gap come back with
/// `unclassified` set and no constituents.
inline Classification classify(int r, int s, int eps, const SpectralParam& lambda) {
    Classification c;
    try {
        c = predict_constituents(r, s, eps, lambda);
        c.star_series = classify_star(r, s, eps, lambda);
    } catch (const UnclassifiedReducibleCase& e) {
        c = Classification{};
        c.r = r;
        c.s = s;
        c.epsilon = eps;
        const auto norm = normalize_spectral(lambda);
        c.lambda = norm.lambda;
        c.relation = norm.relation;
        c.irreducible = false;
        c.unclassified = true;
        c.star_series = StarSeries::none;
        c.case_trace.push_back(e.what());
    }
    return c;
}

/// Block graph of I_{r+1,r} on the truncated (m, m') lattice.
struct LatticeScan {
    int r = 0;
    int s = 0;
    int epsilon = 0;
    int cutoff = 0;
    std::vector<std::pair<int, int>> nodes;         ///< (m, m') by level, then m
    std::vector<std::vector<std::size_t>> edges;    ///< nonvanishing transitions
    std::vector<std::vector<std::size_t>> components;  ///< strongly connected, sorted
    std::vector<std::vector<std::size_t>> closures;    ///< invariant set generated by each component

    bool irreducible() const { return components.size() == 1; }

    std::optional<std::size_t> node_index(int m, int mp) const {
        auto it = std::find(nodes.begin(), nodes.end(), std::make_pair(m, mp));
        if (it == nodes.end()) return std::nullopt;
        return static_cast<std::size_t>(it - nodes.begin());
    }

    /// No edge leaves the set.
    bool is_invariant(const std::vector<bool>& member) const {
        for (std::size_t v = 0; v < nodes.size(); ++v)
            if (member[v])
                for (auto w : edges[v])
                    if (!member[w]) return false;
        return true;
    }
};

namespace detail {

inline std::vector<std::vector<std::size_t>> strong_components(const std::vector<std::vector<std::size_t>>& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    std::vector<std::vector<std::size_t>> out;
    std::size_t counter = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (auto w : g[v]) {
            if (index[w] == SIZE_MAX) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<std::size_t> comp;
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            out.push_back(std::move(comp));
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] == SIZE_MAX) visit(v);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/**
 * Scans the (m, m') lattice up to m + m' <= cutoff. An edge is present when
 * the K/L factors are not identically zero on the block (lower walls) and
 * the lambda factor does not vanish; vanishing is decided exactly.
 */
inline LatticeScan scan_lattice(int r, int s, int eps, const SpectralParam& lambda, int cutoff) {
    detail::check_ranks(r, s, eps);
    if (!lambda.is_exact()) throw InexactSpectralParam();
    if (cutoff < 0) throw InvalidParameter("cutoff must be nonnegative");
    LatticeScan scan;
    scan.r = r;
    scan.s = s;
    scan.epsilon = eps;
    scan.cutoff = cutoff;
    std::map<std::pair<int, int>, std::size_t> idx;
    for (int level = eps; level <= cutoff; level += 2)
        for (int m = 0; m <= level; ++m) {
            idx.emplace(std::make_pair(m, level - m), scan.nodes.size());
            scan.nodes.emplace_back(m, level - m);
        }
    scan.edges.resize(scan.nodes.size());
    for (std::size_t v = 0; v < scan.nodes.size(); ++v) {
        const auto [m, mp] = scan.nodes[v];
        struct Move {
            int dm, dmp;
            bool allowed;
            std::int64_t offset;
        };
        const Move moves[4] = {
            {+1, +1, true, m + mp},
            {+1, -1, mp >= 1, m - mp - s + 2},
            {-1, +1, m >= 1, -m + mp - r + 2},
            {-1, -1, m >= 1 && mp >= 1, -m - mp - r - s + 4},
        };
        for (const auto& mv : moves) {
            if (!mv.allowed) continue;
            auto it = idx.find({m + mv.dm, mp + mv.dmp});
            if (it == idx.end()) continue;
            if (qnum_vanishes(lambda, Rational(mv.offset))) continue;
            scan.edges[v].push_back(it->second);
        }
    }
    scan.components = detail::strong_components(scan.edges);
    std::set<std::vector<std::size_t>> closures;
    for (const auto& comp : scan.components) {
        std::vector<bool> seen(scan.nodes.size(), false);
        std::vector<std::size_t> todo(comp.begin(), comp.end());
        for (auto v : comp) seen[v] = true;
        while (!todo.empty()) {
            const auto v = todo.back();
            todo.pop_back();
            for (auto w : scan.edges[v])
                if (!seen[w]) {
                    seen[w] = true;
                    todo.push_back(w);
                }
        }
        std::vector<std::size_t> cl;
        for (std::size_t v = 0; v < seen.size(); ++v)
            if (seen[v]) cl.push_back(v);
        closures.insert(std::move(cl));
    }
    scan.closures.assign(closures.begin(), closures.end());
    return scan;
}

/// Cutoff at which every vanishing line of lambda, and the regions it
/// separates, are visible; never below `requested`.
inline int recommended_scan_cutoff(int r, int s, const SpectralParam& lambda, int requested) {
    const auto norm = normalize_spectral(lambda);
    const std::int64_t mag = std::abs(floor(norm.lambda.re())) + 1;
    const std::int64_t need = 2 * mag + 2 * (r + s) + 4;
    return static_cast<int>(std::max<std::int64_t>(requested, need));
}

/// Outcome of comparing tabulated constituents with a scan.
struct RegionComparison {
    bool match = false;
    std::vector<std::string> problems;
};

/**
 * The constituent regions, cut to the scanned lattice and with empty ones
 * dropped, must be exactly the strongly connected components; subspaces and
 * direct summands must be invariant and quotients must have invariant
 * complements.
 */
inline RegionComparison compare_regions(const Classification& c, const LatticeScan& scan) {
    RegionComparison out;
    const std::size_t n = scan.nodes.size();
    std::vector<std::vector<std::size_t>> predicted;
    std::vector<int> owner(n, -1);
    for (std::size_t k = 0; k < c.constituents.size(); ++k) {
        const auto& con = c.constituents[k];
        std::vector<std::size_t> members;
        std::vector<bool> mask(n, false);
        for (std::size_t v = 0; v < n; ++v)
            if (con.region.contains(scan.nodes[v].first, scan.nodes[v].second)) {
                members.push_back(v);
                mask[v] = true;
                if (owner[v] >= 0)
                    out.problems.push_back("(" + std::to_string(scan.nodes[v].first) + "," +
                                           std::to_string(scan.nodes[v].second) + ") lies in " +
                                           c.constituents[static_cast<std::size_t>(owner[v])].name + " and " +
                                           con.name);
                owner[v] = static_cast<int>(k);
            }
        if (members.empty()) continue;
        if (con.realized_on == Realization::subspace || con.realized_on == Realization::direct_summand) {
            if (!scan.is_invariant(mask)) out.problems.push_back(con.name + " is not invariant");
        } else if (con.realized_on == Realization::quotient) {
            std::vector<bool> rest(n);
            for (std::size_t v = 0; v < n; ++v) rest[v] = !mask[v];
            if (!scan.is_invariant(rest)) out.problems.push_back("complement of " + con.name + " is not invariant");
        }
        predicted.push_back(std::move(members));
    }
    for (std::size_t v = 0; v < n; ++v)
        if (owner[v] < 0)
            out.problems.push_back("(" + std::to_string(scan.nodes[v].first) + "," +
                                   std::to_string(scan.nodes[v].second) + ") is in no constituent");
    std::sort(predicted.begin(), predicted.end());
    if (predicted != scan.components)
        out.problems.push_back("predicted partition has " + std::to_string(predicted.size()) +
                               " parts, scanner found " + std::to_string(scan.components.size()) +
                               " strongly connected components with different support");
    out.match = out.problems.empty();
    return out;
}

}  // namespace qdegen
