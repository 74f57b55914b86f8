#pragma once

/**
 * @file verify.hpp
 * @brief Relation and adjointness checks, block-scalar metrics and diagonal
 *        intertwiners.
 *
 * For adjacent generators X = I_{i,i-1}, Y = I_{i+1,i} the deformed relations
 * read
 *
 *   X^2 Y - a X Y X + Y X^2 = -Y,      X Y^2 - a Y X Y + Y^2 X = -X,
 *
 * and generators with |i - j| > 1 commute. Residuals are max-abs entries of
 * the left side plus the right side, restricted to a column mask.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "compactrep.hpp"
#include "degenrep.hpp"
#include "errors.hpp"
#include "gtbasis.hpp"

namespace qdegen {

enum class RelationKind { cubic_lower, cubic_upper, commutator, star };

inline const char* to_string(RelationKind k) {
    switch (k) {
        case RelationKind::cubic_lower: return "cubic_lower";
        case RelationKind::cubic_upper: return "cubic_upper";
        case RelationKind::commutator: return "commutator";
        default: return "star";
    }
}

/// One relation instance. For cubic relations i and j = i+1 are the indices
/// of X = I_{i,i-1} and Y = I_{j,j-1}; cubic_lower is X^2 Y - aXYX + YX^2 + Y.
struct RelationResidual {
    RelationKind kind = RelationKind::commutator;
    int i = 0;
    int j = 0;
    double residual = 0.0;
    std::optional<std::size_t> worst_column;
    std::string worst_pattern;
    bool pass = true;

    std::string name() const {
        std::string g = "I" + std::to_string(i) + "," + std::to_string(i - 1);
        if (kind == RelationKind::star) return std::string("star(") + g + ")";
        return std::string(to_string(kind)) + "(" + g + "; I" + std::to_string(j) + "," +
               std::to_string(j - 1) + ")";
    }
};

struct ResidualReport {
    std::vector<RelationResidual> relations;
    double tolerance = 1e-9;
    std::size_t checked_columns = 0;

    double max_residual() const {
        double m = 0.0;
        for (const auto& r : relations) m = std::max(m, r.residual);
        return m;
    }

    bool pass() const {
        return std::all_of(relations.begin(), relations.end(), [](const auto& r) { return r.pass; });
    }

    const RelationResidual* worst() const {
        const RelationResidual* w = nullptr;
        for (const auto& r : relations)
            if (!w || r.residual > w->residual) w = &r;
        return w;
    }

    void merge(const ResidualReport& o) {
        relations.insert(relations.end(), o.relations.begin(), o.relations.end());
        checked_columns = std::max(checked_columns, o.checked_columns);
    }
};

using ColumnLabel = std::function<std::string(std::size_t)>;

namespace detail {

inline SparseMatrix column_selector(const std::vector<bool>& mask, std::vector<std::size_t>& columns) {
    columns.clear();
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) columns.push_back(i);
    std::vector<Triplet> trips;
    trips.reserve(columns.size());
    for (std::size_t k = 0; k < columns.size(); ++k)
        trips.emplace_back(static_cast<Eigen::Index>(columns[k]), static_cast<Eigen::Index>(k),
                           Complex(1.0, 0.0));
    SparseMatrix P(static_cast<Eigen::Index>(mask.size()), static_cast<Eigen::Index>(columns.size()));
    P.setFromTriplets(trips.begin(), trips.end());
    return P;
}

/// Max-abs entry of M and the original column index where it occurs.
inline std::pair<double, std::optional<std::size_t>> max_abs(const SparseMatrix& M,
                                                             const std::vector<std::size_t>* columns) {
    double best = 0.0;
    std::optional<std::size_t> where;
    for (Eigen::Index c = 0; c < M.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(M, c); it; ++it) {
            const double v = std::abs(it.value());
            if (v > best || (!where && v == best && v > 0.0)) {
                best = v;
                where = columns ? (*columns)[static_cast<std::size_t>(c)] : static_cast<std::size_t>(c);
            }
        }
    return {best, where};
}

inline void check_dimensions(const std::vector<GeneratorMatrix>& gens) {
    if (gens.empty()) throw DimensionMismatch("no generators given");
    const auto n = gens.front().matrix.rows();
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].matrix.rows() != n || gens[k].matrix.cols() != n)
            throw DimensionMismatch("generator I" + std::to_string(gens[k].index) +
                                    " does not share the basis of the others");
        if (k > 0 && gens[k].index != gens[k - 1].index + 1)
            throw InvalidParameter("generators must be consecutive I_{21}, I_{32}, ...");
    }
}

inline RelationResidual finish(RelationKind kind, int i, int j, const SparseMatrix& M,
                               const std::vector<std::size_t>* cols, double tol, const ColumnLabel& label) {
    RelationResidual r;
    r.kind = kind;
    r.i = i;
    r.j = j;
    auto [v, where] = max_abs(M, cols);
    r.residual = v;
    r.worst_column = where;
    if (where && label) r.worst_pattern = label(*where);
    r.pass = v < tol;
    return r;
}

}  // namespace detail

/**
 * Checks every deformed relation among consecutive generators on the columns
 * selected by `mask` (all columns when empty).
 */
inline ResidualReport check_relations(const std::vector<GeneratorMatrix>& gens, double a,
                                      const std::vector<bool>& mask, double tol,
                                      const ColumnLabel& label = {}) {
    detail::check_dimensions(gens);
    const auto dim = static_cast<std::size_t>(gens.front().matrix.rows());
    std::vector<bool> m = mask.empty() ? std::vector<bool>(dim, true) : mask;
    if (m.size() != dim) throw DimensionMismatch("column mask size differs from the basis size");

    std::vector<std::size_t> cols;
    const SparseMatrix P = detail::column_selector(m, cols);
    std::vector<SparseMatrix> GP;
    GP.reserve(gens.size());
    for (const auto& g : gens) GP.push_back((g.matrix * P).pruned());

    ResidualReport rep;
    rep.tolerance = tol;
    rep.checked_columns = cols.size();
    const Complex ca(a, 0.0);
    for (std::size_t x = 0; x < gens.size(); ++x) {
        for (std::size_t y = x + 1; y < gens.size(); ++y) {
            const SparseMatrix& X = gens[x].matrix;
            const SparseMatrix& Y = gens[y].matrix;
            const int i = gens[x].index, j = gens[y].index;
            if (y == x + 1) {
                const SparseMatrix XP = GP[x], YP = GP[y];
                const SparseMatrix XXP = X * XP, YYP = Y * YP, XYP = X * YP, YXP = Y * XP;
                SparseMatrix lower = X * XYP;
                lower -= ca * (X * YXP);
                lower += Y * XXP;
                lower += YP;
                rep.relations.push_back(
                    detail::finish(RelationKind::cubic_lower, i, j, lower, &cols, tol, label));
                SparseMatrix upper = X * YYP;
                upper -= ca * (Y * XYP);
                upper += Y * YXP;
                upper += XP;
                rep.relations.push_back(
                    detail::finish(RelationKind::cubic_upper, i, j, upper, &cols, tol, label));
            } else {
                SparseMatrix comm = X * GP[y];
                comm -= Y * GP[x];
                rep.relations.push_back(
                    detail::finish(RelationKind::commutator, i, j, comm, &cols, tol, label));
            }
        }
    }
    return rep;
}

/// Compact representation: relations on every column.
inline ResidualReport check_relations(const std::vector<GeneratorMatrix>& gens, const QParam& p,
                                      double tol, const ColumnLabel& label = {}) {
    return check_relations(gens, p.a(), {}, tol, label);
}

/// Degenerate series: relations on the interior columns of the given depth.
inline ResidualReport check_relations(const DegenerateRep& rep, int depth, double tol) {
    if (depth < 0) throw InvalidParameter("interior depth must be nonnegative");
    const auto& space = *rep.space;
    return check_relations(rep.generators, rep.spec.q.a(), rep.interior(depth), tol,
                           [&space](std::size_t c) { return space.pattern(c).to_string(); });
}

/// Adjoint conditions: M* = -M for each compact generator, M* = M for the
/// generator listed in `hermitian` (if any).
inline ResidualReport check_star(const std::vector<GeneratorMatrix>& gens, double tol,
                                 std::optional<int> hermitian = std::nullopt,
                                 const ColumnLabel& label = {}) {
    detail::check_dimensions(gens);
    ResidualReport rep;
    rep.tolerance = tol;
    rep.checked_columns = static_cast<std::size_t>(gens.front().matrix.cols());
    for (const auto& g : gens) {
        SparseMatrix adj = g.matrix.adjoint();
        SparseMatrix diff = (hermitian && *hermitian == g.index) ? SparseMatrix(adj - g.matrix)
                                                                 : SparseMatrix(adj + g.matrix);
        rep.relations.push_back(detail::finish(RelationKind::star, g.index, g.index, diff, nullptr, tol, label));
    }
    return rep;
}

inline ResidualReport check_star(const DegenerateRep& rep, double tol) {
    const auto& space = *rep.space;
    return check_star(rep.generators, tol, rep.noncompact_index(),
                      [&space](std::size_t c) { return space.pattern(c).to_string(); });
}

/// Copy of `rep` with every generator replaced by D M D^{-1}, D = diag(d).
inline DegenerateRep conjugate(const DegenerateRep& rep, const std::vector<Complex>& d) {
    if (d.size() != rep.space->dimension()) throw DimensionMismatch("diagonal size differs from the basis size");
    DegenerateRep out = rep;
    for (auto& g : out.generators) {
        for (Eigen::Index c = 0; c < g.matrix.outerSize(); ++c)
            for (SparseMatrix::InnerIterator it(g.matrix, c); it; ++it)
                it.valueRef() *= d[static_cast<std::size_t>(it.row())] / d[static_cast<std::size_t>(it.col())];
    }
    return out;
}

enum class MetricStatus { found, none, indefinite };

inline const char* to_string(MetricStatus s) {
    switch (s) {
        case MetricStatus::found: return "found";
        case MetricStatus::none: return "none";
        default: return "indefinite";
    }
}

/**
 * Block-scalar metric c(m, m'). The noncompact generator is Hermitian for
 * <e_v, e_w> = c_v delta_{vw} iff c_w / c_v = conj(A_{vw}) / A_{wv} on every
 * pair of linked basis vectors.
 */
struct MetricSolution {
    MetricStatus status = MetricStatus::none;
    std::vector<double> weights;  ///< per block, in TruncatedSpace::blocks() order
    std::size_t components = 0;   ///< connected components of the block graph
    double max_mismatch = 0.0;    ///< worst relative disagreement among ratios
    std::string reason;

    /// diag(sqrt(c)) on the basis; conjugating by it gives an orthonormal basis.
    std::vector<Complex> sqrt_diagonal(const TruncatedSpace& space) const {
        std::vector<Complex> d(space.dimension());
        for (std::size_t b = 0; b < space.blocks().size(); ++b)
            for (std::size_t i = space.block(b).begin; i < space.block(b).end; ++i)
                d[i] = std::sqrt(std::abs(weights[b]));
        return d;
    }
};

namespace detail {

/// Solves x_target = x_source * ratio over the block graph of A, where
/// `ratio(v, w, a_vw, a_wv)` gives the value for the edge source w -> target v.
/// Returns per-block values (base block fixed to 1) or a failure reason.
struct BlockSolve {
    std::vector<Complex> values;
    std::size_t components = 0;
    double max_mismatch = 0.0;
    std::string failure;
};

template <class Ratio>
BlockSolve solve_blocks(const TruncatedSpace& space, const SparseMatrix& A, double rel_tol, Ratio&& ratio) {
    const std::size_t nb = space.blocks().size();
    // per block pair, the first ratio seen; later ones must agree
    std::vector<std::vector<std::pair<std::size_t, Complex>>> adj(nb);
    BlockSolve out;
    auto record = [&](std::size_t from, std::size_t to, Complex r) -> bool {
        for (auto& [t, v] : adj[from])
            if (t == to) {
                const double mis = std::abs(v - r) / std::max(std::abs(v), 1e-300);
                out.max_mismatch = std::max(out.max_mismatch, mis);
                if (mis > rel_tol) {
                    out.failure = "inconsistent ratios between blocks";
                    return false;
                }
                return true;
            }
        adj[from].emplace_back(to, r);
        return true;
    };

    for (Eigen::Index c = 0; c < A.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(A, c); it; ++it) {
            const auto v = static_cast<std::size_t>(it.row()), w = static_cast<std::size_t>(it.col());
            const std::size_t bv = space.block_of(v), bw = space.block_of(w);
            if (bv == bw) continue;
            std::optional<Complex> r = ratio(v, w, it.value());
            if (!r) {
                if (out.failure.empty()) out.failure = "one-sided coupling between blocks";
                return out;
            }
            if (!record(bw, bv, *r) || !record(bv, bw, Complex(1.0, 0.0) / *r)) return out;
        }

    out.values.assign(nb, Complex(0.0, 0.0));
    std::vector<bool> seen(nb, false);
    for (std::size_t root = 0; root < nb; ++root) {
        if (seen[root]) continue;
        ++out.components;
        seen[root] = true;
        out.values[root] = Complex(1.0, 0.0);
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            const std::size_t b = queue.front();
            queue.pop_front();
            for (const auto& [t, r] : adj[b]) {
                const Complex want = out.values[b] * r;
                if (!seen[t]) {
                    seen[t] = true;
                    out.values[t] = want;
                    queue.push_back(t);
                } else {
                    const double mis = std::abs(out.values[t] - want) / std::max(std::abs(want), 1e-300);
                    out.max_mismatch = std::max(out.max_mismatch, mis);
                    if (mis > rel_tol) {
                        out.failure = "cycle mismatch in the block graph";
                        return out;
                    }
                }
            }
        }
    }
    return out;
}

inline Complex entry(const SparseMatrix& A, std::size_t row, std::size_t col) {
    return A.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

}  // namespace detail

/**
 * Positive block-scalar metric making I_{r+1,r} Hermitian (compact
 * generators are block-diagonal and stay anti-Hermitian). Weights are
 * normalized to 1 on the first block of each connected component.
 */
inline MetricSolution solve_metric(const DegenerateRep& rep, double rel_tol = 1e-8) {
    const auto& space = *rep.space;
    const SparseMatrix& A = rep.noncompact().matrix;
    MetricSolution sol;
    bool complex_ratio = false;
    auto solve = detail::solve_blocks(space, A, rel_tol, [&](std::size_t v, std::size_t w, Complex a_vw)
                                                             -> std::optional<Complex> {
        // edge w -> v carries c_v / c_w = conj(A_{wv}) / A_{vw}
        const Complex a_wv = detail::entry(A, w, v);
        if (a_wv == Complex(0.0, 0.0)) return std::nullopt;
        const Complex r = std::conj(a_wv) / a_vw;
        if (std::abs(r.imag()) > rel_tol * std::abs(r)) complex_ratio = true;
        return r;
    });
    sol.components = solve.components;
    sol.max_mismatch = solve.max_mismatch;
    if (!solve.failure.empty()) {
        sol.status = MetricStatus::none;
        sol.reason = solve.failure;
        return sol;
    }
    if (complex_ratio) {
        sol.status = MetricStatus::none;
        sol.reason = "non-real ratio between blocks";
        return sol;
    }
    sol.weights.resize(solve.values.size());
    bool negative = false;
    for (std::size_t b = 0; b < solve.values.size(); ++b) {
        sol.weights[b] = solve.values[b].real();
        if (!(sol.weights[b] > 0.0)) negative = true;
    }
    sol.status = negative ? MetricStatus::indefinite : MetricStatus::found;
    if (negative) sol.reason = "ratios are real but some weights are negative";
    return sol;
}

/// Block-scalar S with S A(X) = B(X) S for every generator X.
struct IntertwinerSolution {
    bool found = false;
    std::vector<Complex> block_values;  ///< per block, first block fixed to 1
    std::vector<Complex> diagonal;      ///< per basis vector
    /// max |A(X) - S^-1 B(X) S|; independent of how S grows across blocks
    double residual = std::numeric_limits<double>::infinity();
    double raw_residual = std::numeric_limits<double>::infinity();  ///< max |S A(X) - B(X) S|
    std::string reason;
};

inline IntertwinerSolution solve_intertwiner(const DegenerateRep& A, const DegenerateRep& B,
                                             double tol = 1e-8, double rel_tol = 1e-8) {
    IntertwinerSolution out;
    const auto& sa = A.spec;
    const auto& sb = B.spec;
    if (sa.r != sb.r || sa.s != sb.s || sa.epsilon != sb.epsilon || sa.cutoff != sb.cutoff ||
        !(sa.q == sb.q))
        throw InvalidParameter("intertwiner needs equal r, s, epsilon, q and cutoff");
    const auto& space = *A.space;
    const SparseMatrix& a = A.noncompact().matrix;
    const SparseMatrix& b = B.noncompact().matrix;

    auto solve = detail::solve_blocks(space, a, rel_tol, [&](std::size_t v, std::size_t w, Complex a_vw)
                                                             -> std::optional<Complex> {
        // (S A)_{vw} = S_v a_vw = b_vw S_w
        const Complex b_vw = detail::entry(b, v, w);
        if (b_vw == Complex(0.0, 0.0)) return std::nullopt;
        return b_vw / a_vw;
    });
    if (!solve.failure.empty()) {
        out.reason = solve.failure;
        return out;
    }
    out.block_values = solve.values;
    out.diagonal.resize(space.dimension());
    for (std::size_t blk = 0; blk < space.blocks().size(); ++blk)
        for (std::size_t i = space.block(blk).begin; i < space.block(blk).end; ++i)
            out.diagonal[i] = solve.values[blk];

    const auto n = static_cast<Eigen::Index>(space.dimension());
    SparseMatrix S(n, n), Sinv(n, n);
    std::vector<Triplet> trips, inv;
    for (std::size_t i = 0; i < out.diagonal.size(); ++i) {
        const auto k = static_cast<Eigen::Index>(i);
        trips.emplace_back(k, k, out.diagonal[i]);
        inv.emplace_back(k, k, Complex(1.0, 0.0) / out.diagonal[i]);
    }
    S.setFromTriplets(trips.begin(), trips.end());
    Sinv.setFromTriplets(inv.begin(), inv.end());

    double res = 0.0, raw = 0.0;
    for (std::size_t g = 0; g < A.generators.size(); ++g) {
        const SparseMatrix& ag = A.generators[g].matrix;
        const SparseMatrix& bg = B.generators[g].matrix;
        SparseMatrix d = S * ag;
        d -= bg * S;
        raw = std::max(raw, detail::max_abs(d, nullptr).first);
        SparseMatrix e = Sinv * bg * S;
        e -= ag;
        res = std::max(res, detail::max_abs(e, nullptr).first);
    }
    out.raw_residual = raw;
    out.residual = res;
    out.found = res < tol;
    if (!out.found) out.reason = "residual above tolerance";
    return out;
}

}  // namespace qdegen
