#pragma once

/**
 * @file degenrep.hpp
 * @brief Degenerate principal series T_{eps,lambda} of so'_q(r,s) on a
 *        truncated double-pattern basis.
 *
 * Generators I_{21}, ..., I_{r,r-1} act on the left chain as the class-1
 * representation of so'_q(r) with top entry m. The so'_q(s) generators are
 * attached in reverse: I_{r+1+j,r+j} acts on the right chain as I_{s+1-j,s-j}
 * of so'_q(s), so I_{r+2,r+1} is the one that moves k' (the label entering
 * L_{m'}). I_{r+1,r} moves only (m, m') by (+-1, +-1):
 *
 *   I_{r+1,r}|m,k,..;m',k',..> =  K_m     L_{m'}   [lambda+m+m']       |m+1;m'+1>
 *                               - K_m     L_{m'-1} [lambda+m-m'-s+2]   |m+1;m'-1>
 *                               + K_{m-1} L_{m'}   [lambda-m+m'-r+2]   |m-1;m'+1>
 *                               - K_{m-1} L_{m'-1} [lambda-m-m'-r-s+4] |m-1;m'-1>
 *
 *   K_m = ([m-k+1][m+k+r-2] / [2m+r][2m+r-2])^{1/2},  L_{m'} likewise with s.
 *
 * Transitions that would leave the truncation are dropped and their source
 * columns are flagged, so relations are exact on interior columns.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "compactrep.hpp"
#include "errors.hpp"
#include "gtbasis.hpp"
#include "qarith.hpp"

namespace qdegen {

struct RepSpec {
    int r = 3;
    int s = 3;
    int epsilon = 0;
    SpectralParam lambda;
    QParam q{2.0};
    int cutoff = 8;

    void validate() const {
        if (r <= 2 || s <= 2)
            throw UnsupportedRank("degenerate series needs r > 2 and s > 2 (got r=" +
                                  std::to_string(r) + ", s=" + std::to_string(s) + ")");
        if (epsilon != 0 && epsilon != 1) throw InvalidParameter("epsilon must be 0 or 1");
        if (cutoff < 0) throw InvalidParameter("cutoff must be nonnegative");
        (void)lambda.value(q);  // rejects exact im_t != 0 at q = 1
    }
};

enum class BasisKind { standard, primed };

inline const char* to_string(BasisKind k) { return k == BasisKind::standard ? "standard" : "primed"; }

/// Square-root branch used for one entry of the primed I_{r+1,r}.
struct BranchRecord {
    std::size_t row = 0;
    std::size_t col = 0;
    /// false where the consistent branch differs from the principal root of
    /// the product of the two q-numbers
    bool principal = true;
};

struct DegenerateRep {
    RepSpec spec;
    std::shared_ptr<const TruncatedSpace> space;
    std::vector<GeneratorMatrix> generators;  ///< I_{21}, ..., I_{r+s,r+s-1}
    BasisKind basis_kind = BasisKind::standard;
    std::vector<bool> dropped;  ///< column had a transition beyond the cutoff
    std::vector<BranchRecord> branches;

    int noncompact_index() const noexcept { return spec.r + 1; }

    const GeneratorMatrix& generator(int i) const {
        if (i < 2 || i > spec.r + spec.s) throw InvalidParameter("generator index out of range");
        return generators.at(static_cast<std::size_t>(i - 2));
    }

    const GeneratorMatrix& noncompact() const { return generator(noncompact_index()); }

    std::vector<bool> interior(int depth) const {
        auto mask = space->interior(depth);
        for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = mask[i] && !dropped[i];
        return mask;
    }
};

/// K_m for so'_q(r); exact zero when a numerator q-number has argument 0.
inline double K_coeff(int m, int k, int r, const QParam& p) {
    const int a = m - k + 1, b = m + k + r - 2;
    if (a == 0 || b == 0) return 0.0;
    const double radicand =
        qnum(p, a) * qnum(p, b) / (qnum(p, 2 * m + r) * qnum(p, 2 * m + r - 2));
    return detail::checked_sqrt(radicand, "K coefficient");
}

/// L_{m'} for so'_q(s); same formula as K with s in place of r.
inline double L_coeff(int mp, int kp, int s, const QParam& p) { return K_coeff(mp, kp, s, p); }

namespace detail {

/// The four transitions of I_{r+1,r}, in the order of the defining formula.
struct NoncompactTerm {
    int dm;
    int dmp;
    double sign;
    bool k_lowered;  ///< uses K_{m-1}
    bool l_lowered;  ///< uses L_{m'-1}
};

inline constexpr NoncompactTerm noncompact_terms[4] = {
    {+1, +1, +1.0, false, false},
    {+1, -1, -1.0, false, true},
    {-1, +1, +1.0, true, false},
    {-1, -1, -1.0, true, true},
};

inline std::vector<GeneratorMatrix> compact_generators(const TruncatedSpace& space, const QParam& p) {
    const int r = space.r(), s = space.s();
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    std::vector<GeneratorMatrix> gens;

    auto build = [&](int global_index, bool left_side, int local_k) {
        std::vector<Triplet> trips;
        for (std::size_t col = 0; col < space.dimension(); ++col) {
            const auto& pat = space.pattern(col);
            const auto& chain = left_side ? pat.left : pat.right;
            for (auto& t : chain_transitions(chain, local_k, p)) {
                if (t.coefficient == Complex(0.0, 0.0)) continue;
                DoublePattern target = left_side ? DoublePattern{t.target, pat.right}
                                                 : DoublePattern{pat.left, t.target};
                trips.emplace_back(static_cast<Eigen::Index>(space.index_of(target)),
                                   static_cast<Eigen::Index>(col), t.coefficient);
            }
        }
        GeneratorMatrix g{global_index, SparseMatrix(dim, dim)};
        g.matrix.setFromTriplets(trips.begin(), trips.end());
        g.matrix.makeCompressed();
        return g;
    };

    for (int k = 2; k <= r; ++k) gens.push_back(build(k, true, k));
    gens.push_back(GeneratorMatrix{r + 1, SparseMatrix(dim, dim)});  // placeholder
    for (int j = 1; j <= s - 1; ++j) gens.push_back(build(r + 1 + j, false, s + 1 - j));
    return gens;
}

/**
 * Assembles I_{r+1,r}. `factor(term, m, m')` supplies the lambda-dependent
 * factor of each transition; K and L are shared by both bases.
 */
template <class Factor>
void assemble_noncompact(DegenerateRep& rep, Factor&& factor) {
    const auto& space = *rep.space;
    const int r = space.r(), s = space.s();
    const QParam& p = rep.spec.q;
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    rep.dropped.assign(space.dimension(), false);

    std::vector<Triplet> trips;
    for (std::size_t col = 0; col < space.dimension(); ++col) {
        const auto& pat = space.pattern(col);
        const int m = pat.m(), mp = pat.mp();
        const int k = pat.left.at(r - 1), kp = pat.right.at(s - 1);
        for (int t = 0; t < 4; ++t) {
            const auto& term = noncompact_terms[t];
            const double kc = K_coeff(term.k_lowered ? m - 1 : m, k, r, p);
            const double lc = L_coeff(term.l_lowered ? mp - 1 : mp, kp, s, p);
            if (kc == 0.0 || lc == 0.0) continue;

            DoublePattern target{pat.left.with(r, m + term.dm), pat.right.with(s, mp + term.dmp)};
            if (!target.left.satisfies_betweenness() || !target.right.satisfies_betweenness())
                throw InternalConsistency("nonzero I_{r+1,r} coefficient towards inadmissible " +
                                          target.to_string());
            if (target.m() + target.mp() > space.cutoff()) {
                rep.dropped[col] = true;
                continue;
            }
            const Complex value = term.sign * kc * lc * factor(t, m, mp, space.index_of(target), col);
            if (value == Complex(0.0, 0.0)) continue;
            trips.emplace_back(static_cast<Eigen::Index>(space.index_of(target)),
                               static_cast<Eigen::Index>(col), value);
        }
    }
    auto& g = rep.generators.at(static_cast<std::size_t>(r + 1 - 2));
    g.matrix = SparseMatrix(dim, dim);
    g.matrix.setFromTriplets(trips.begin(), trips.end());
    g.matrix.makeCompressed();
}

/// Offsets c of the q-numbers [lambda + c] multiplying each transition.
inline Rational standard_offset(int term, int m, int mp, int r, int s) {
    switch (term) {
        case 0: return Rational(m + mp);
        case 1: return Rational(m - mp - s + 2);
        case 2: return Rational(-m + mp - r + 2);
        default: return Rational(-m - mp - r - s + 4);
    }
}

/// Offsets c of the companion q-numbers [-lambda + c] in the primed basis.
inline Rational primed_companion_offset(int term, int m, int mp, int r, int s) {
    switch (term) {
        case 0: return Rational(m + mp + r + s - 2);
        case 1: return Rational(m - mp + r);
        case 2: return Rational(-m + mp + s);
        default: return Rational(-m - mp + 2);
    }
}

}  // namespace detail

/// T_{eps,lambda} in the orthonormal Gel'fand-Tsetlin basis.
inline DegenerateRep build_degenerate(const RepSpec& spec) {
    spec.validate();
    DegenerateRep rep;
    rep.spec = spec;
    rep.space = std::make_shared<const TruncatedSpace>(spec.r, spec.s, spec.epsilon, spec.cutoff);
    rep.generators = detail::compact_generators(*rep.space, spec.q);
    rep.basis_kind = BasisKind::standard;
    detail::assemble_noncompact(rep, [&](int term, int m, int mp, std::size_t, std::size_t) {
        return qnum_shift(spec.q, spec.lambda, detail::standard_offset(term, m, mp, spec.r, spec.s));
    });
    return rep;
}

/**
 * Diagonal change of basis |v> = c(m,m') |v>'. The coefficient depends only
 * on the block (m, m'). With m + m' = 2 m0 + eps it is
 *
 *   prod_{t=1}^{m0} [-lambda+eps+r+s+2t-4]^{1/2} / [lambda+eps+2t-2]^{1/2}
 *
 * times, for m - m' = eps + 2i,
 *   prod_{t=1}^{i} [-lambda+eps+r+2t-2]^{1/2} / [lambda+eps-s+2t]^{1/2}
 * or, for m' - m = 2i - eps,
 *   prod_{t=1}^{i} [lambda+eps-s-2t+2]^{1/2} / [-lambda+eps+r-2t]^{1/2}.
 *
 * Each factor uses the principal square root.
 */
struct PrimedTransform {
    int epsilon = 0;
    std::map<std::pair<int, int>, Complex> coefficients;

    Complex at(int m, int mp) const {
        auto it = coefficients.find({m, mp});
        if (it == coefficients.end())
            throw NotFound("no primed coefficient for block (" + std::to_string(m) + "," +
                           std::to_string(mp) + ")");
        return it->second;
    }

    std::vector<Complex> diagonal(const TruncatedSpace& space) const {
        std::vector<Complex> d(space.dimension());
        for (const auto& b : space.blocks())
            for (std::size_t i = b.begin; i < b.end; ++i) d[i] = at(b.m, b.mp);
        return d;
    }
};

inline PrimedTransform primed_transform(const RepSpec& spec) {
    spec.validate();
    const int r = spec.r, s = spec.s, eps = spec.epsilon;
    const SpectralParam lam = spec.lambda, neg = -spec.lambda;
    const QParam& p = spec.q;

    auto factor = [&](bool negated, int offset, const std::string& name, int t) {
        const Complex v = qnum_shift(p, negated ? neg : lam, Rational(offset));
        const bool zero = lam.is_exact() ? (v == Complex(0.0, 0.0)) : (std::abs(v) < 1e-13);
        if (zero) throw PrimedBasisUndefined(name + " at t=" + std::to_string(t));
        return std::sqrt(v);
    };

    PrimedTransform out;
    out.epsilon = eps;
    const int top = spec.cutoff;

    std::vector<Complex> base(1, Complex(1.0, 0.0));  // base[m0]
    for (int m0 = 1; 2 * m0 + eps <= top; ++m0) {
        const int t = m0;
        base.push_back(base.back() *
                       factor(true, eps + r + s + 2 * t - 4, "[-lambda+eps+r+s+2t-4]", t) /
                       factor(false, eps + 2 * t - 2, "[lambda+eps+2t-2]", t));
    }
    const int max_i = top + 1;
    std::vector<Complex> away(1, Complex(1.0, 0.0)), toward(1, Complex(1.0, 0.0));
    auto ensure = [&](std::size_t i) {
        while (away.size() <= i) {
            const int t = static_cast<int>(away.size());
            away.push_back(away.back() * factor(true, eps + r + 2 * t - 2, "[-lambda+eps+r+2t-2]", t) /
                           factor(false, eps - s + 2 * t, "[lambda+eps-s+2t]", t));
        }
        while (toward.size() <= i) {
            const int t = static_cast<int>(toward.size());
            toward.push_back(toward.back() * factor(false, eps - s - 2 * t + 2, "[lambda+eps-s-2t+2]", t) /
                             factor(true, eps + r - 2 * t, "[-lambda+eps+r-2t]", t));
        }
    };
    (void)max_i;

    for (int level = eps; level <= top; level += 2) {
        const int m0 = (level - eps) / 2;
        for (int m = 0; m <= level; ++m) {
            const int mp = level - m;
            Complex c;
            if (m - mp >= eps) {
                const auto i = static_cast<std::size_t>(m - m0 - eps);
                ensure(i);
                c = base[static_cast<std::size_t>(m0)] * away[i];
                if (i == 0 && m0 + eps - m == 0) {
                    const Complex other = base[static_cast<std::size_t>(m0)] * toward[0];
                    if (std::abs(other - c) > 1e-12 * std::abs(c))
                        throw InternalConsistency("primed transform families disagree on their overlap");
                }
            } else {
                const auto i = static_cast<std::size_t>(m0 + eps - m);
                ensure(i);
                c = base[static_cast<std::size_t>(m0)] * toward[i];
            }
            out.coefficients.emplace(std::make_pair(m, mp), c);
        }
    }
    return out;
}

/**
 * T_{eps,lambda} in the primed basis. Compact generators are unchanged;
 * I_{r+1,r} carries {[lambda+c][-lambda+c']}^{1/2} factors. For the raising
 * transitions the root is x^{1/2} y^{1/2}, for the lowering transitions
 * -(-x)^{1/2}(-y)^{1/2} (principal roots of the single factors). This is
 * the branch produced by conjugating with primed_transform, and makes the
 * primed I_{r+1,r} a complex-symmetric matrix.
 */
inline DegenerateRep build_degenerate_primed(const RepSpec& spec) {
    spec.validate();
    DegenerateRep rep;
    rep.spec = spec;
    rep.space = std::make_shared<const TruncatedSpace>(spec.r, spec.s, spec.epsilon, spec.cutoff);
    rep.generators = detail::compact_generators(*rep.space, spec.q);
    rep.basis_kind = BasisKind::primed;
    const SpectralParam neg = -spec.lambda;
    detail::assemble_noncompact(rep, [&](int term, int m, int mp, std::size_t row, std::size_t col) {
        const Rational c = detail::standard_offset(term, m, mp, spec.r, spec.s);
        const Rational cp = detail::primed_companion_offset(term, m, mp, spec.r, spec.s);
        const Complex x = qnum_shift(spec.q, spec.lambda, c);
        const Complex y = qnum_shift(spec.q, neg, cp);
        const bool raising = term < 2;
        // -x and -y are evaluated as [-lambda-c] and [lambda-c'] rather than by
        // negation, so a signed zero imaginary part cannot flip the root.
        const Complex root = raising ? std::sqrt(x) * std::sqrt(y)
                                     : -std::sqrt(qnum_shift(spec.q, neg, -c)) *
                                           std::sqrt(qnum_shift(spec.q, spec.lambda, -cp));
        const Complex principal = std::sqrt(x * y);
        const double scale = std::max(1.0, std::abs(root));
        rep.branches.push_back({row, col, std::abs(root - principal) <= 1e-12 * scale});
        return root;
    });
    return rep;
}

}  // namespace qdegen
