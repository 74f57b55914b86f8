#pragma once

/**
 * @file compactrep.hpp
 * @brief Generator matrices of so'_q(3) irreps and of class-1 irreps of
 *        so'_q(n) on the Gel'fand-Tsetlin basis.
 *
 * I_{21} is diagonal with entries i[m_2]_q. I_{32} follows the so'_q(3)
 * formula with l = m_3, m = m_2. For k >= 4 the operator I_{k,k-1} moves only
 * m_{k-1}:
 *
 *   I_{k,k-1}|..m_{k-1}..> = ([m_k+m_{k-1}+k-2][m_k-m_{k-1}])^{1/2} R(m_{k-1})   |..m_{k-1}+1..>
 *                          - ([m_k+m_{k-1}+k-3][m_k-m_{k-1}+1])^{1/2} R(m_{k-1}-1) |..m_{k-1}-1..>
 *
 *   R(m_{k-1}) = ([m_{k-1}+m_{k-2}+k-3][m_{k-1}-m_{k-2}+1] / [2m_{k-1}+k-3][2m_{k-1}+k-1])^{1/2}
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SparseCore>

#include "errors.hpp"
#include "gtbasis.hpp"
#include "qarith.hpp"

namespace qdegen {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

/// Matrix of I_{i,i-1} on an indexed basis.
struct GeneratorMatrix {
    int index = 0;  ///< i in I_{i,i-1}
    SparseMatrix matrix;

    std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

namespace detail {

/// sqrt of a radicand that is nonnegative for every admissible pattern.
inline double checked_sqrt(double x, const char* what) {
    if (x < 0.0) {
        if (x > -1e-13) return 0.0;
        throw InternalConsistency(std::string("negative radicand in ") + what + ": " +
                                  std::to_string(x));
    }
    return std::sqrt(x);
}

}  // namespace detail

/**
 * d(m) = ([m][m+1] / [2m][2m+2])^{1/2}, evaluated as
 * 1/sqrt((q^{m/2}+q^{-m/2})(q^{(m+1)/2}+q^{-(m+1)/2})); this is the same
 * function and is finite at m = 0 and m = -1.
 */
inline double d_coeff(double m, const QParam& p) {
    const double h = p.h();
    return 1.0 / std::sqrt(4.0 * std::cosh(h * m / 2.0) * std::cosh(h * (m + 1.0) / 2.0));
}

/// R(m1) with m1 = m_{n-1}, m2 = m_{n-2} for so'_q(n), n >= 4.
inline double R_coeff(int m1, int m2, int n, const QParam& p) {
    if (n < 4)
        throw InvalidParameter("R_coeff is defined for n >= 4; so'_q(3) uses build_so3");
    const int a = m1 + m2 + n - 3, b = m1 - m2 + 1;
    if (a == 0 || b == 0) return 0.0;
    const double radicand =
        qnum(p, a) * qnum(p, b) / (qnum(p, 2 * m1 + n - 3) * qnum(p, 2 * m1 + n - 1));
    return detail::checked_sqrt(radicand, "R coefficient");
}

struct ChainTransition {
    ChainPattern target;
    Complex coefficient;
};

/**
 * Action of I_{k,k-1} (2 <= k <= n) of so'_q(n) on one chain pattern.
 * Returns at most two transitions; transitions to patterns outside the
 * representation are omitted.
 */
inline std::vector<ChainTransition> chain_transitions(const ChainPattern& c, int k, const QParam& p) {
    const int n = c.n();
    if (k < 2 || k > n) throw InvalidParameter("generator index out of range");
    std::vector<ChainTransition> out;
    if (k == 2) {
        out.push_back({c, Complex(0.0, qnum(p, c.value(2)))});
        return out;
    }
    if (k == 3) {
        const double l = c.value(3), m = c.value(2);
        if (c.twice(2) + 2 <= c.twice(3)) {
            const double rad = qnum(p, l - m) * qnum(p, l + m + 1);
            out.push_back({c.shifted(2, 1),
                           d_coeff(m, p) * detail::checked_sqrt(rad, "so3 raising")});
        }
        if (c.twice(2) - 2 >= -c.twice(3)) {
            const double rad = qnum(p, l + m) * qnum(p, l - m + 1);
            out.push_back({c.shifted(2, -1),
                           -d_coeff(m - 1, p) * detail::checked_sqrt(rad, "so3 lowering")});
        }
        return out;
    }
    const int mk = c.at(k), mk1 = c.at(k - 1), mk2 = c.at(k - 2);
    if (mk1 + 1 <= mk) {
        const double rad = qnum(p, mk + mk1 + k - 2) * qnum(p, mk - mk1);
        out.push_back({c.with(k - 1, mk1 + 1),
                       detail::checked_sqrt(rad, "class-1 raising") * R_coeff(mk1, mk2, k, p)});
    }
    if (mk1 - 1 >= std::abs(mk2)) {
        const double rad = qnum(p, mk + mk1 + k - 3) * qnum(p, mk - mk1 + 1);
        out.push_back({c.with(k - 1, mk1 - 1),
                       -detail::checked_sqrt(rad, "class-1 lowering") * R_coeff(mk1 - 1, mk2, k, p)});
    }
    return out;
}

namespace detail {

inline std::vector<GeneratorMatrix> matrices_on_chains(const std::vector<ChainPattern>& basis,
                                                       int n, const QParam& p) {
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i].twice_entries(), i);
    const auto dim = static_cast<Eigen::Index>(basis.size());

    std::vector<GeneratorMatrix> gens;
    for (int k = 2; k <= n; ++k) {
        std::vector<Triplet> trips;
        for (std::size_t col = 0; col < basis.size(); ++col)
            for (const auto& t : chain_transitions(basis[col], k, p)) {
                if (t.coefficient == Complex(0.0, 0.0)) continue;
                auto it = index.find(t.target.twice_entries());
                if (it == index.end())
                    throw InternalConsistency("transition leaves the representation: " +
                                              t.target.to_string());
                trips.emplace_back(static_cast<Eigen::Index>(it->second),
                                   static_cast<Eigen::Index>(col), t.coefficient);
            }
        GeneratorMatrix g{k, SparseMatrix(dim, dim)};
        g.matrix.setFromTriplets(trips.begin(), trips.end());
        g.matrix.makeCompressed();
        gens.push_back(std::move(g));
    }
    return gens;
}

}  // namespace detail

/// T_l(I_{21}) and T_l(I_{32}) on |m>, m = -l, ..., l.
inline std::array<GeneratorMatrix, 2> build_so3(const Rational& l, const QParam& p) {
    auto gens = detail::matrices_on_chains(enumerate_chain(3, l), 3, p);
    return {std::move(gens[0]), std::move(gens[1])};
}

/// I_{21}, ..., I_{n,n-1} of the class-1 representation T_{m_top} of so'_q(n).
inline std::vector<GeneratorMatrix> build_class1(int n, int m_top, const QParam& p) {
    if (m_top < 0) throw InvalidParameter("class-1 highest label must be nonnegative");
    return detail::matrices_on_chains(enumerate_chain(n, m_top), n, p);
}

}  // namespace qdegen
