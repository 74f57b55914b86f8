#include <cmath>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qdegen/compactrep.hpp"
#include "qdegen/verify.hpp"
#include "support.hpp"

using namespace qdegen;

namespace {

Complex at(const SparseMatrix& M, Eigen::Index r, Eigen::Index c) { return M.coeff(r, c); }

}  // namespace

TEST(DCoeff, Values) {
    EXPECT_NEAR(d_coeff(0, QParam(1)), 0.5, 1e-15);
    EXPECT_NEAR(d_coeff(3, QParam(1)), 0.5, 1e-15);
    // limit of the unreduced quotient as m -> 0
    const double m = 1e-8;
    const double raw = std::sqrt(oracle::qn(2.0, m) * oracle::qn(2.0, m + 1) /
                                 (oracle::qn(2.0, 2 * m) * oracle::qn(2.0, 2 * m + 2)));
    EXPECT_NEAR(d_coeff(0, QParam(2)), raw, 1e-7);
}

TEST(DCoeff, Symmetric) {
    for (double q : {0.5, 1.0, 2.0})
        for (double m = -4; m <= 4; m += 0.5)
            EXPECT_NEAR(d_coeff(m, QParam(q)), d_coeff(-m - 1, QParam(q)), 1e-14);
}

TEST(DCoeff, MatchesPaperFormAwayFromSingularities) {
    for (double q : {0.5, 2.0, 3.0})
        for (double m : {0.5, 1.0, 1.5, 2.0, 5.0})
            EXPECT_NEAR(d_coeff(m, QParam(q)), std::sqrt(oracle::d_squared(q, m)), 1e-12);
}

TEST(RCoeff, Values) {
    EXPECT_NEAR(R_coeff(0, 0, 4, QParam(1)), 1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(R_coeff(1, 0, 5, QParam(1)), 0.5, 1e-15);
    EXPECT_NEAR(R_coeff(2, 1, 5, QParam(2)), oracle::R(2.0, 2, 1, 5), 1e-13);
}

TEST(So3, SpinOne) {
    for (double q : {1.0, 2.0}) {
        auto g = build_so3(Rational(1), QParam(q));
        ASSERT_EQ(g[0].dim(), 3u);
        EXPECT_EQ(at(g[0].matrix, 0, 0), Complex(0, -1));
        EXPECT_EQ(at(g[0].matrix, 1, 1), Complex(0, 0));
        EXPECT_EQ(at(g[0].matrix, 2, 2), Complex(0, 1));
    }
    auto g = build_so3(Rational(1), QParam(1));
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(at(g[1].matrix, 1, 0).real(), h, 1e-15);
    EXPECT_NEAR(at(g[1].matrix, 2, 1).real(), h, 1e-15);
    EXPECT_NEAR(at(g[1].matrix, 0, 1).real(), -h, 1e-15);
    EXPECT_NEAR(at(g[1].matrix, 1, 2).real(), -h, 1e-15);
}

TEST(So3, HalfSpin) {
    auto g = build_so3(Rational(1, 2), QParam(2));
    const double half = (std::pow(2, 0.25) - std::pow(2, -0.25)) / (std::sqrt(2.0) - 1 / std::sqrt(2.0));
    EXPECT_NEAR(std::abs(at(g[0].matrix, 0, 0) - Complex(0, -half)), 0, 1e-14);
    EXPECT_NEAR(std::abs(at(g[0].matrix, 1, 1) - Complex(0, half)), 0, 1e-14);
}

TEST(Class1, SameAsSo3ForNThree) {
    auto a = build_class1(3, 2, QParam(2));
    auto b = build_so3(Rational(2), QParam(2));
    for (int i = 0; i < 2; ++i)
        EXPECT_EQ(SparseMatrix(a[static_cast<std::size_t>(i)].matrix - b[static_cast<std::size_t>(i)].matrix).norm(), 0.0);
}

TEST(Class1, MatchesOracle) {
    for (double q : {0.5, 1.0, 2.0})
        for (int n = 3; n <= 6; ++n)
            for (int m = 0; m <= 3; ++m)
                EXPECT_LT(support::compact_vs_oracle(n, Rational(m), q, q), 1e-12) << n << " " << m << " " << q;
    for (int l2 = 1; l2 <= 7; l2 += 2) EXPECT_LT(support::compact_vs_oracle(3, Rational(l2, 2), 2.0, 2.0), 1e-12);
}

TEST(Class1, Relations) {
    for (double q : {0.5, 1.0, 2.0})
        for (int n = 3; n <= 6; ++n)
            for (int m = 0; m <= 4; ++m) {
                auto rep = check_relations(build_class1(n, m, QParam(q)), QParam(q), 1e-10);
                EXPECT_TRUE(rep.pass()) << n << " " << m << " " << q << " " << rep.max_residual();
            }
    auto so3 = build_so3(Rational(3), QParam(2));
    EXPECT_LT(check_relations({so3[0], so3[1]}, QParam(2), 1e-12).max_residual(), 1e-12);
}

TEST(Class1, AntiHermitian) {
    for (int n = 3; n <= 6; ++n) {
        auto rep = check_star(build_class1(n, 3, QParam(2)), 1e-12);
        EXPECT_TRUE(rep.pass()) << n;
    }
}

TEST(Class1, Sparsity) {
    auto gens = build_class1(5, 3, QParam(2));
    for (const auto& g : gens)
        for (Eigen::Index c = 0; c < g.matrix.outerSize(); ++c) {
            int nz = 0;
            for (SparseMatrix::InnerIterator it(g.matrix, c); it; ++it) {
                ++nz;
                if (g.index == 2) EXPECT_EQ(it.row(), it.col());
            }
            EXPECT_LE(nz, 2);
        }
}

TEST(Class1, RestrictionBlocks) {
    // I_{21}..I_{n-1,n-2} preserve m_{n-1}; blocks m_4 in {0, 1}
    const auto basis = enumerate_chain(5, 1);
    std::set<int> labels;
    for (const auto& c : basis) labels.insert(c.at(4));
    EXPECT_EQ(labels, (std::set<int>{0, 1}));
    auto gens = build_class1(5, 1, QParam(2));
    for (std::size_t g = 0; g + 1 < gens.size(); ++g)
        for (Eigen::Index c = 0; c < gens[g].matrix.outerSize(); ++c)
            for (SparseMatrix::InnerIterator it(gens[g].matrix, c); it; ++it)
                EXPECT_EQ(basis[static_cast<std::size_t>(it.row())].at(4), basis[static_cast<std::size_t>(c)].at(4));
}

TEST(Class1, ClassicalLimit) {
    for (int n = 3; n <= 5; ++n)
        EXPECT_LT(support::compact_vs_oracle(n, Rational(3), 1 + 1e-8, 1.0), 1e-6);
}
