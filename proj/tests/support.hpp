#pragma once

// Glue between library matrices and the oracle's keyed entries.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "oracle.hpp"
#include "qdegen/qdegen.hpp"

namespace support {

using KeyOf = std::function<std::vector<int>(std::size_t)>;

/// Max |library - oracle| over the union of nonzero positions.
inline double max_entry_diff(const qdegen::SparseMatrix& M, const KeyOf& key, const oracle::Entries& E) {
    oracle::Entries lib;
    for (Eigen::Index c = 0; c < M.outerSize(); ++c)
        for (qdegen::SparseMatrix::InnerIterator it(M, c); it; ++it)
            lib[{key(static_cast<std::size_t>(it.row())), key(static_cast<std::size_t>(it.col()))}] += it.value();
    double worst = 0.0;
    for (const auto& [k, v] : lib) {
        auto it = E.find(k);
        worst = std::max(worst, std::abs(v - (it == E.end() ? oracle::C{} : it->second)));
    }
    for (const auto& [k, v] : E)
        if (!lib.count(k)) worst = std::max(worst, std::abs(v));
    return worst;
}

inline KeyOf chain_key(const std::vector<qdegen::ChainPattern>& basis) {
    return [&basis](std::size_t i) { return basis[i].twice_entries(); };
}

inline KeyOf space_key(const qdegen::TruncatedSpace& space) {
    return [&space](std::size_t i) {
        const auto& p = space.pattern(i);
        return oracle::join(p.left.twice_entries(), p.right.twice_entries());
    };
}

/// Worst generator difference between a compact build and the oracle.
inline double compact_vs_oracle(int n, const qdegen::Rational& top, double q_lib, double q_oracle) {
    const auto basis = qdegen::enumerate_chain(n, top);
    std::vector<qdegen::GeneratorMatrix> gens;
    if (n == 3) {
        auto g = qdegen::build_so3(top, qdegen::QParam(q_lib));
        gens = {g[0], g[1]};
    } else {
        gens = qdegen::build_class1(n, static_cast<int>(top.numerator()), qdegen::QParam(q_lib));
    }
    const int top2 = static_cast<int>((top * 2).numerator());
    const auto ref = oracle::compact(q_oracle, n, top2);
    double worst = 0.0;
    for (std::size_t g = 0; g < gens.size(); ++g)
        worst = std::max(worst, max_entry_diff(gens[g].matrix, chain_key(basis), ref[g]));
    return worst;
}

inline double degenerate_vs_oracle(const qdegen::DegenerateRep& rep, double q_oracle, oracle::C lambda) {
    const auto& sp = rep.spec;
    const auto ref = oracle::degenerate(q_oracle, sp.r, sp.s, sp.epsilon, lambda, sp.cutoff);
    double worst = 0.0;
    for (std::size_t g = 0; g < rep.generators.size(); ++g)
        worst = std::max(worst, max_entry_diff(rep.generators[g].matrix, space_key(*rep.space), ref[g]));
    return worst;
}

}  // namespace support
