#pragma once

/**
 * @file gtbasis.hpp
 * @brief Gel'fand-Tsetlin patterns for class-1 representations of so'_q(n)
 *        and the truncated double-pattern basis of the degenerate series.
 *
 * A chain pattern of so'_q(n) is (m_n, m_{n-1}, ..., m_3, m_2) with
 *
 *     m_n >= m_{n-1} >= ... >= m_3 >= |m_2|.
 *
 * Labels are stored doubled so that the half-integral so'_q(3) patterns share
 * the representation; every pattern with n > 3 is integral.
 */

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace qdegen {

class ChainPattern {
public:
    ChainPattern() = default;

    /// Pattern from doubled labels (2 m_n, ..., 2 m_2).
    static ChainPattern from_twice(int n, std::vector<int> twice) {
        ChainPattern c;
        c.n_ = n;
        c.twice_ = std::move(twice);
        if (n < 3 || static_cast<int>(c.twice_.size()) != n - 1)
            throw InvalidParameter("chain pattern of so'_q(" + std::to_string(n) +
                                   ") needs " + std::to_string(n - 1) + " entries");
        return c;
    }

    /// Integral pattern (m_n, ..., m_2).
    static ChainPattern integral(int n, const std::vector<int>& entries) {
        std::vector<int> t(entries.size());
        std::transform(entries.begin(), entries.end(), t.begin(), [](int v) { return 2 * v; });
        return from_twice(n, std::move(t));
    }

    int n() const noexcept { return n_; }

    /// Doubled label 2 m_j, j in [2, n].
    int twice(int j) const { return twice_.at(static_cast<std::size_t>(n_ - j)); }
    double value(int j) const { return twice(j) / 2.0; }

    /// Integral label m_j; throws on a half-integral pattern.
    int at(int j) const {
        int t = twice(j);
        if (t % 2 != 0) throw InvalidParameter("half-integral label where an integer is required");
        return t / 2;
    }

    int top() const { return at(n_); }
    bool half_integral() const noexcept { return !twice_.empty() && twice_.front() % 2 != 0; }

    const std::vector<int>& twice_entries() const noexcept { return twice_; }

    /// Integral entries (m_n, ..., m_2).
    std::vector<int> entries() const {
        std::vector<int> out;
        out.reserve(twice_.size());
        for (int j = n_; j >= 2; --j) out.push_back(at(j));
        return out;
    }

    /// Copy with m_j replaced by an integral value.
    ChainPattern with(int j, int value) const {
        ChainPattern c = *this;
        c.twice_.at(static_cast<std::size_t>(n_ - j)) = 2 * value;
        return c;
    }

    /// Shifts m_j by delta (works for half-integral patterns too).
    ChainPattern shifted(int j, int delta) const {
        ChainPattern c = *this;
        c.twice_.at(static_cast<std::size_t>(n_ - j)) += 2 * delta;
        return c;
    }

    bool satisfies_betweenness() const {
        if (n_ < 3 || static_cast<int>(twice_.size()) != n_ - 1) return false;
        const bool half = twice_.front() % 2 != 0;
        if (half && n_ != 3) return false;
        for (int t : twice_)
            if ((t % 2 != 0) != half) return false;
        for (int j = n_; j > 3; --j)
            if (twice(j) < twice(j - 1)) return false;
        return twice(3) >= 0 && twice(3) >= std::abs(twice(2));
    }

    std::string to_string() const {
        std::string s = "(";
        for (int j = n_; j >= 2; --j) {
            int t = twice(j);
            s += (t % 2 == 0) ? std::to_string(t / 2) : std::to_string(t) + "/2";
            if (j > 2) s += ",";
        }
        return s + ")";
    }

    auto operator<=>(const ChainPattern&) const = default;

private:
    int n_ = 0;
    std::vector<int> twice_;
};

/**
 * All chain patterns of the class-1 representation of so'_q(n) with highest
 * label `top`, in lexicographically ascending order of (m_{n-1}, ..., m_2).
 * For n = 3 this is m_2 = -l, ..., l.
 */
inline std::vector<ChainPattern> enumerate_chain(int n, const Rational& top) {
    if (n < 3) throw InvalidParameter("enumerate_chain needs n >= 3");
    if (top < Rational(0)) throw InvalidParameter("highest label must be nonnegative");
    const Rational twice_top_r = top * 2;
    if (!is_integer(twice_top_r))
        throw InvalidParameter("highest label must be integral or half-integral");
    const int twice_top = static_cast<int>(twice_top_r.numerator());
    if (twice_top % 2 != 0 && n != 3)
        throw InvalidParameter("half-integral highest label only exists for so'_q(3); class-1 "
                               "representations of so'_q(n), n > 3, are integral");

    std::vector<ChainPattern> out;
    std::vector<int> twice(static_cast<std::size_t>(n - 1));
    twice[0] = twice_top;
    // position p holds 2 m_{n-p}
    auto recurse = [&](auto&& self, std::size_t pos) -> void {
        if (pos == twice.size()) {
            out.push_back(ChainPattern::from_twice(n, twice));
            return;
        }
        const int above = twice[pos - 1];
        if (pos + 1 == twice.size()) {  // m_2 in [-m_3, m_3]
            for (int t = -above; t <= above; t += 2) {
                twice[pos] = t;
                self(self, pos + 1);
            }
            return;
        }
        for (int t = 0; t <= above; t += 2) {
            twice[pos] = t;
            self(self, pos + 1);
        }
    };
    recurse(recurse, 1);
    return out;
}

inline std::vector<ChainPattern> enumerate_chain(int n, int top) {
    return enumerate_chain(n, Rational(top));
}

/// Closed-form dimension (2m+n-2)(m+n-3)!/(m!(n-2)!) of the class-1
/// representation of so'_q(n) with highest label m.
inline std::int64_t class1_dimension(int n, int m) {
    if (n < 3 || m < 0) throw InvalidParameter("class1_dimension needs n >= 3, m >= 0");
    // binom(m+n-3, m) computed incrementally
    std::int64_t binom = 1;
    for (int k = 1; k <= m; ++k) binom = binom * (n - 3 + k) / k;
    return binom * (2 * m + n - 2) / (n - 2);
}

/// Basis vector |m, k, ...; m', k', ...> of the degenerate series.
struct DoublePattern {
    ChainPattern left;   ///< so'_q(r) chain, top entry m
    ChainPattern right;  ///< so'_q(s) chain, top entry m'

    int m() const { return left.top(); }
    int mp() const { return right.top(); }

    std::vector<int> entries() const {
        auto a = left.entries();
        auto b = right.entries();
        a.insert(a.end(), b.begin(), b.end());
        return a;
    }

    std::string to_string() const {
        return "[" + left.to_string() + ";" + right.to_string() + "]";
    }

    bool operator==(const DoublePattern&) const = default;
};

/// Canonical basis order: (m+m', m) ascending, then left and right chains
/// in descending lexicographic order.
inline bool basis_order_less(const DoublePattern& a, const DoublePattern& b) {
    const int sa = a.m() + a.mp(), sb = b.m() + b.mp();
    if (sa != sb) return sa < sb;
    if (a.m() != b.m()) return a.m() < b.m();
    if (a.left != b.left) return b.left < a.left;
    return b.right < a.right;
}

/// Contiguous range of basis indices carrying V(m,0; m',0).
struct Block {
    int m = 0;
    int mp = 0;
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
};

/**
 * Truncated carrier space: every V(m,0; m',0) with m + m' <= cutoff and
 * m + m' = epsilon (mod 2), each block complete.
 */
class TruncatedSpace {
public:
    TruncatedSpace(int r, int s, int epsilon, int cutoff)
        : r_(r), s_(s), epsilon_(epsilon), cutoff_(cutoff) {
        if (r <= 2 || s <= 2)
            throw UnsupportedRank("degenerate series needs r > 2 and s > 2 (got r=" +
                                  std::to_string(r) + ", s=" + std::to_string(s) + ")");
        if (epsilon != 0 && epsilon != 1) throw InvalidParameter("epsilon must be 0 or 1");
        if (cutoff < 0) throw InvalidParameter("cutoff must be nonnegative");

        for (int level = epsilon; level <= cutoff; level += 2) {
            for (int m = 0; m <= level; ++m) {
                const int mp = level - m;
                auto lefts = enumerate_chain(r, m);
                auto rights = enumerate_chain(s, mp);
                Block b{m, mp, basis_.size(), 0};
                for (auto li = lefts.rbegin(); li != lefts.rend(); ++li)
                    for (auto ri = rights.rbegin(); ri != rights.rend(); ++ri) {
                        DoublePattern p{*li, *ri};
                        if (!p.left.satisfies_betweenness() || !p.right.satisfies_betweenness())
                            throw InternalConsistency("pattern violates betweenness: " + p.to_string());
                        index_.emplace(key(p), basis_.size());
                        basis_.push_back(std::move(p));
                    }
                b.end = basis_.size();
                block_index_.emplace(std::make_pair(m, mp), blocks_.size());
                blocks_.push_back(b);
            }
        }
        block_of_.resize(basis_.size());
        for (std::size_t b = 0; b < blocks_.size(); ++b)
            for (std::size_t i = blocks_[b].begin; i < blocks_[b].end; ++i) block_of_[i] = b;
    }

    int r() const noexcept { return r_; }
    int s() const noexcept { return s_; }
    int epsilon() const noexcept { return epsilon_; }
    int cutoff() const noexcept { return cutoff_; }

    /// Largest level m + m' present in the space.
    int top_level() const noexcept { return (cutoff_ % 2 == epsilon_) ? cutoff_ : cutoff_ - 1; }

    std::size_t dimension() const noexcept { return basis_.size(); }
    const std::vector<DoublePattern>& basis() const noexcept { return basis_; }
    const DoublePattern& pattern(std::size_t i) const { return basis_.at(i); }

    std::optional<std::size_t> find(const DoublePattern& p) const {
        auto it = index_.find(key(p));
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t index_of(const DoublePattern& p) const {
        if (auto i = find(p)) return *i;
        throw NotFound("pattern " + p.to_string() + " is not in the truncated space");
    }

    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const Block& block(std::size_t b) const { return blocks_.at(b); }
    std::size_t block_of(std::size_t i) const { return block_of_.at(i); }

    std::optional<std::size_t> find_block(int m, int mp) const {
        auto it = block_index_.find({m, mp});
        if (it == block_index_.end()) return std::nullopt;
        return it->second;
    }

    /// Columns whose level lies at least `depth` below the top level.
    bool is_interior(std::size_t i, int depth) const {
        const auto& p = basis_.at(i);
        return p.m() + p.mp() <= top_level() - depth;
    }

    std::vector<bool> interior(int depth) const {
        std::vector<bool> mask(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) mask[i] = is_interior(i, depth);
        return mask;
    }

private:
    static std::vector<int> key(const DoublePattern& p) {
        auto k = p.left.twice_entries();
        k.push_back(INT32_MIN);
        k.insert(k.end(), p.right.twice_entries().begin(), p.right.twice_entries().end());
        return k;
    }

    int r_, s_, epsilon_, cutoff_;
    std::vector<DoublePattern> basis_;
    std::map<std::vector<int>, std::size_t> index_;
    std::vector<Block> blocks_;
    std::map<std::pair<int, int>, std::size_t> block_index_;
    std::vector<std::size_t> block_of_;
};

inline TruncatedSpace build_space(int r, int s, int epsilon, int cutoff) {
    return TruncatedSpace(r, s, epsilon, cutoff);
}

inline std::size_t pattern_index(const TruncatedSpace& space, const DoublePattern& p) {
    return space.index_of(p);
}

}  // namespace qdegen
