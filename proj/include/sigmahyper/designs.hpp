#pragma once

// Combinatorial ingredients of the matching constructions: diagonal Latin
// squares and r-good splits of sigma.

#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sigmahyper/core.hpp"

namespace sigmahyper {

/// An order x order array over symbols 0..order-1 in which every row, every
/// column and the main diagonal contain each symbol exactly once.
struct DiagonalLatinSquare {
    int order = 0;
    std::vector<int> cells;  // row-major

    int at(int row, int col) const {
        return cells[static_cast<std::size_t>(row) * static_cast<std::size_t>(order) + static_cast<std::size_t>(col)];
    }
};

inline bool is_diagonal_latin_square(const DiagonalLatinSquare& d) {
    const int n = d.order;
    if (n < 1 || d.cells.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) return false;
    auto all_symbols = [n](auto&& get) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            const int v = get(i);
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) return false;
            seen[static_cast<std::size_t>(v)] = 1;
        }
        return true;
    };
    for (int i = 0; i < n; ++i) {
        if (!all_symbols([&](int j) { return d.at(i, j); })) return false;
        if (!all_symbols([&](int j) { return d.at(j, i); })) return false;
    }
    return all_symbols([&](int i) { return d.at(i, i); });
}

/// Deterministic backtracking: always fill the empty cell with the fewest
/// admissible symbols (ties broken row-major) and try symbols in increasing
/// order. Plain row-major first-fit stalls from order 9 upward.
inline DiagonalLatinSquare generate_dls(int order) {
    if (order <= 0) throw ValidationError("DLS order must be positive, got " + std::to_string(order));
    if (order == 2) throw NoSuchDesign("no diagonal Latin square of order 2 exists");
    if (order > 63) throw ValidationError("DLS order above 63 is not supported");

    const auto n = static_cast<std::size_t>(order);
    DiagonalLatinSquare d{order, std::vector<int>(n * n, -1)};
    std::vector<std::uint64_t> row_used(n, 0);
    std::vector<std::uint64_t> col_used(n, 0);
    std::uint64_t diag_used = 0;
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;

    auto blocked = [&](std::size_t i, std::size_t j) {
        return row_used[i] | col_used[j] | (i == j ? diag_used : 0);
    };

    auto place = [&](auto&& self, std::size_t filled) -> bool {
        if (filled == n * n) return true;
        std::size_t cell = n * n;
        int fewest = 65;
        for (std::size_t c = 0; c < n * n; ++c) {
            if (d.cells[c] >= 0) continue;
            const int options = std::popcount(all & ~blocked(c / n, c % n));
            if (options < fewest) {
                fewest = options;
                cell = c;
                if (options <= 1) break;
            }
        }
        if (fewest == 0) return false;
        const std::size_t i = cell / n;
        const std::size_t j = cell % n;
        const std::uint64_t free = all & ~blocked(i, j);
        for (std::size_t sym = 0; sym < n; ++sym) {
            const std::uint64_t bit = std::uint64_t{1} << sym;
            if (!(free & bit)) continue;
            d.cells[cell] = static_cast<int>(sym);
            row_used[i] |= bit;
            col_used[j] |= bit;
            if (i == j) diag_used |= bit;
            if (self(self, filled + 1)) return true;
            row_used[i] &= ~bit;
            col_used[j] &= ~bit;
            if (i == j) diag_used &= ~bit;
        }
        d.cells[cell] = -1;
        return false;
    };
    if (!place(place, 0)) throw NoSuchDesign("no diagonal Latin square of order " + std::to_string(order));
    return d;
}

/// A split of sigma's part indices into A and B whose sums a and b are both
/// coprime to r; L = lcm(a, b).
struct RGoodSplit {
    std::vector<int> set_a;  // 1-based part indices
    std::vector<int> set_b;
    int a = 0;
    int b = 0;
    std::int64_t lcm = 0;

    bool operator==(const RGoodSplit&) const = default;
};

/// Scans every proper non-empty subset of parts and returns the split with
/// the smallest L (ties: lexicographically smallest A), or nullopt when no
/// subset sum is coprime to r.
inline std::optional<RGoodSplit> find_r_good_split(const Sigma& sigma) {
    const int s = sigma.s();
    if (s < 2) throw RegimeError("an r-good split needs at least two parts, sigma " + sigma.to_string() + " has one");
    if (s > 30) throw ValidationError("r-good split search supports at most 30 parts");
    const int r = sigma.r();

    std::optional<RGoodSplit> best;
    const std::uint32_t full = (std::uint32_t{1} << s) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        RGoodSplit split;
        for (int i = 0; i < s; ++i) {
            if (mask & (std::uint32_t{1} << i)) {
                split.set_a.push_back(i + 1);
                split.a += sigma.part(static_cast<std::size_t>(i));
            } else {
                split.set_b.push_back(i + 1);
                split.b += sigma.part(static_cast<std::size_t>(i));
            }
        }
        if (std::gcd(split.a, r) != 1) continue;
        split.lcm = std::lcm(static_cast<std::int64_t>(split.a), static_cast<std::int64_t>(split.b));
        if (!best || split.lcm < best->lcm || (split.lcm == best->lcm && split.set_a < best->set_a)) {
            best = std::move(split);
        }
    }
    return best;
}

inline bool is_r_good(const Sigma& sigma) { return sigma.s() >= 2 && find_r_good_split(sigma).has_value(); }

}  // namespace sigmahyper
