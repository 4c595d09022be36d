#pragma once

// Brute-force reference implementations. Nothing here calls into the
// independence or matching headers; these define ground truth for tests and
// for the `oracle` CLI subcommand, and are not part of the stable surface.

#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sigmahyper/core.hpp"

namespace sigmahyper::oracle {

/// Work limits. Exceeding any of them throws BudgetExceeded; an oracle never
/// returns a truncated answer.
struct OracleBudget {
    std::int64_t max_vertices = 64;
    std::int64_t max_edges = 250'000;
    std::chrono::milliseconds time_limit{60'000};

    OracleBudget scaled(std::int64_t factor) const {
        return {max_vertices * factor, max_edges * factor, time_limit * factor};
    }
};

namespace detail {

class Watchdog {
public:
    explicit Watchdog(const OracleBudget& budget)
        : deadline_(std::chrono::steady_clock::now() + budget.time_limit) {
        if (budget.max_vertices <= 0 || budget.max_edges <= 0 || budget.time_limit.count() <= 0) {
            throw ValidationError("oracle budget limits must be positive");
        }
    }

    void tick() {
        if ((++ticks_ & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline_) {
            throw BudgetExceeded("oracle time limit exceeded");
        }
    }

private:
    std::chrono::steady_clock::time_point deadline_;
    std::uint64_t ticks_ = 0;
};

inline void require_vertices(const HypergraphSpec& spec, const OracleBudget& budget, std::int64_t hard_cap) {
    const auto nq = spec.vertex_count();
    if (nq > budget.max_vertices || nq > hard_cap) {
        throw BudgetExceeded("instance has " + std::to_string(nq) + " vertices; oracle limit is " +
                             std::to_string(std::min(budget.max_vertices, hard_cap)));
    }
}

inline void require_edges(const HypergraphSpec& spec, const OracleBudget& budget) {
    std::int64_t count = 0;
    try {
        count = count_edges(spec);
    } catch (const OverflowError&) {
        throw BudgetExceeded("edge count overflows 64 bits");
    }
    if (count > budget.max_edges) {
        throw BudgetExceeded("instance has " + std::to_string(count) + " edges; oracle limit is " +
                             std::to_string(budget.max_edges));
    }
}

/// Edges as bitmasks over the row-major grid index (needs nq <= 64).
inline std::vector<std::uint64_t> edge_masks(const HypergraphSpec& spec) {
    std::vector<std::uint64_t> masks;
    for (const auto& e : enumerate_edges(spec)) {
        std::uint64_t m = 0;
        for (const auto& v : e.vertices()) m |= std::uint64_t{1} << grid_index(spec, v);
        masks.push_back(m);
    }
    return masks;
}

inline void check_k(const HypergraphSpec& spec, int k) {
    if (k < 1 || k > spec.r() - 1) throw ValidationError("k must lie in [1, r-1]");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// alpha_k
// ---------------------------------------------------------------------------

/// Exact alpha_k by scanning every monotone profile b_1 >= ... >= b_n and
/// every placement of sigma's parts into distinct classes. Profiles suffice
/// because edges are invariant under permuting classes and rows.
inline std::int64_t bf_alpha_k(const HypergraphSpec& spec, int k, const OracleBudget& budget = {}) {
    detail::check_k(spec, k);
    detail::Watchdog watchdog(budget);
    if (!spec.has_edges()) return spec.vertex_count();
    detail::require_vertices(spec, budget, budget.max_vertices);

    const auto& parts = spec.sigma.parts();
    const int n = spec.n;
    std::vector<int> b(static_cast<std::size_t>(n));
    std::vector<char> used(static_cast<std::size_t>(n), 0);

    // Worst placement of parts [p..s) given what is already used.
    auto worst = [&](auto&& self, std::size_t p) -> int {
        if (p == parts.size()) return 0;
        int best = -1;
        for (int c = 0; c < n; ++c) {
            if (used[static_cast<std::size_t>(c)]) continue;
            used[static_cast<std::size_t>(c)] = 1;
            best = std::max(best, std::min(parts[p], b[static_cast<std::size_t>(c)]) + self(self, p + 1));
            used[static_cast<std::size_t>(c)] = 0;
        }
        return best;
    };

    std::int64_t best = 0;
    auto profiles = [&](auto&& self, int i, int cap, std::int64_t sum) -> void {
        watchdog.tick();
        if (i == n) {
            if (sum > best && worst(worst, 0) <= k) best = sum;
            return;
        }
        for (int v = cap; v >= 0; --v) {
            b[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, v, sum + v);
        }
    };
    profiles(profiles, 0, spec.q, 0);
    return best;
}

/// Exact alpha_k over raw vertex subsets, checking every edge of the stream.
/// Exponential in nq; used to audit the profile reduction of bf_alpha_k.
inline std::int64_t bf_alpha_k_subsets(const HypergraphSpec& spec, int k, const OracleBudget& budget = {}) {
    detail::check_k(spec, k);
    detail::Watchdog watchdog(budget);
    detail::require_vertices(spec, budget, 24);
    detail::require_edges(spec, budget);
    const auto masks = detail::edge_masks(spec);
    const auto nq = static_cast<int>(spec.vertex_count());
    int best = 0;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << nq); ++subset) {
        watchdog.tick();
        const int size = std::popcount(subset);
        if (size <= best) continue;
        bool ok = true;
        for (auto e : masks) {
            if (std::popcount(e & subset) > k) {
                ok = false;
                break;
            }
        }
        if (ok) best = size;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Maximum matching
// ---------------------------------------------------------------------------

/// Exact nu(H) by include/exclude search over the edge stream.
///
/// The lowest undecided vertex v is either left unmatched or covered by an
/// edge. Rows inside a class are interchangeable, so it is enough to try edges
/// whose part in each class is the block of lowest undecided rows; the decided
/// rows of every class then always form a prefix, and the search memoizes on
/// the vector of prefix lengths.
inline std::int64_t bf_max_matching(const HypergraphSpec& spec, const OracleBudget& budget = {}) {
    detail::Watchdog watchdog(budget);
    if (!spec.has_edges()) return 0;
    detail::require_vertices(spec, budget, budget.max_vertices);
    detail::require_edges(spec, budget);

    struct Block {
        int cls;  // 0-based
        int first_row;
        int size;
        bool contiguous;
    };
    std::vector<std::vector<Block>> edges;
    for (const auto& e : enumerate_edges(spec)) {
        std::vector<Block> blocks;
        for (const auto& p : e.parts()) {
            const bool contiguous = p.rows.back() - p.rows.front() + 1 == static_cast<int>(p.rows.size());
            blocks.push_back({p.cls - 1, p.rows.front(), static_cast<int>(p.rows.size()), contiguous});
        }
        edges.push_back(std::move(blocks));
    }

    const int n = spec.n;
    const int q = spec.q;
    std::int64_t states = 1;
    for (int c = 0; c < n; ++c) {
        states = sigmahyper::detail::checked_mul(states, q + 1);
        if (states > 50'000'000) throw BudgetExceeded("matching oracle state space too large");
    }
    std::vector<int> memo(static_cast<std::size_t>(states), -1);
    std::vector<int> prefix(static_cast<std::size_t>(n), 0);

    auto encode = [&]() {
        std::int64_t key = 0;
        for (int c = n - 1; c >= 0; --c) key = key * (q + 1) + prefix[static_cast<std::size_t>(c)];
        return static_cast<std::size_t>(key);
    };

    auto solve = [&](auto&& self) -> int {
        watchdog.tick();
        int cls = 0;
        while (cls < n && prefix[static_cast<std::size_t>(cls)] == q) ++cls;
        if (cls == n) return 0;
        const auto key = encode();
        if (memo[key] >= 0) return memo[key];

        // leave v = (cls, prefix+1) unmatched
        ++prefix[static_cast<std::size_t>(cls)];
        int best = self(self);
        --prefix[static_cast<std::size_t>(cls)];

        for (const auto& blocks : edges) {
            bool usable = false;
            bool canonical = true;
            for (const auto& blk : blocks) {
                const int p = prefix[static_cast<std::size_t>(blk.cls)];
                if (!blk.contiguous || blk.first_row != p + 1 || p + blk.size > q) {
                    canonical = false;
                    break;
                }
                if (blk.cls == cls) usable = true;
            }
            if (!canonical || !usable) continue;
            for (const auto& blk : blocks) prefix[static_cast<std::size_t>(blk.cls)] += blk.size;
            best = std::max(best, 1 + self(self));
            for (const auto& blk : blocks) prefix[static_cast<std::size_t>(blk.cls)] -= blk.size;
        }
        memo[key] = best;
        return best;
    };
    return solve(solve);
}

// ---------------------------------------------------------------------------
// Constrained colourings
// ---------------------------------------------------------------------------

struct ColouringSpectrum {
    std::optional<int> chi;      // least number of colours in a valid colouring
    std::optional<int> chi_bar;  // greatest number of colours in a valid colouring
};

/// Scans every colouring up to renaming of colours (restricted growth
/// strings) and records which colour counts give every edge between
/// alpha_param and beta_param distinct colours. Intended for nq <= 9.
inline ColouringSpectrum bf_colouring_spectrum(const HypergraphSpec& spec, int alpha_param, int beta_param,
                                               const OracleBudget& budget = {}) {
    if (alpha_param < 1 || alpha_param > beta_param) throw ValidationError("need 1 <= alpha <= beta");
    detail::Watchdog watchdog(budget);
    detail::require_vertices(spec, budget, 16);
    detail::require_edges(spec, budget);

    const auto nq = static_cast<int>(spec.vertex_count());
    // edges grouped by their highest grid index so each is checked once complete
    std::vector<std::vector<std::vector<int>>> closing(static_cast<std::size_t>(nq));
    for (const auto& e : enumerate_edges(spec)) {
        std::vector<int> idx;
        for (const auto& v : e.vertices()) idx.push_back(static_cast<int>(grid_index(spec, v)));
        const int last = *std::max_element(idx.begin(), idx.end());
        closing[static_cast<std::size_t>(last)].push_back(std::move(idx));
    }

    std::vector<int> colour(static_cast<std::size_t>(nq), 0);
    ColouringSpectrum out;
    auto assign = [&](auto&& self, int i, int used) -> void {
        watchdog.tick();
        if (i == nq) {
            if (!out.chi || used < *out.chi) out.chi = used;
            if (!out.chi_bar || used > *out.chi_bar) out.chi_bar = used;
            return;
        }
        for (int c = 0; c <= used && c < 64; ++c) {
            colour[static_cast<std::size_t>(i)] = c;
            bool ok = true;
            for (const auto& e : closing[static_cast<std::size_t>(i)]) {
                std::uint64_t seen = 0;
                for (int v : e) seen |= std::uint64_t{1} << colour[static_cast<std::size_t>(v)];
                const int distinct = std::popcount(seen);
                if (distinct < alpha_param || distinct > beta_param) {
                    ok = false;
                    break;
                }
            }
            if (ok) self(self, i + 1, c == used ? used + 1 : used);
        }
    };
    assign(assign, 0, 0);
    return out;
}

// ---------------------------------------------------------------------------
// Maximum intersection
// ---------------------------------------------------------------------------

/// max |E & B| over the whole edge stream; 0 when there are no edges.
inline int bf_max_intersection(const HypergraphSpec& spec, const VertexSet& b_set, const OracleBudget& budget = {}) {
    detail::Watchdog watchdog(budget);
    detail::require_edges(spec, budget);
    int best = 0;
    for (const auto& e : enumerate_edges(spec)) {
        watchdog.tick();
        int overlap = 0;
        for (const auto& v : e.vertices()) overlap += b_set.contains(v) ? 1 : 0;
        best = std::max(best, overlap);
    }
    return best;
}

}  // namespace sigmahyper::oracle
