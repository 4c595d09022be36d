#pragma once

// k-independence numbers of sigma-hypergraphs and the colouring bounds they
// imply.
//
// A k-independent set meets every edge in at most k vertices. Because edges
// are symmetric under permuting classes and rows, the best edge against a set
// B depends only on B's class profile, and so does alpha_k. The exact value is
// a maximum over the dominance-maximal "feasible" profiles of length s.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sigmahyper/core.hpp"

namespace sigmahyper {

/// A monotone class profile b_1 >= ... >= b_s >= 0 (entries past s repeat b_s)
/// with sum_i min(a_i, b_i) = k. `t` is the first 1-based index with b_t < a_t.
struct FeasibleSequence {
    std::vector<int> b;
    int k = 0;
    int t = 1;

    /// Full-length form (b_1, ..., b_n) with the constant tail.
    std::vector<int> expanded(int n) const {
        std::vector<int> out(b.begin(), b.end());
        out.resize(static_cast<std::size_t>(std::max(n, static_cast<int>(b.size()))), b.empty() ? 0 : b.back());
        return out;
    }

    /// Size of the k-independent set with this profile on n classes of q rows:
    /// q(t-1) + sum_{i=t..s} b_i + (n-s) b_s.
    std::int64_t set_size(int q, int n) const {
        const int s = static_cast<int>(b.size());
        std::int64_t total = static_cast<std::int64_t>(q) * (t - 1);
        for (int i = t; i <= s; ++i) total += b[static_cast<std::size_t>(i - 1)];
        total += static_cast<std::int64_t>(n - s) * b.back();
        return total;
    }

    bool operator==(const FeasibleSequence&) const = default;
};

/// `lhs` dominates `rhs`: componentwise >= and not equal. On truncated
/// sequences this coincides with dominance of the tail-expanded forms.
inline bool dominates(const FeasibleSequence& lhs, const FeasibleSequence& rhs) {
    if (lhs.b.size() != rhs.b.size()) return false;
    bool strict = false;
    for (std::size_t i = 0; i < lhs.b.size(); ++i) {
        if (lhs.b[i] < rhs.b[i]) return false;
        if (lhs.b[i] > rhs.b[i]) strict = true;
    }
    return strict;
}

namespace detail {

inline void check_k(const Sigma& sigma, int k) {
    if (k < 1 || k > sigma.r() - 1) {
        throw ValidationError("k must lie in [1, r-1] = [1, " + std::to_string(sigma.r() - 1) + "], got " +
                              std::to_string(k));
    }
}

inline void check_vertices(const HypergraphSpec& spec, const VertexSet& set) {
    for (const auto& v : set.members()) {
        if (!in_range(spec, v)) throw ValidationError("vertex " + describe(v) + " outside the grid");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Maximum-intersection edge
// ---------------------------------------------------------------------------

struct MaxIntersection {
    Edge edge;
    int overlap = 0;
};

/// The edge E* meeting `b_set` in the most vertices: the i-th largest part
/// goes to the class holding the i-th most members of `b_set`, taking members
/// first and padding with non-members.
inline MaxIntersection max_intersection_edge(const HypergraphSpec& spec, const VertexSet& b_set) {
    if (!spec.has_edges()) throw NoEdges("H" + spec.sigma.to_string() + " has no edges");
    detail::check_vertices(spec, b_set);

    const auto profile = b_set.profile(spec.n);
    std::vector<int> order(static_cast<std::size_t>(spec.n));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return profile[static_cast<std::size_t>(x - 1)] > profile[static_cast<std::size_t>(y - 1)];
    });

    MaxIntersection result;
    std::vector<EdgePart> parts;
    for (int i = 0; i < spec.s(); ++i) {
        const int cls = order[static_cast<std::size_t>(i)];
        const int size = spec.sigma.part(static_cast<std::size_t>(i));
        std::vector<int> inside;
        std::vector<int> outside;
        for (int row = 1; row <= spec.q; ++row) {
            (b_set.contains({cls, row}) ? inside : outside).push_back(row);
        }
        const int take = std::min(size, static_cast<int>(inside.size()));
        result.overlap += take;
        std::vector<int> rows(inside.begin(), inside.begin() + take);
        rows.insert(rows.end(), outside.begin(), outside.begin() + (size - take));
        parts.push_back({cls, std::move(rows)});
    }
    result.edge = Edge(std::move(parts));
    return result;
}

inline bool is_k_independent(const HypergraphSpec& spec, const VertexSet& b_set, int k) {
    detail::check_k(spec.sigma, k);
    detail::check_vertices(spec, b_set);
    if (!spec.has_edges()) return true;
    return max_intersection_edge(spec, b_set).overlap <= k;
}

// ---------------------------------------------------------------------------
// Maximal feasible sequences
// ---------------------------------------------------------------------------

/// All dominance-maximal (q, k, sigma)-feasible sequences, truncated to s
/// entries, sorted lexicographically descending.
///
/// Any maximal sequence has b_j = q before its index t (raising such an entry
/// keeps the sum of minima), and b_t <= a_t - 1. Candidates are generated in
/// that shape for every t and then reduced by pairwise dominance; every
/// non-maximal candidate is dominated by a maximal one, so the reduction is
/// exact.
inline std::vector<FeasibleSequence> enumerate_maximal_feasible(int q, int k, const Sigma& sigma) {
    detail::check_k(sigma, k);
    if (q < sigma.largest()) {
        throw ValidationError("q must be >= a_1 = " + std::to_string(sigma.largest()) + ", got " + std::to_string(q));
    }
    const int s = sigma.s();
    const auto& a = sigma.parts();

    std::vector<FeasibleSequence> candidates;
    std::vector<int> b(static_cast<std::size_t>(s));
    int prefix_sum = 0;  // sum of a_j over j < t
    for (int t = 1; t <= s; ++t) {
        if (t > 1) prefix_sum += a[static_cast<std::size_t>(t - 2)];
        if (prefix_sum > k) break;
        std::fill(b.begin(), b.begin() + (t - 1), q);

        // Depth-first over weakly decreasing suffixes b_t..b_s.
        auto extend = [&](auto&& self, int i, int cap, int running) -> void {
            if (running > k) return;
            if (i == s) {
                if (running == k) candidates.push_back({b, k, t});
                return;
            }
            for (int v = cap; v >= 0; --v) {
                b[static_cast<std::size_t>(i)] = v;
                self(self, i + 1, v, running + std::min(a[static_cast<std::size_t>(i)], v));
            }
        };
        const int first_cap = std::min(q, a[static_cast<std::size_t>(t - 1)] - 1);
        extend(extend, t - 1, first_cap, prefix_sum);
    }

    std::vector<FeasibleSequence> maximal;
    for (const auto& cand : candidates) {
        const bool dominated = std::any_of(candidates.begin(), candidates.end(),
                                           [&](const FeasibleSequence& other) { return dominates(other, cand); });
        if (!dominated) maximal.push_back(cand);
    }
    std::sort(maximal.begin(), maximal.end(),
              [](const FeasibleSequence& x, const FeasibleSequence& y) { return x.b > y.b; });
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    return maximal;
}

// ---------------------------------------------------------------------------
// alpha_k and alpha
// ---------------------------------------------------------------------------

struct IndependenceWitness {
    std::int64_t value = 0;
    /// Maximizing sequence; empty when the hypergraph has no edges.
    std::optional<FeasibleSequence> sequence;
    /// Full-length class profile of the witness set.
    std::vector<int> profile;
    VertexSet members;
};

/// alpha_k together with a witness: the top b_i rows of class i for the
/// maximizing profile (first maximum in canonical sequence order).
inline IndependenceWitness alpha_k_witness(const HypergraphSpec& spec, int k) {
    detail::check_k(spec.sigma, k);
    IndependenceWitness w;
    if (!spec.has_edges()) {
        w.value = spec.vertex_count();
        w.profile.assign(static_cast<std::size_t>(spec.n), spec.q);
    } else {
        for (const auto& seq : enumerate_maximal_feasible(spec.q, k, spec.sigma)) {
            const auto size = seq.set_size(spec.q, spec.n);
            if (!w.sequence || size > w.value) {
                w.value = size;
                w.sequence = seq;
            }
        }
        w.profile = w.sequence->expanded(spec.n);
    }
    w.members = VertexSet::from_profile(spec, w.profile);
    return w;
}

inline std::int64_t alpha_k(const HypergraphSpec& spec, int k) { return alpha_k_witness(spec, k).value; }

struct ClosedFormAlpha {
    std::int64_t value = 0;
    int j = 0;  // maximizing index in [1..s]; 0 when there are no edges
};

/// alpha(H) = max_j (j-1) q + (a_j - 1)(n - j + 1).
inline ClosedFormAlpha alpha_closed_form(const HypergraphSpec& spec) {
    if (!spec.has_edges()) return {spec.vertex_count(), 0};
    ClosedFormAlpha best{-1, 0};
    for (int j = 1; j <= spec.s(); ++j) {
        const std::int64_t value = static_cast<std::int64_t>(j - 1) * spec.q +
                                   static_cast<std::int64_t>(spec.sigma.part(static_cast<std::size_t>(j - 1)) - 1) *
                                       (spec.n - j + 1);
        if (value > best.value) best = {value, j};
    }
    return best;
}

inline std::int64_t alpha(const HypergraphSpec& spec) { return alpha_closed_form(spec).value; }

// ---------------------------------------------------------------------------
// Constrained-colouring bounds
// ---------------------------------------------------------------------------

/// Bounds for colourings in which every edge sees between alpha and beta
/// colours: chi_lower <= chi <= chi_bar <= alpha_beta_ind, and no colouring at
/// all when |V| (alpha - 1) > alpha(H) * alpha_beta(H).
struct ColouringBounds {
    std::int64_t alpha_beta_ind = 0;
    std::int64_t alpha_ind = 0;
    std::int64_t chi_lower = 1;
    bool feasible = true;
};

inline ColouringBounds colouring_bounds(const HypergraphSpec& spec, int alpha_param, int beta_param) {
    if (alpha_param < 1 || alpha_param > beta_param || beta_param > spec.r()) {
        throw ValidationError("need 1 <= alpha <= beta <= r = " + std::to_string(spec.r()) + ", got (" +
                              std::to_string(alpha_param) + "," + std::to_string(beta_param) + ")");
    }
    const std::int64_t nq = spec.vertex_count();
    ColouringBounds out;
    out.alpha_beta_ind = beta_param <= spec.r() - 1 ? alpha_k(spec, beta_param) : nq;
    out.alpha_ind = alpha(spec);
    if (!spec.has_edges() || alpha_param == 1) {
        // no edge constraint bites from below
        out.chi_lower = 1;
        out.feasible = true;
        return out;
    }
    const std::int64_t numerator = detail::checked_mul(alpha_param - 1, nq);
    out.chi_lower = out.alpha_ind > 0 ? (numerator + out.alpha_ind - 1) / out.alpha_ind : nq;
    out.feasible = numerator <= detail::checked_mul(out.alpha_ind, out.alpha_beta_ind);
    return out;
}

}  // namespace sigmahyper
