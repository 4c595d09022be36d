#pragma once

// Domain types for sigma-hypergraphs H(n, r, q | sigma).
//
// The vertex set is a q x n grid: n classes (columns) V_1..V_n of q rows each.
// Classes and rows are 1-indexed everywhere, including serialized forms.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigmahyper/error.hpp"

namespace sigmahyper {

// ---------------------------------------------------------------------------
// Arithmetic helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw OverflowError("64-bit overflow in " + std::to_string(a) + " * " + std::to_string(b));
    }
    return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw OverflowError("64-bit overflow in " + std::to_string(a) + " + " + std::to_string(b));
    }
    return out;
}

/// C(n, k) with overflow detection; 0 when k is outside [0, n].
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        // result * (n - k + i) is always divisible by i at this point.
        const std::int64_t g = std::gcd(result, i);
        result = checked_mul(result / g, (n - k + i) / (i / g));
    }
    return result;
}

/// Advance `comb` (strictly increasing values in [1..n]) to the next
/// combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<int>& comb, int n) {
    const int k = static_cast<int>(comb.size());
    for (int i = k - 1; i >= 0; --i) {
        if (comb[i] < n - (k - 1 - i)) {
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

inline std::vector<int> first_combination(int k) {
    std::vector<int> comb(static_cast<std::size_t>(k));
    std::iota(comb.begin(), comb.end(), 1);
    return comb;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sigma
// ---------------------------------------------------------------------------

/// A partition of r, stored weakly decreasing: a_1 >= a_2 >= ... >= a_s >= 1.
class Sigma {
public:
    Sigma() = default;

    /// Accepts parts in any order; rejects an empty list or non-positive parts.
    static Sigma from_parts(std::vector<int> parts) {
        if (parts.empty()) throw ValidationError("sigma must have at least one part");
        for (int a : parts) {
            if (a < 1) throw ValidationError("sigma parts must be positive, got " + std::to_string(a));
        }
        std::sort(parts.begin(), parts.end(), std::greater<>());
        Sigma sigma;
        sigma.r_ = 0;
        sigma.gcd_ = 0;
        for (int a : parts) {
            sigma.r_ += a;
            sigma.gcd_ = std::gcd(sigma.gcd_, a);
        }
        sigma.parts_ = std::move(parts);
        return sigma;
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    /// 0-based access: part(0) is the largest part a_1.
    int part(std::size_t i) const { return parts_.at(i); }
    int largest() const { return parts_.front(); }
    int r() const noexcept { return r_; }
    int s() const noexcept { return static_cast<int>(parts_.size()); }
    int gcd() const noexcept { return gcd_; }
    bool is_rectangular() const { return parts_.front() == parts_.back(); }
    bool is_all_ones() const { return parts_.front() == 1; }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(parts_[i]);
        }
        return out + ")";
    }

    bool operator==(const Sigma&) const = default;

private:
    std::vector<int> parts_{1};
    int r_ = 1;
    int gcd_ = 1;
};

// ---------------------------------------------------------------------------
// HypergraphSpec
// ---------------------------------------------------------------------------

struct HypergraphSpec {
    int n = 1;
    int q = 1;
    Sigma sigma;

    int r() const noexcept { return sigma.r(); }
    int s() const noexcept { return sigma.s(); }
    std::int64_t vertex_count() const noexcept {
        return static_cast<std::int64_t>(n) * static_cast<std::int64_t>(q);
    }
    /// False when no r-set can realize sigma (too few classes or a class too short).
    bool has_edges() const noexcept { return n >= sigma.s() && q >= sigma.largest(); }

    bool operator==(const HypergraphSpec&) const = default;
};

inline HypergraphSpec make_spec(int n, int q, std::vector<int> parts) {
    if (n < 1) throw ValidationError("n must be >= 1, got " + std::to_string(n));
    if (q < 1) throw ValidationError("q must be >= 1, got " + std::to_string(q));
    return HypergraphSpec{n, q, Sigma::from_parts(std::move(parts))};
}

// ---------------------------------------------------------------------------
// Vertices, edges, vertex sets, matchings
// ---------------------------------------------------------------------------

struct Vertex {
    int cls = 1;
    int row = 1;
    auto operator<=>(const Vertex&) const = default;
};

inline bool in_range(const HypergraphSpec& spec, Vertex v) noexcept {
    return v.cls >= 1 && v.cls <= spec.n && v.row >= 1 && v.row <= spec.q;
}

/// Row-major grid index of a vertex: rows are outer, classes inner.
inline std::size_t grid_index(const HypergraphSpec& spec, Vertex v) noexcept {
    return static_cast<std::size_t>(v.row - 1) * static_cast<std::size_t>(spec.n) +
           static_cast<std::size_t>(v.cls - 1);
}

struct EdgePart {
    int cls = 1;
    std::vector<int> rows;
    bool operator==(const EdgePart&) const = default;
};

/// A set of r vertices described by its parts. Parts are kept sorted by
/// class index and rows ascending, so two equal edges compare equal however
/// they were assembled.
class Edge {
public:
    Edge() = default;
    explicit Edge(std::vector<EdgePart> parts) : parts_(std::move(parts)) {
        for (auto& p : parts_) std::sort(p.rows.begin(), p.rows.end());
        std::sort(parts_.begin(), parts_.end(),
                  [](const EdgePart& a, const EdgePart& b) { return a.cls < b.cls; });
    }

    const std::vector<EdgePart>& parts() const noexcept { return parts_; }

    std::size_t vertex_count() const noexcept {
        std::size_t total = 0;
        for (const auto& p : parts_) total += p.rows.size();
        return total;
    }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        out.reserve(vertex_count());
        for (const auto& p : parts_) {
            for (int row : p.rows) out.push_back({p.cls, row});
        }
        return out;
    }

    bool contains(Vertex v) const {
        for (const auto& p : parts_) {
            if (p.cls == v.cls) return std::binary_search(p.rows.begin(), p.rows.end(), v.row);
        }
        return false;
    }

    bool operator==(const Edge&) const = default;

private:
    std::vector<EdgePart> parts_;
};

class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    }

    /// The top `profile[i]` rows of class i+1.
    static VertexSet from_profile(const HypergraphSpec& spec, std::span<const int> profile) {
        if (static_cast<int>(profile.size()) != spec.n) {
            throw ValidationError("profile length must equal n");
        }
        std::vector<Vertex> members;
        for (int c = 1; c <= spec.n; ++c) {
            const int count = profile[static_cast<std::size_t>(c - 1)];
            if (count < 0 || count > spec.q) throw ValidationError("profile entry out of [0, q]");
            for (int row = 1; row <= count; ++row) members.push_back({c, row});
        }
        return VertexSet(std::move(members));
    }

    const std::vector<Vertex>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

    /// (b_1, ..., b_n) with b_i = |members in V_i|; members outside [1..n] are ignored.
    std::vector<int> profile(int n) const {
        std::vector<int> b(static_cast<std::size_t>(n), 0);
        for (const auto& v : members_) {
            if (v.cls >= 1 && v.cls <= n) ++b[static_cast<std::size_t>(v.cls - 1)];
        }
        return b;
    }

    bool operator==(const VertexSet&) const = default;

private:
    std::vector<Vertex> members_;
};

struct Matching {
    std::vector<Edge> edges;
    VertexSet unmatched;
    bool operator==(const Matching&) const = default;
};

/// Every vertex of `spec` not covered by `edges`, in (class, row) order.
inline VertexSet uncovered_vertices(const HypergraphSpec& spec, std::span<const Edge> edges) {
    std::vector<char> covered(static_cast<std::size_t>(spec.vertex_count()), 0);
    for (const auto& e : edges) {
        for (const auto& v : e.vertices()) {
            if (in_range(spec, v)) covered[grid_index(spec, v)] = 1;
        }
    }
    std::vector<Vertex> out;
    for (int c = 1; c <= spec.n; ++c) {
        for (int row = 1; row <= spec.q; ++row) {
            if (!covered[grid_index(spec, {c, row})]) out.push_back({c, row});
        }
    }
    return VertexSet(std::move(out));
}

inline Matching make_matching(const HypergraphSpec& spec, std::vector<Edge> edges) {
    Matching m;
    m.unmatched = uncovered_vertices(spec, edges);
    m.edges = std::move(edges);
    return m;
}

// ---------------------------------------------------------------------------
// Edge predicates and enumeration
// ---------------------------------------------------------------------------

/// True iff the candidate's parts lie in distinct classes and their sizes
/// form exactly sigma. Throws ValidationError on an out-of-range vertex.
inline bool is_edge(const HypergraphSpec& spec, const Edge& candidate) {
    std::vector<int> sizes;
    std::vector<int> seen_classes;
    for (const auto& part : candidate.parts()) {
        for (int row : part.rows) {
            if (!in_range(spec, {part.cls, row})) {
                throw ValidationError("vertex (" + std::to_string(part.cls) + "," + std::to_string(row) +
                                      ") outside the " + std::to_string(spec.q) + "x" +
                                      std::to_string(spec.n) + " grid");
            }
        }
        if (part.rows.empty()) return false;
        if (std::adjacent_find(part.rows.begin(), part.rows.end()) != part.rows.end()) return false;
        seen_classes.push_back(part.cls);
        sizes.push_back(static_cast<int>(part.rows.size()));
    }
    std::sort(seen_classes.begin(), seen_classes.end());
    if (std::adjacent_find(seen_classes.begin(), seen_classes.end()) != seen_classes.end()) return false;
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes == spec.sigma.parts();
}

/// Lazily yields every edge exactly once: lexicographic by the chosen class
/// set, then by the assignment of part sizes to those classes, then by the
/// row sets (last class varying fastest).
class EdgeStream {
public:
    explicit EdgeStream(const HypergraphSpec& spec) : spec_(spec) {
        done_ = !spec.has_edges();
        if (done_) return;
        classes_ = detail::first_combination(spec.s());
        sizes_ = spec.sigma.parts();
        std::sort(sizes_.begin(), sizes_.end());
        reset_rows();
    }

    /// Writes the next edge into `out`; false once the stream is drained.
    bool next(Edge& out) {
        if (done_) return false;
        std::vector<EdgePart> parts;
        parts.reserve(classes_.size());
        for (std::size_t i = 0; i < classes_.size(); ++i) parts.push_back({classes_[i], rows_[i]});
        out = Edge(std::move(parts));
        advance();
        return true;
    }

    std::optional<Edge> next() {
        Edge e;
        if (!next(e)) return std::nullopt;
        return e;
    }

    class iterator {
    public:
        using value_type = Edge;
        using difference_type = std::ptrdiff_t;
        iterator() = default;
        explicit iterator(EdgeStream* stream) : stream_(stream) { ++*this; }
        const Edge& operator*() const { return current_; }
        const Edge* operator->() const { return &current_; }
        iterator& operator++() {
            if (stream_ && !stream_->next(current_)) stream_ = nullptr;
            return *this;
        }
        void operator++(int) { ++*this; }
        bool operator==(std::default_sentinel_t) const { return stream_ == nullptr; }

    private:
        EdgeStream* stream_ = nullptr;
        Edge current_;
    };

    iterator begin() { return iterator(this); }
    std::default_sentinel_t end() { return {}; }

private:
    void reset_rows() {
        rows_.clear();
        for (int size : sizes_) rows_.push_back(detail::first_combination(size));
    }

    void advance() {
        for (std::size_t i = rows_.size(); i-- > 0;) {
            if (detail::next_combination(rows_[i], spec_.q)) {
                for (std::size_t j = i + 1; j < rows_.size(); ++j) {
                    rows_[j] = detail::first_combination(sizes_[j]);
                }
                return;
            }
        }
        if (std::next_permutation(sizes_.begin(), sizes_.end())) {
            reset_rows();
            return;
        }
        if (detail::next_combination(classes_, spec_.n)) {
            std::sort(sizes_.begin(), sizes_.end());
            reset_rows();
            return;
        }
        done_ = true;
    }

    HypergraphSpec spec_;
    bool done_ = false;
    std::vector<int> classes_;
    std::vector<int> sizes_;
    std::vector<std::vector<int>> rows_;
};

inline EdgeStream enumerate_edges(const HypergraphSpec& spec) { return EdgeStream(spec); }

/// |E(H)| = C(n, s) * (distinct size-to-class assignments) * prod C(q, a_i).
/// Throws OverflowError if the count does not fit 64 bits.
inline std::int64_t count_edges(const HypergraphSpec& spec) {
    if (!spec.has_edges()) return 0;
    const auto& parts = spec.sigma.parts();
    std::int64_t total = detail::binomial(spec.n, spec.s());
    // multinomial s! / prod(mult_j!) built as a product of binomials
    std::int64_t remaining = spec.s();
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        const auto mult = static_cast<std::int64_t>(j - i);
        total = detail::checked_mul(total, detail::binomial(remaining, mult));
        remaining -= mult;
        i = j;
    }
    for (int a : parts) total = detail::checked_mul(total, detail::binomial(spec.q, a));
    return total;
}

// ---------------------------------------------------------------------------
// Frobenius representation
// ---------------------------------------------------------------------------

struct FrobeniusSplit {
    std::int64_t x = 0;  // coefficient of u
    std::int64_t y = 0;  // coefficient of v
    bool operator==(const FrobeniusSplit&) const = default;
};

/// Nonnegative x, y with x*u + y*v = target, maximizing x. Always succeeds for
/// target >= (u-1)(v-1).
inline FrobeniusSplit frobenius_decompose(std::int64_t target, std::int64_t u, std::int64_t v) {
    if (u < 1 || v < 1) throw ValidationError("frobenius_decompose needs u, v >= 1");
    if (std::gcd(u, v) != 1) {
        throw ValidationError("frobenius_decompose needs coprime u, v; got gcd(" + std::to_string(u) + "," +
                              std::to_string(v) + ") = " + std::to_string(std::gcd(u, v)));
    }
    if (target < 0) throw ValidationError("frobenius_decompose target must be nonnegative");
    // Only x in the top residue window of size v can work: x*u = target (mod v).
    for (std::int64_t x = target / u, tries = 0; x >= 0 && tries < v; --x, ++tries) {
        const std::int64_t rest = target - x * u;
        if (rest % v == 0) return {x, rest / v};
    }
    throw NoRepresentation(std::to_string(target) + " is not a nonnegative combination of " + std::to_string(u) +
                           " and " + std::to_string(v));
}

// ---------------------------------------------------------------------------
// Matching verification
// ---------------------------------------------------------------------------

struct Violation {
    enum class Kind { out_of_range, non_edge, overlap, unmatched_conflict, uncovered };
    Kind kind;
    std::string detail;
};

inline const char* to_string(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::out_of_range: return "out-of-range";
        case Violation::Kind::non_edge: return "non-edge";
        case Violation::Kind::overlap: return "overlap";
        case Violation::Kind::unmatched_conflict: return "unmatched-conflict";
        case Violation::Kind::uncovered: return "uncovered";
    }
    return "unknown";
}

struct VerificationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
    std::size_t count(Violation::Kind kind) const {
        return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                      [kind](const Violation& v) { return v.kind == kind; }));
    }
};

inline std::string describe(Vertex v) {
    return "(" + std::to_string(v.cls) + "," + std::to_string(v.row) + ")";
}

/// Checks that `m` is a matching of `spec` whose unmatched set is exactly the
/// complement of its edges. Problems are collected, never thrown.
inline VerificationReport verify_matching(const HypergraphSpec& spec, const Matching& m) {
    VerificationReport report;
    auto add = [&](Violation::Kind kind, std::string detail) { report.violations.push_back({kind, std::move(detail)}); };

    // owner[v] = 1-based index of the first edge covering v, 0 if none
    std::vector<std::size_t> owner(static_cast<std::size_t>(spec.vertex_count()), 0);
    for (std::size_t i = 0; i < m.edges.size(); ++i) {
        const auto& edge = m.edges[i];
        bool in_grid = true;
        for (const auto& v : edge.vertices()) {
            if (!in_range(spec, v)) {
                add(Violation::Kind::out_of_range, "edge " + std::to_string(i) + " has vertex " + describe(v));
                in_grid = false;
            }
        }
        if (!in_grid) continue;
        if (!is_edge(spec, edge)) {
            add(Violation::Kind::non_edge, "edge " + std::to_string(i) + " does not realize sigma " +
                                               spec.sigma.to_string());
        }
        for (const auto& v : edge.vertices()) {
            auto& slot = owner[grid_index(spec, v)];
            if (slot != 0) {
                add(Violation::Kind::overlap, "vertex " + describe(v) + " in edges " + std::to_string(slot - 1) +
                                                  " and " + std::to_string(i));
            } else {
                slot = i + 1;
            }
        }
    }

    std::vector<char> listed(owner.size(), 0);
    for (const auto& v : m.unmatched.members()) {
        if (!in_range(spec, v)) {
            add(Violation::Kind::out_of_range, "unmatched vertex " + describe(v));
            continue;
        }
        const auto idx = grid_index(spec, v);
        listed[idx] = 1;
        if (owner[idx] != 0) {
            add(Violation::Kind::unmatched_conflict,
                "vertex " + describe(v) + " listed unmatched but covered by edge " + std::to_string(owner[idx] - 1));
        }
    }
    for (int row = 1; row <= spec.q; ++row) {
        for (int c = 1; c <= spec.n; ++c) {
            const auto idx = grid_index(spec, {c, row});
            if (owner[idx] == 0 && !listed[idx]) {
                add(Violation::Kind::uncovered, "vertex " + describe({c, row}) + " neither matched nor unmatched");
            }
        }
    }
    return report;
}

}  // namespace sigmahyper
