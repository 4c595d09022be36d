#pragma once

// Explicit matchings of sigma-hypergraphs.
//
// Every construction works on the q x n vertex grid with parts laid out as
// blocks of consecutive rows inside one class. Layout is fixed so outputs are
// reproducible: full r-row bands from the top, residual band at the bottom,
// blocks left to right inside a band.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigmahyper/core.hpp"
#include "sigmahyper/designs.hpp"

namespace sigmahyper {

struct MatchOptions {
    /// Attempt constructions below their proven thresholds; the report is
    /// then marked unproven.
    bool permissive = false;
};

struct Certificate {
    std::string name;
    std::int64_t value = 0;
    bool operator==(const Certificate&) const = default;
};

struct MatchingReport {
    Matching matching;
    std::int64_t nu = 0;
    std::int64_t unmatched_count = 0;
    std::string strategy;
    std::vector<Certificate> certificates;
    bool proven = true;

    std::optional<std::int64_t> certificate(const std::string& name) const {
        for (const auto& c : certificates) {
            if (c.name == name) return c.value;
        }
        return std::nullopt;
    }
};

/// Edges of a sub-construction, plus (for DLS matchings) the part of each
/// edge lying on the main diagonal of the Latin square.
struct MatchingFragment {
    std::vector<Edge> edges;
    std::vector<EdgePart> diagonal_parts;
};

namespace detail {

/// rows [row, row + size) of class `cls`
struct Block {
    int cls = 1;
    int row = 1;
    int size = 0;
    bool operator==(const Block&) const = default;
};

using BlockEdge = std::vector<Block>;

inline EdgePart to_part(const Block& b) {
    EdgePart part{b.cls, {}};
    for (int i = 0; i < b.size; ++i) part.rows.push_back(b.row + i);
    return part;
}

inline Edge to_edge(const BlockEdge& blocks) {
    std::vector<EdgePart> parts;
    parts.reserve(blocks.size());
    for (const auto& b : blocks) parts.push_back(to_part(b));
    return Edge(std::move(parts));
}

inline std::vector<Edge> to_edges(const std::vector<BlockEdge>& edges) {
    std::vector<Edge> out;
    out.reserve(edges.size());
    for (const auto& e : edges) out.push_back(to_edge(e));
    return out;
}

inline std::vector<int> class_range(int first, int count) {
    std::vector<int> out(static_cast<std::size_t>(count));
    std::iota(out.begin(), out.end(), first);
    return out;
}

/// Cyclic diagonal packing of a (sum parts) x |classes| band: edge j takes
/// part i from classes[(j + i) mod m], using the i-th consecutive row block.
/// Needs m >= |parts|; yields m edges covering the band exactly.
inline std::vector<BlockEdge> diagonal_band(std::span<const int> parts, int row_offset, std::span<const int> classes) {
    const auto m = classes.size();
    std::vector<int> starts;
    int acc = row_offset + 1;
    for (int a : parts) {
        starts.push_back(acc);
        acc += a;
    }
    std::vector<BlockEdge> out;
    out.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        BlockEdge e;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            e.push_back({classes[(j + i) % m], starts[i], parts[i]});
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<Certificate> base_certificates(const HypergraphSpec& spec) {
    std::vector<Certificate> certs;
    certs.push_back({"upper_bound_nq_over_r", spec.vertex_count() / spec.r()});
    const int d = spec.sigma.gcd();
    if (d >= 2) {
        const int t = spec.q % d;
        certs.push_back({"gcd", d});
        certs.push_back({"gcd_unmatched_lower_bound", static_cast<std::int64_t>(t) * spec.n});
        certs.push_back({"gcd_upper_bound", static_cast<std::int64_t>(spec.n) * (spec.q - t) / spec.r()});
    }
    return certs;
}

inline MatchingReport finish(const HypergraphSpec& spec, std::vector<Edge> edges, std::string strategy,
                             std::vector<Certificate> extra, bool proven) {
    MatchingReport report;
    report.matching = make_matching(spec, std::move(edges));
    report.nu = static_cast<std::int64_t>(report.matching.edges.size());
    report.unmatched_count = static_cast<std::int64_t>(report.matching.unmatched.size());
    report.strategy = std::move(strategy);
    report.certificates = base_certificates(spec);
    report.certificates.insert(report.certificates.end(), extra.begin(), extra.end());
    report.proven = proven;
    return report;
}

inline void require_subgrid(const HypergraphSpec& spec, int row_offset, int rows, int class_offset, int classes) {
    if (row_offset < 0 || class_offset < 0 || row_offset + rows > spec.q || class_offset + classes > spec.n) {
        throw ValidationError(std::to_string(rows) + "x" + std::to_string(classes) + " subgrid at offset (" +
                              std::to_string(row_offset) + "," + std::to_string(class_offset) +
                              ") does not fit the " + std::to_string(spec.q) + "x" + std::to_string(spec.n) + " grid");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Canonical form
// ---------------------------------------------------------------------------

/// Permutes rows inside each class so that unmatched vertices sit at the top
/// and every part occupies consecutive rows. Edge count and order are kept.
inline Matching canonicalize(const HypergraphSpec& spec, const Matching& m) {
    const auto report = verify_matching(spec, m);
    if (!report.ok()) throw ValidationError("canonicalize needs a valid matching: " + report.violations.front().detail);

    // new_row[c][old_row]
    std::vector<std::vector<int>> new_row(static_cast<std::size_t>(spec.n + 1),
                                          std::vector<int>(static_cast<std::size_t>(spec.q + 1), 0));
    std::vector<int> next(static_cast<std::size_t>(spec.n + 1), 1);
    for (const auto& v : m.unmatched.members()) new_row[v.cls][v.row] = next[v.cls]++;
    for (const auto& e : m.edges) {
        for (const auto& p : e.parts()) {
            for (int row : p.rows) new_row[p.cls][row] = next[p.cls]++;
        }
    }

    Matching out;
    for (const auto& e : m.edges) {
        std::vector<EdgePart> parts;
        for (const auto& p : e.parts()) {
            EdgePart np{p.cls, {}};
            for (int row : p.rows) np.rows.push_back(new_row[p.cls][row]);
            parts.push_back(std::move(np));
        }
        out.edges.emplace_back(std::move(parts));
    }
    std::vector<Vertex> unmatched;
    for (const auto& v : m.unmatched.members()) unmatched.push_back({v.cls, new_row[v.cls][v.row]});
    out.unmatched = VertexSet(std::move(unmatched));
    return out;
}

// ---------------------------------------------------------------------------
// Divisibility constructions
// ---------------------------------------------------------------------------

/// Perfect matching when r | q and n >= s: every r x n strip is packed by
/// cyclically shifting sigma's parts one class to the right per edge.
inline Matching diagonal_perfect_matching(const HypergraphSpec& spec) {
    const int r = spec.r();
    if (spec.q % r != 0) {
        throw RegimeError("diagonal matching needs r | q; r = " + std::to_string(r) + " does not divide q = " +
                          std::to_string(spec.q));
    }
    if (spec.n < spec.s()) {
        throw RegimeError("diagonal matching needs n >= s = " + std::to_string(spec.s()) + ", got n = " +
                          std::to_string(spec.n));
    }
    const auto classes = detail::class_range(1, spec.n);
    std::vector<detail::BlockEdge> edges;
    for (int strip = 0; strip < spec.q / r; ++strip) {
        auto band = detail::diagonal_band(spec.sigma.parts(), strip * r, classes);
        edges.insert(edges.end(), band.begin(), band.end());
    }
    return make_matching(spec, detail::to_edges(edges));
}

/// Every matching leaves at least t = q mod gcd(sigma) vertices of each class
/// unmatched, so at least t*n overall.
inline std::int64_t gcd_unmatched_lower_bound(const HypergraphSpec& spec) {
    const int d = spec.sigma.gcd();
    return static_cast<std::int64_t>(spec.q % d) * spec.n;
}

/// nu(H) <= n (q - q mod d) / r.
inline std::int64_t gcd_matching_upper_bound(const HypergraphSpec& spec) {
    const int d = spec.sigma.gcd();
    return static_cast<std::int64_t>(spec.n) * (spec.q - spec.q % d) / spec.r();
}

struct Contraction {
    HypergraphSpec contracted;
    int dropped_rows = 0;
    int factor = 1;
};

/// With d = gcd(sigma) and q = m d + t: H(n, r/d, m | sigma/d), after dropping
/// the top t rows.
inline Contraction contract(const HypergraphSpec& spec) {
    const int d = spec.sigma.gcd();
    if (d < 2) throw RegimeError("contraction needs gcd(sigma) >= 2, sigma " + spec.sigma.to_string() + " has gcd 1");
    const int m = spec.q / d;
    if (m < 1) throw RegimeError("contraction needs q >= gcd(sigma) = " + std::to_string(d));
    std::vector<int> parts;
    for (int a : spec.sigma.parts()) parts.push_back(a / d);
    return {make_spec(spec.n, m, std::move(parts)), spec.q % d, d};
}

/// Replaces each vertex (i, j) of a matching of contract(spec) by rows
/// t + (j-1)d + 1 .. t + jd of class i.
inline Matching expand(const HypergraphSpec& spec, const Matching& contracted_matching) {
    const auto c = contract(spec);
    const auto report = verify_matching(c.contracted, contracted_matching);
    if (!report.ok()) throw ValidationError("expand needs a valid contracted matching: " + report.violations.front().detail);
    std::vector<Edge> edges;
    for (const auto& e : contracted_matching.edges) {
        std::vector<EdgePart> parts;
        for (const auto& p : e.parts()) {
            EdgePart np{p.cls, {}};
            for (int j : p.rows) {
                for (int k = 1; k <= c.factor; ++k) np.rows.push_back(c.dropped_rows + (j - 1) * c.factor + k);
            }
            parts.push_back(std::move(np));
        }
        edges.emplace_back(std::move(parts));
    }
    return make_matching(spec, std::move(edges));
}

// ---------------------------------------------------------------------------
// Rectangular partitions
// ---------------------------------------------------------------------------

/// Maximum matching for sigma = (1, ..., 1), n >= (r+1)^2, q >= r, leaving
/// exactly nq mod r vertices unmatched.
///
/// Each r-row band is split into x blocks of width r (edges are rows) and y
/// blocks of width r+1 (row i minus its i-th vertex, plus the diagonal of
/// left-out vertices), with n = x r + y (r+1). The bottom t = q mod r rows
/// are matched row-wise over the first d r classes, and the t x g corner is
/// absorbed r vertices at a time: each corner vertex displaces the first
/// vertex of an untouched edge in one of the first r blocks of the top band,
/// and the r displaced vertices (distinct blocks, hence distinct classes)
/// form a new edge.
inline MatchingReport all_ones_maximum_matching(const HypergraphSpec& spec, const MatchOptions& options = {}) {
    const int r = spec.r();
    const int n = spec.n;
    const int q = spec.q;
    if (!spec.sigma.is_all_ones()) {
        throw RegimeError("all-ones construction needs sigma = (1,...,1), got " + spec.sigma.to_string());
    }
    bool proven = true;
    if (q < r) {
        if (!options.permissive) throw RegimeError("all-ones construction needs q >= r = " + std::to_string(r));
        proven = false;
    }
    if (static_cast<std::int64_t>(n) < static_cast<std::int64_t>(r + 1) * (r + 1)) {
        if (!options.permissive) {
            throw RegimeError("all-ones construction needs n >= (r+1)^2 = " + std::to_string((r + 1) * (r + 1)));
        }
        proven = false;
    }

    FrobeniusSplit widths;
    try {
        widths = frobenius_decompose(n, r, r + 1);
    } catch (const NoRepresentation&) {
        throw RegimeError("n = " + std::to_string(n) + " is not a sum of blocks of width r and r+1");
    }

    const int bands = q / r;
    const int t = q % r;
    const int d = n / r;
    const int g = n % r;

    using detail::Block;
    using detail::BlockEdge;
    std::vector<BlockEdge> edges;
    // edge ids of each block in the top band, block order left to right
    std::vector<std::vector<std::size_t>> top_blocks;

    for (int band = 0; band < bands; ++band) {
        const int row0 = band * r + 1;
        int col = 1;
        for (std::int64_t blk = 0; blk < widths.x + widths.y; ++blk) {
            const bool wide = blk >= widths.x;
            std::vector<std::size_t> ids;
            for (int i = 0; i < r; ++i) {
                BlockEdge e;
                for (int j = 0; j < (wide ? r + 1 : r); ++j) {
                    if (wide && j == i) continue;
                    e.push_back({col + j, row0 + i, 1});
                }
                ids.push_back(edges.size());
                edges.push_back(std::move(e));
            }
            if (wide) {
                BlockEdge diag;
                for (int i = 0; i < r; ++i) diag.push_back({col + i, row0 + i, 1});
                ids.push_back(edges.size());
                edges.push_back(std::move(diag));
            }
            if (band == 0) top_blocks.push_back(std::move(ids));
            col += wide ? r + 1 : r;
        }
    }

    const int bottom = bands * r + 1;
    for (int blk = 0; blk < d; ++blk) {
        for (int i = 0; i < t; ++i) {
            BlockEdge e;
            for (int j = 1; j <= r; ++j) e.push_back({blk * r + j, bottom + i, 1});
            edges.push_back(std::move(e));
        }
    }

    std::vector<Block> corner;
    for (int i = 0; i < t; ++i) {
        for (int c = d * r + 1; c <= n; ++c) corner.push_back({c, bottom + i, 1});
    }
    const std::size_t groups = corner.size() / static_cast<std::size_t>(r);
    std::int64_t exchanges = 0;
    const bool donors_ok = bands >= 1 && top_blocks.size() >= static_cast<std::size_t>(r) &&
                           static_cast<std::int64_t>(r) * (r + 1) < n - g + 1;
    if (groups > 0 && !donors_ok && !options.permissive) {
        throw RegimeError("not enough donor blocks to absorb the corner");
    }
    for (std::size_t grp = 0; donors_ok && grp < groups; ++grp) {
        if (grp >= top_blocks[0].size()) break;
        BlockEdge freed;
        for (int j = 0; j < r; ++j) {
            auto& donor = edges[top_blocks[static_cast<std::size_t>(j)][grp]];
            freed.push_back(donor.front());
            donor.front() = corner[grp * static_cast<std::size_t>(r) + static_cast<std::size_t>(j)];
        }
        edges.push_back(std::move(freed));
        ++exchanges;
    }

    std::vector<Certificate> certs{
        {"blocks_width_r", widths.x}, {"blocks_width_r_plus_1", widths.y}, {"full_bands", bands},
        {"bottom_rows_t", t},         {"corner_columns_g", g},             {"corner_exchanges", exchanges},
        {"expected_unmatched", spec.vertex_count() % r},
    };
    return detail::finish(spec, detail::to_edges(edges), proven ? "all-ones" : "all-ones (unproven regime)",
                          std::move(certs), proven);
}

/// sigma = (D, ..., D): contract by D, match the all-ones hypergraph
/// H(n, s, m | 1^s), expand. nu = floor(n (q - q mod D) / r).
inline MatchingReport rectangular_maximum_matching(const HypergraphSpec& spec, const MatchOptions& options = {}) {
    if (!spec.sigma.is_rectangular()) {
        throw RegimeError("rectangular construction needs equal parts, got " + spec.sigma.to_string());
    }
    const int delta = spec.sigma.largest();
    if (delta == 1) {
        auto report = all_ones_maximum_matching(spec, options);
        report.strategy = report.proven ? "rectangular" : "rectangular (unproven regime)";
        return report;
    }
    const int r = spec.r();
    bool proven = true;
    if (static_cast<std::int64_t>(spec.n) < static_cast<std::int64_t>(r + 1) * (r + 1)) {
        if (!options.permissive) {
            throw RegimeError("rectangular construction needs n >= (r+1)^2 = " + std::to_string((r + 1) * (r + 1)));
        }
        proven = false;
    }
    if (spec.q < r * delta) {
        if (!options.permissive) {
            throw RegimeError("rectangular construction needs q >= r*Delta = " + std::to_string(r * delta));
        }
        proven = false;
    }
    const auto c = contract(spec);
    auto inner = all_ones_maximum_matching(c.contracted, options);
    proven = proven && inner.proven;
    auto expanded = expand(spec, inner.matching);
    std::vector<Certificate> certs{
        {"delta", delta},
        {"contracted_rows_m", c.contracted.q},
        {"dropped_rows_t", c.dropped_rows},
        {"formula_nu", static_cast<std::int64_t>(spec.n) * (spec.q - spec.q % delta) / r},
    };
    return detail::finish(spec, std::move(expanded.edges), proven ? "rectangular" : "rectangular (unproven regime)",
                          std::move(certs), proven);
}

// ---------------------------------------------------------------------------
// DLS matchings and packings
// ---------------------------------------------------------------------------

namespace detail {

struct DlsBlock {
    std::vector<BlockEdge> edges;
    std::vector<Block> diagonal;  // diagonal[i] is a part of edges[i]
};

/// r x s block at the offsets: column i is cut into parts in the order the
/// symbols appear down column i of the square; edge i collects, from every
/// column, the part whose symbol sits in row i of the square.
inline DlsBlock dls_block(const Sigma& sigma, const DiagonalLatinSquare& dls, int row_offset, int class_offset) {
    const int s = sigma.s();
    DlsBlock out;
    out.edges.assign(static_cast<std::size_t>(s), {});
    out.diagonal.resize(static_cast<std::size_t>(s));
    for (int col = 0; col < s; ++col) {
        int row = row_offset + 1;
        for (int i = 0; i < s; ++i) {
            const int symbol = dls.at(i, col);
            const Block blk{class_offset + col + 1, row, sigma.part(static_cast<std::size_t>(symbol))};
            out.edges[static_cast<std::size_t>(i)].push_back(blk);
            if (i == col) out.diagonal[static_cast<std::size_t>(i)] = blk;
            row += blk.size;
        }
    }
    return out;
}

/// L x r grid: L diagonal packings of sigma_A on the first a columns joined
/// row by row with L packings of sigma_B on the next b columns.
inline std::vector<BlockEdge> packing_block(const Sigma& sigma, const RGoodSplit& split, int row_offset,
                                            int class_offset) {
    std::vector<int> parts_a;
    std::vector<int> parts_b;
    for (int i : split.set_a) parts_a.push_back(sigma.part(static_cast<std::size_t>(i - 1)));
    for (int i : split.set_b) parts_b.push_back(sigma.part(static_cast<std::size_t>(i - 1)));
    const auto cols_a = class_range(class_offset + 1, split.a);
    const auto cols_b = class_range(class_offset + split.a + 1, split.b);
    const auto length = static_cast<int>(split.lcm);

    auto half = [&](const std::vector<int>& parts, const std::vector<int>& cols, int width) {
        std::vector<BlockEdge> out;
        for (int square = 0; square < length / width; ++square) {
            auto band = diagonal_band(parts, row_offset + square * width, cols);
            out.insert(out.end(), band.begin(), band.end());
        }
        return out;
    };
    auto left = half(parts_a, cols_a, split.a);
    const auto right = half(parts_b, cols_b, split.b);
    for (std::size_t i = 0; i < left.size(); ++i) left[i].insert(left[i].end(), right[i].begin(), right[i].end());
    return left;
}

inline void check_split(const Sigma& sigma, const RGoodSplit& split) {
    int a = 0;
    int b = 0;
    std::vector<int> seen;
    for (int i : split.set_a) {
        if (i < 1 || i > sigma.s()) throw ValidationError("split index out of range");
        a += sigma.part(static_cast<std::size_t>(i - 1));
        seen.push_back(i);
    }
    for (int i : split.set_b) {
        if (i < 1 || i > sigma.s()) throw ValidationError("split index out of range");
        b += sigma.part(static_cast<std::size_t>(i - 1));
        seen.push_back(i);
    }
    std::sort(seen.begin(), seen.end());
    if (seen != class_range(1, sigma.s()) || split.set_a.empty() || split.set_b.empty()) {
        throw ValidationError("split must partition the part indices into two non-empty sets");
    }
    if (a != split.a || b != split.b || split.lcm != std::lcm<std::int64_t>(a, b)) {
        throw ValidationError("split sums do not match sigma");
    }
}

}  // namespace detail

/// Perfect matching of the r x s subgrid at the offsets read off a diagonal
/// Latin square of order s. Records each edge's main-diagonal part.
inline MatchingFragment dls_matching(const HypergraphSpec& spec, int row_offset, int class_offset) {
    const int s = spec.s();
    if (s == 2) throw NoSuchDesign("no diagonal Latin square of order 2; use the two-column exchange scheme");
    detail::require_subgrid(spec, row_offset, spec.r(), class_offset, s);
    const auto block = detail::dls_block(spec.sigma, generate_dls(s), row_offset, class_offset);
    MatchingFragment out;
    out.edges = detail::to_edges(block.edges);
    for (const auto& blk : block.diagonal) out.diagonal_parts.push_back(detail::to_part(blk));
    return out;
}

/// Perfect matching of the L x r subgrid at the offsets from an r-good split.
inline MatchingFragment packing_matching(const HypergraphSpec& spec, const RGoodSplit& split, int row_offset,
                                         int class_offset) {
    detail::check_split(spec.sigma, split);
    if (split.lcm > spec.q) throw ValidationError("L = " + std::to_string(split.lcm) + " exceeds q");
    detail::require_subgrid(spec, row_offset, static_cast<int>(split.lcm), class_offset, spec.r());
    MatchingFragment out;
    out.edges = detail::to_edges(detail::packing_block(spec.sigma, split, row_offset, class_offset));
    return out;
}

// ---------------------------------------------------------------------------
// r-good pipeline
// ---------------------------------------------------------------------------

namespace detail {

/// Swaps that absorb one unmatched column segment of r vertices: each listed
/// edge gives up `part` for an equally sized chunk of the segment; the given-up
/// parts plus whatever is left of the segment form one new edge.
struct ExchangeSite {
    std::vector<std::pair<std::size_t, Block>> swaps;
};

inline void apply_exchange(std::vector<BlockEdge>& edges, const ExchangeSite& site, int cls, int row, int r) {
    BlockEdge fresh;
    int next = row;
    for (const auto& [id, part] : site.swaps) {
        auto& edge = edges[id];
        auto it = std::find(edge.begin(), edge.end(), part);
        *it = Block{cls, next, part.size};
        next += part.size;
        fresh.push_back(part);
    }
    if (next < row + r) fresh.push_back({cls, next, row + r - next});
    edges.push_back(std::move(fresh));
}

/// Perfect matching of `rows` rows starting below `row_offset` over classes
/// 1..class_count (a multiple of r): rows = y r + x L, with y diagonal
/// strips on top and x bands of L x r packings below.
inline FrobeniusSplit rgood_perfect_rows(const HypergraphSpec& spec, const RGoodSplit& split, int row_offset, int rows,
                                         int class_count, std::vector<BlockEdge>& edges) {
    const int r = spec.r();
    const auto fs = frobenius_decompose(rows, split.lcm, r);
    const auto classes = class_range(1, class_count);
    int row = row_offset;
    for (std::int64_t i = 0; i < fs.y; ++i, row += r) {
        auto band = diagonal_band(spec.sigma.parts(), row, classes);
        edges.insert(edges.end(), band.begin(), band.end());
    }
    for (std::int64_t i = 0; i < fs.x; ++i, row += static_cast<int>(split.lcm)) {
        for (int g = 0; g < class_count / r; ++g) {
            auto block = packing_block(spec.sigma, split, row, g * r);
            edges.insert(edges.end(), block.begin(), block.end());
        }
    }
    return fs;
}

}  // namespace detail

/// Matchings for r-good sigma, in order of strength:
///   1a  r | q, n >= s                     perfect (diagonal strips)
///   1b  r | n, q = xL + yr solvable       perfect (packings + strips); always for q >= (L-1)(r-1)
///   3   s >= 3, q >= L(r^2-1), n >= s+r   at most (r-1)^2 unmatched (DLS exchange)
///   3'  s = 2, q >= L(r^2-1), n >= r+2    at most (r-1)^2 unmatched (two-column exchange)
///   2   q >= L(r-1), n >= s               at most L(r-1)^2 unmatched
inline MatchingReport r_good_maximum_matching(const HypergraphSpec& spec, const MatchOptions& options = {}) {
    const auto maybe_split = find_r_good_split(spec.sigma);
    if (!maybe_split) throw RegimeError("sigma " + spec.sigma.to_string() + " is not r-good");
    const auto& split = *maybe_split;

    const int r = spec.r();
    const int s = spec.s();
    const int n = spec.n;
    const int q = spec.q;
    const std::int64_t L = split.lcm;
    const std::int64_t m0 = (L - 1) * (r - 1);
    const std::int64_t regime3_q = L * (static_cast<std::int64_t>(r) * r - 1);

    std::vector<Certificate> certs{{"split_a", split.a}, {"split_b", split.b}, {"L", L}};

    if (q % r == 0 && n >= s) {
        auto m = diagonal_perfect_matching(spec);
        certs.push_back({"certified_unmatched_bound", 0});
        return detail::finish(spec, std::move(m.edges), "r-good/1a", std::move(certs), true);
    }

    // Perfect whenever q = xL + yr has a solution; q >= (L-1)(r-1) guarantees one.
    if (n % r == 0 && n >= s) {
        std::vector<detail::BlockEdge> edges;
        try {
            const auto fs = detail::rgood_perfect_rows(spec, split, 0, q, n, edges);
            certs.push_back({"packing_bands_x", fs.x});
            certs.push_back({"strip_bands_y", fs.y});
            certs.push_back({"certified_unmatched_bound", 0});
            return detail::finish(spec, detail::to_edges(edges), "r-good/1b", std::move(certs), true);
        } catch (const NoRepresentation&) {
            if (q >= m0) throw;
        }
    }

    const bool proven_3 = s >= 3 && q >= regime3_q && n >= s + r;
    const bool proven_3b = s == 2 && q >= regime3_q && n >= r + 2;
    const bool proven_2 = q >= L * (r - 1) && n >= s;
    const bool proven = proven_3 || proven_3b || proven_2;
    if (!proven) {
        if (!options.permissive || n < s) {
            if (n < s) throw RegimeError("r-good construction needs n >= s = " + std::to_string(s));
            throw RegimeError("r-good construction needs q >= L(r-1) = " + std::to_string(L * (r - 1)) +
                              " (got q = " + std::to_string(q) + ")");
        }
    }
    const bool use_exchange = n >= s + r;

    // Stack r-row strips while the residual stays >= (L-1)(r-1).
    const int strips = q >= m0 ? static_cast<int>((q - m0) / r) : 0;
    const int q1 = q - strips * r;
    const int t = n / r;
    const int b = n % r;
    const int f = use_exchange ? (n - r) / s : 0;
    const int h = n - f * s;

    using detail::BlockEdge;
    std::vector<BlockEdge> edges;
    std::vector<detail::ExchangeSite> sites;
    const auto tail_classes = detail::class_range(f * s + 1, h);
    const DiagonalLatinSquare dls = (use_exchange && s >= 3) ? generate_dls(s) : DiagonalLatinSquare{};
    for (int strip = 0; strip < strips; ++strip) {
        const int row0 = strip * r;
        for (int blk = 0; blk < f; ++blk) {
            const int col0 = blk * s;
            detail::ExchangeSite site;
            if (s >= 3) {
                auto block = detail::dls_block(spec.sigma, dls, row0, col0);
                for (std::size_t i = 0; i < block.edges.size(); ++i) {
                    site.swaps.push_back({edges.size(), block.diagonal[i]});
                    edges.push_back(std::move(block.edges[i]));
                }
            } else {
                // {top a1 of column 1, top a2 of column 2} and the rest; the
                // first edge trades its column-2 part.
                const int a1 = spec.sigma.part(0);
                const int a2 = spec.sigma.part(1);
                const detail::Block swap_part{col0 + 2, row0 + 1, a2};
                site.swaps.push_back({edges.size(), swap_part});
                edges.push_back({{col0 + 1, row0 + 1, a1}, swap_part});
                edges.push_back({{col0 + 1, row0 + a1 + 1, a2}, {col0 + 2, row0 + a2 + 1, a1}});
            }
            sites.push_back(std::move(site));
        }
        auto band = detail::diagonal_band(spec.sigma.parts(), row0, tail_classes);
        edges.insert(edges.end(), band.begin(), band.end());
    }

    // Residual q1 x n band: perfect on the first t r classes where possible.
    const int residual_row = strips * r;
    int open_from = t * r + 1;
    if (t >= 1) {
        try {
            const auto fs = detail::rgood_perfect_rows(spec, split, residual_row, q1, t * r, edges);
            certs.push_back({"residual_packing_bands_x", fs.x});
            certs.push_back({"residual_strip_bands_y", fs.y});
        } catch (const NoRepresentation&) {
            if (proven) throw;
            open_from = 1;
        }
    }

    const int p = q1 / r;
    const int z = q1 % r;
    std::size_t next_site = 0;
    std::int64_t exchanges = 0;
    if (use_exchange) {
        for (int c = open_from; c <= n; ++c) {
            for (int grp = 0; grp < p && next_site < sites.size(); ++grp) {
                detail::apply_exchange(edges, sites[next_site++], c, residual_row + grp * r + 1, r);
                ++exchanges;
            }
        }
    }

    const bool exchange_regime = proven_3 || proven_3b;
    const std::int64_t bound = exchange_regime ? static_cast<std::int64_t>(r - 1) * (r - 1) : L * (r - 1) * (r - 1);
    certs.insert(certs.end(), {{"strips", strips},
                               {"q1", q1},
                               {"t", t},
                               {"b", b},
                               {"f", f},
                               {"h", h},
                               {"p", p},
                               {"z", z},
                               {"exchange_sites", static_cast<std::int64_t>(sites.size())},
                               {"exchanges", exchanges},
                               {"threshold_statement_q", regime3_q},
                               {"threshold_proof_literal_q", L * (r - 1) * (r - 1)},
                               {"thresholds_diverge", regime3_q != L * (r - 1) * (r - 1) ? 1 : 0},
                               {"certified_unmatched_bound", bound}});
    std::string label = proven_3 ? "r-good/3" : proven_3b ? "r-good/3'" : "r-good/2";
    if (!proven) label += " (unproven regime)";
    return detail::finish(spec, detail::to_edges(edges), std::move(label), std::move(certs), proven);
}

// ---------------------------------------------------------------------------
// Greedy fallback and dispatcher
// ---------------------------------------------------------------------------

/// Repeatedly places one edge on the lowest free rows, largest part into the
/// class with the most free vertices (ties: lower class index), until no
/// further edge fits.
inline MatchingReport greedy_matching(const HypergraphSpec& spec) {
    std::vector<int> used(static_cast<std::size_t>(spec.n), 0);
    std::vector<int> order(static_cast<std::size_t>(spec.n));
    std::vector<detail::BlockEdge> edges;
    const auto& parts = spec.sigma.parts();
    while (spec.has_edges()) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return used[static_cast<std::size_t>(x)] < used[static_cast<std::size_t>(y)];
        });
        bool fits = true;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (spec.q - used[static_cast<std::size_t>(order[i])] < parts[i]) fits = false;
        }
        if (!fits) break;
        detail::BlockEdge e;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            auto& u = used[static_cast<std::size_t>(order[i])];
            e.push_back({order[i] + 1, u + 1, parts[i]});
            u += parts[i];
        }
        edges.push_back(std::move(e));
    }
    return detail::finish(spec, detail::to_edges(edges), "greedy", {}, true);
}

/// Runs every construction that applies (diagonal, rectangular, r-good,
/// contract-and-recurse, greedy) and returns the one with the most edges,
/// earliest on ties.
inline MatchingReport best_matching(const HypergraphSpec& spec, const MatchOptions& options = {}) {
    std::optional<MatchingReport> best;
    const std::int64_t ceiling = spec.vertex_count() / spec.r();
    auto consider = [&](MatchingReport report) {
        if (!best || report.nu > best->nu) best = std::move(report);
    };
    auto done = [&] { return best && best->nu >= std::min(ceiling, gcd_matching_upper_bound(spec)); };

    if (spec.q % spec.r() == 0 && spec.n >= spec.s()) {
        auto m = diagonal_perfect_matching(spec);
        consider(detail::finish(spec, std::move(m.edges), "diagonal", {}, true));
    }
    if (!done() && spec.sigma.is_rectangular()) {
        try {
            consider(rectangular_maximum_matching(spec));
        } catch (const RegimeError&) {
        }
    }
    if (!done() && spec.s() >= 2 && spec.sigma.gcd() == 1) {
        try {
            consider(r_good_maximum_matching(spec, {false}));
        } catch (const RegimeError&) {
        }
        if (options.permissive && !done()) {
            try {
                consider(r_good_maximum_matching(spec, options));
            } catch (const Error&) {
            }
        }
    }
    if (!done() && spec.sigma.gcd() >= 2 && spec.q >= spec.sigma.gcd()) {
        const auto c = contract(spec);
        auto inner = best_matching(c.contracted, options);
        auto expanded = expand(spec, inner.matching);
        std::vector<Certificate> certs{{"contracted_rows_m", c.contracted.q}, {"dropped_rows_t", c.dropped_rows}};
        consider(detail::finish(spec, std::move(expanded.edges), "contract+" + inner.strategy, std::move(certs),
                                inner.proven));
    }
    if (!done()) consider(greedy_matching(spec));
    return *best;
}

}  // namespace sigmahyper
