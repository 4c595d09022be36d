#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "sigmahyper/core.hpp"

namespace sigmahyper {
namespace {

// Every r-subset of the grid whose class profile, sorted, equals sigma.
std::set<std::vector<Vertex>> brute_force_edges(const HypergraphSpec& spec) {
    const int nq = static_cast<int>(spec.vertex_count());
    std::set<std::vector<Vertex>> out;
    for (std::uint32_t mask = 0; mask < (1u << nq); ++mask) {
        if (std::popcount(mask) != spec.r()) continue;
        std::vector<int> per_class(static_cast<std::size_t>(spec.n), 0);
        std::vector<Vertex> vs;
        for (int i = 0; i < nq; ++i) {
            if (!(mask & (1u << i))) continue;
            const Vertex v{i % spec.n + 1, i / spec.n + 1};
            ++per_class[static_cast<std::size_t>(v.cls - 1)];
            vs.push_back(v);
        }
        std::vector<int> sizes;
        for (int c : per_class) {
            if (c > 0) sizes.push_back(c);
        }
        std::sort(sizes.rbegin(), sizes.rend());
        if (sizes == spec.sigma.parts()) {
            std::sort(vs.begin(), vs.end());
            out.insert(vs);
        }
    }
    return out;
}

TEST(SigmaTest, NormalizesToDecreasingOrder) {
    const auto spec = make_spec(10, 5, {2, 3, 4});
    EXPECT_EQ(spec.sigma.parts(), (std::vector<int>{4, 3, 2}));
    EXPECT_EQ(spec.r(), 9);
    EXPECT_EQ(spec.s(), 3);
    EXPECT_EQ(spec.sigma.gcd(), 1);
    EXPECT_TRUE(spec.has_edges());
    EXPECT_EQ(spec.sigma.to_string(), "(4,3,2)");
}

TEST(SigmaTest, HasEdgesNeedsEnoughClassesAndRows) {
    EXPECT_FALSE(make_spec(2, 5, {4, 3, 2}).has_edges());
    EXPECT_FALSE(make_spec(10, 3, {4, 3, 2}).has_edges());
    EXPECT_TRUE(make_spec(3, 4, {4, 3, 2}).has_edges());
}

TEST(SigmaTest, RejectsBadInput) {
    EXPECT_THROW(make_spec(0, 3, {1}), ValidationError);
    EXPECT_THROW(make_spec(3, 0, {1}), ValidationError);
    EXPECT_THROW(make_spec(3, 3, {}), ValidationError);
    EXPECT_THROW(make_spec(3, 3, {2, 0}), ValidationError);
    EXPECT_THROW(make_spec(3, 3, {2, -1}), ValidationError);
}

TEST(SigmaTest, ShapePredicates) {
    EXPECT_TRUE(Sigma::from_parts({2, 2, 2}).is_rectangular());
    EXPECT_FALSE(Sigma::from_parts({2, 2, 2}).is_all_ones());
    EXPECT_TRUE(Sigma::from_parts({1, 1}).is_all_ones());
    EXPECT_EQ(Sigma::from_parts({4, 2, 6}).gcd(), 2);
}

TEST(IsEdgeTest, Examples) {
    const auto spec = make_spec(3, 3, {2, 1});
    EXPECT_TRUE(is_edge(spec, Edge({{1, {1, 2}}, {2, {1}}})));
    EXPECT_FALSE(is_edge(spec, Edge({{1, {1, 2, 3}}})));
    EXPECT_FALSE(is_edge(spec, Edge({{1, {1}}, {2, {2}}, {3, {3}}})));
    EXPECT_FALSE(is_edge(spec, Edge({{1, {1, 2}}, {1, {3}}})));
    EXPECT_THROW(is_edge(spec, Edge({{4, {1, 2}}, {2, {1}}})), ValidationError);
    EXPECT_THROW(is_edge(spec, Edge({{1, {1, 4}}, {2, {1}}})), ValidationError);
}

TEST(EdgeCountTest, Examples) {
    EXPECT_EQ(count_edges(make_spec(2, 2, {1, 1})), 4);
    EXPECT_EQ(count_edges(make_spec(2, 2, {2})), 2);
    EXPECT_EQ(count_edges(make_spec(3, 2, {2, 1})), 12);
    EXPECT_EQ(count_edges(make_spec(2, 5, {4, 3, 2})), 0);
}

TEST(EdgeCountTest, OverflowIsReported) {
    EXPECT_THROW(count_edges(make_spec(1000, 1000, {300, 200, 100})), OverflowError);
}

TEST(EdgeStreamTest, MatchesExhaustiveSubsetScan) {
    const std::vector<std::vector<int>> sigmas = {{1}, {2}, {1, 1}, {2, 1}, {1, 1, 1}, {2, 2}, {3, 1}, {2, 1, 1}};
    for (const auto& parts : sigmas) {
        for (int n = 1; n <= 4; ++n) {
            for (int q = 1; q <= 4; ++q) {
                if (n * q > 16) continue;
                const auto spec = make_spec(n, q, parts);
                const auto expected = brute_force_edges(spec);
                std::set<std::vector<Vertex>> seen;
                std::int64_t streamed = 0;
                for (const auto& e : enumerate_edges(spec)) {
                    ASSERT_TRUE(is_edge(spec, e));
                    auto vs = e.vertices();
                    std::sort(vs.begin(), vs.end());
                    seen.insert(vs);
                    ++streamed;
                }
                SCOPED_TRACE(spec.sigma.to_string() + " n=" + std::to_string(n) + " q=" + std::to_string(q));
                EXPECT_EQ(streamed, static_cast<std::int64_t>(expected.size()));  // no duplicates
                EXPECT_EQ(seen, expected);
                EXPECT_EQ(count_edges(spec), static_cast<std::int64_t>(expected.size()));
            }
        }
    }
}

TEST(EdgeStreamTest, OrderIsDeterministic) {
    const auto spec = make_spec(3, 3, {2, 1});
    auto a = enumerate_edges(spec);
    auto b = enumerate_edges(spec);
    Edge x;
    Edge y;
    while (a.next(x)) {
        ASSERT_TRUE(b.next(y));
        EXPECT_EQ(x, y);
    }
    EXPECT_FALSE(b.next(y));
    auto first = enumerate_edges(spec).next();
    ASSERT_TRUE(first.has_value());
    EXPECT_EQ(*first, Edge({{1, {1}}, {2, {1, 2}}}));
}

TEST(VertexSetTest, ProfileRoundTrip) {
    const auto spec = make_spec(3, 4, {2, 1});
    const std::vector<int> profile{3, 1, 0};
    const auto set = VertexSet::from_profile(spec, profile);
    EXPECT_EQ(set.size(), 4u);
    EXPECT_EQ(set.profile(3), profile);
    EXPECT_TRUE(set.contains({1, 3}));
    EXPECT_FALSE(set.contains({2, 2}));
    EXPECT_THROW(VertexSet::from_profile(spec, std::vector<int>{5, 0, 0}), ValidationError);
    EXPECT_THROW(VertexSet::from_profile(spec, std::vector<int>{1, 0}), ValidationError);
}

TEST(FrobeniusTest, Examples) {
    EXPECT_EQ(frobenius_decompose(6, 3, 4), (FrobeniusSplit{2, 0}));
    EXPECT_EQ(frobenius_decompose(11, 3, 4), (FrobeniusSplit{1, 2}));
    EXPECT_THROW(frobenius_decompose(5, 3, 4), NoRepresentation);
    EXPECT_EQ(frobenius_decompose(0, 3, 4), (FrobeniusSplit{0, 0}));
}

TEST(FrobeniusTest, RejectsInvalidArguments) {
    EXPECT_THROW(frobenius_decompose(10, 2, 4), ValidationError);
    EXPECT_THROW(frobenius_decompose(10, 0, 3), ValidationError);
    EXPECT_THROW(frobenius_decompose(-1, 2, 3), ValidationError);
}

TEST(FrobeniusTest, AgreesWithExhaustiveScan) {
    for (int u = 1; u <= 10; ++u) {
        for (int v = 1; v <= 10; ++v) {
            if (std::gcd(u, v) != 1) continue;
            for (int target = 0; target <= (u - 1) * (v - 1) + 3 * u * v; ++target) {
                std::optional<FrobeniusSplit> best;
                for (int x = target / u; x >= 0 && !best; --x) {
                    if ((target - x * u) % v == 0) best = FrobeniusSplit{x, (target - x * u) / v};
                }
                if (best) {
                    EXPECT_EQ(frobenius_decompose(target, u, v), *best) << target << " " << u << " " << v;
                } else {
                    EXPECT_THROW(frobenius_decompose(target, u, v), NoRepresentation);
                }
            }
        }
    }
}

TEST(VerifyMatchingTest, ValidPerfectMatching) {
    const auto spec = make_spec(3, 3, {2, 1});
    const auto m = make_matching(spec, {Edge({{1, {1, 2}}, {2, {1}}}), Edge({{2, {2, 3}}, {3, {1}}}),
                                        Edge({{3, {2, 3}}, {1, {3}}})});
    EXPECT_TRUE(m.unmatched.empty());
    EXPECT_TRUE(verify_matching(spec, m).ok());
}

TEST(VerifyMatchingTest, SharedVertexIsOneOverlap) {
    const auto spec = make_spec(3, 3, {2, 1});
    const auto m = make_matching(spec, {Edge({{1, {1, 2}}, {2, {1}}}), Edge({{1, {1, 3}}, {3, {1}}})});
    const auto report = verify_matching(spec, m);
    EXPECT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.count(Violation::Kind::overlap), 1u);
}

TEST(VerifyMatchingTest, WrongPartSizesIsNonEdge) {
    const auto spec = make_spec(3, 3, {2, 1});
    const auto m = make_matching(spec, {Edge({{1, {1, 2, 3}}})});
    const auto report = verify_matching(spec, m);
    EXPECT_EQ(report.violations.size(), 1u);
    EXPECT_EQ(report.count(Violation::Kind::non_edge), 1u);
}

TEST(VerifyMatchingTest, UnmatchedSetMustBeTheComplement) {
    const auto spec = make_spec(3, 3, {2, 1});
    Matching m;
    m.edges.push_back(Edge({{1, {1, 2}}, {2, {1}}}));
    m.unmatched = VertexSet({{1, 1}});
    const auto report = verify_matching(spec, m);
    EXPECT_EQ(report.count(Violation::Kind::unmatched_conflict), 1u);
    EXPECT_EQ(report.count(Violation::Kind::uncovered), 6u);

    m.unmatched = VertexSet({{4, 1}});
    EXPECT_EQ(verify_matching(spec, m).count(Violation::Kind::out_of_range), 1u);
}

TEST(VerifyMatchingTest, OutOfRangeEdge) {
    const auto spec = make_spec(3, 3, {2, 1});
    Matching m;
    m.edges.push_back(Edge({{1, {3, 4}}, {2, {1}}}));
    m.unmatched = uncovered_vertices(spec, m.edges);
    EXPECT_EQ(verify_matching(spec, m).count(Violation::Kind::out_of_range), 1u);
}

}  // namespace
}  // namespace sigmahyper
