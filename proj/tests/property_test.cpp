#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "sigmahyper/independence.hpp"
#include "sigmahyper/matching.hpp"
#include "sigmahyper/oracle.hpp"

namespace sigmahyper {
namespace {

std::vector<int> random_partition(std::mt19937& rng, int r) {
    std::vector<int> parts;
    int left = r;
    while (left > 0) {
        const int a = std::uniform_int_distribution<int>(1, left)(rng);
        parts.push_back(a);
        left -= a;
    }
    return parts;
}

VertexSet random_subset(std::mt19937& rng, const HypergraphSpec& spec, double density) {
    std::bernoulli_distribution coin(density);
    std::vector<Vertex> members;
    for (int c = 1; c <= spec.n; ++c) {
        for (int row = 1; row <= spec.q; ++row) {
            if (coin(rng)) members.push_back({c, row});
        }
    }
    return VertexSet(std::move(members));
}

// Sorted positive integers with total at most q have every prefix of length
// t summing to at most tq/k.
TEST(PropertyTest, PrefixSumsOfSortedSequences) {
    std::mt19937 rng(20261017);
    for (int trial = 0; trial < 20000; ++trial) {
        const int k = std::uniform_int_distribution<int>(1, 8)(rng);
        const int q = std::uniform_int_distribution<int>(k, 60)(rng);
        std::vector<int> x(static_cast<std::size_t>(k), 1);
        int budget = q - k;
        for (auto& v : x) {
            const int add = std::uniform_int_distribution<int>(0, budget)(rng);
            v += add;
            budget -= add;
        }
        std::sort(x.begin(), x.end());
        long prefix = 0;
        for (int t = 1; t <= k; ++t) {
            prefix += x[static_cast<std::size_t>(t - 1)];
            ASSERT_LE(prefix * k, static_cast<long>(t) * q);
        }
    }
}

TEST(PropertyTest, MaxIntersectionEdgeIsOptimalOnRandomSets) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const auto parts = random_partition(rng, std::uniform_int_distribution<int>(1, 5)(rng));
        const auto sigma = Sigma::from_parts(parts);
        const int n = std::uniform_int_distribution<int>(sigma.s(), sigma.s() + 2)(rng);
        const int q = std::uniform_int_distribution<int>(sigma.largest(), sigma.largest() + 2)(rng);
        const auto spec = make_spec(n, q, parts);
        if (count_edges(spec) > 20000) continue;
        const auto b = random_subset(rng, spec, std::uniform_real_distribution<double>(0.1, 0.9)(rng));
        const auto best = max_intersection_edge(spec, b);
        ASSERT_TRUE(is_edge(spec, best.edge));
        int overlap = 0;
        for (const auto& v : best.edge.vertices()) overlap += b.contains(v) ? 1 : 0;
        EXPECT_EQ(overlap, best.overlap);
        EXPECT_EQ(best.overlap, oracle::bf_max_intersection(spec, b)) << sigma.to_string();
    }
}

TEST(PropertyTest, AlphaKIsMonotoneAndBelowVertexCount) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const auto parts = random_partition(rng, std::uniform_int_distribution<int>(2, 12)(rng));
        const auto sigma = Sigma::from_parts(parts);
        const int n = std::uniform_int_distribution<int>(sigma.s(), sigma.s() + 10)(rng);
        const int q = std::uniform_int_distribution<int>(sigma.largest(), sigma.largest() + 10)(rng);
        const auto spec = make_spec(n, q, parts);
        std::int64_t previous = 0;
        for (int k = 1; k < sigma.r(); ++k) {
            const auto value = alpha_k(spec, k);
            EXPECT_LE(previous, value);
            EXPECT_LE(value, spec.vertex_count());
            previous = value;
        }
        EXPECT_EQ(previous, alpha(spec));
    }
}

TEST(PropertyTest, CanonicalizeKeepsRandomMatchingsValid) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto parts = random_partition(rng, std::uniform_int_distribution<int>(1, 6)(rng));
        const auto sigma = Sigma::from_parts(parts);
        const int n = std::uniform_int_distribution<int>(sigma.s(), sigma.s() + 4)(rng);
        const int q = std::uniform_int_distribution<int>(sigma.largest(), sigma.largest() + 6)(rng);
        const auto spec = make_spec(n, q, parts);

        // random maximal matching: shuffle free rows, place edges on random classes
        std::vector<std::vector<int>> free(static_cast<std::size_t>(n));
        for (auto& rows : free) {
            rows.resize(static_cast<std::size_t>(q));
            std::iota(rows.begin(), rows.end(), 1);
            std::shuffle(rows.begin(), rows.end(), rng);
        }
        std::vector<Edge> edges;
        for (int attempt = 0; attempt < 50; ++attempt) {
            std::vector<int> classes(static_cast<std::size_t>(n));
            std::iota(classes.begin(), classes.end(), 0);
            std::shuffle(classes.begin(), classes.end(), rng);
            bool fits = true;
            for (int i = 0; i < sigma.s(); ++i) {
                fits = fits && static_cast<int>(free[static_cast<std::size_t>(classes[static_cast<std::size_t>(i)])].size()) >=
                                   sigma.part(static_cast<std::size_t>(i));
            }
            if (!fits) continue;
            std::vector<EdgePart> ps;
            for (int i = 0; i < sigma.s(); ++i) {
                auto& pool = free[static_cast<std::size_t>(classes[static_cast<std::size_t>(i)])];
                EdgePart p{classes[static_cast<std::size_t>(i)] + 1, {}};
                for (int j = 0; j < sigma.part(static_cast<std::size_t>(i)); ++j) {
                    p.rows.push_back(pool.back());
                    pool.pop_back();
                }
                ps.push_back(std::move(p));
            }
            edges.emplace_back(std::move(ps));
        }
        const auto m = make_matching(spec, edges);
        ASSERT_TRUE(verify_matching(spec, m).ok());
        const auto c = canonicalize(spec, m);
        EXPECT_TRUE(verify_matching(spec, c).ok());
        EXPECT_EQ(c.edges.size(), m.edges.size());
        EXPECT_EQ(c.unmatched.profile(n), m.unmatched.profile(n));
        for (const auto& e : c.edges) {
            for (const auto& p : e.parts()) {
                EXPECT_EQ(p.rows.back() - p.rows.front() + 1, static_cast<int>(p.rows.size()));
                EXPECT_GT(p.rows.front(), c.unmatched.profile(n)[static_cast<std::size_t>(p.cls - 1)]);
            }
        }
    }
}

TEST(PropertyTest, VerifierCatchesRandomTampering) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const auto parts = random_partition(rng, std::uniform_int_distribution<int>(2, 6)(rng));
        const auto sigma = Sigma::from_parts(parts);
        const auto spec = make_spec(sigma.s() + 3, 3 * sigma.r(), parts);
        auto m = best_matching(spec).matching;
        ASSERT_TRUE(verify_matching(spec, m).ok());
        if (m.edges.size() < 2) continue;
        // move one vertex of edge 0 onto a vertex of the same class owned by another edge
        const auto& e0 = m.edges[0];
        const auto victim = e0.parts().front();
        std::vector<Vertex> targets;
        for (std::size_t i = 1; i < m.edges.size(); ++i) {
            for (const auto& v : m.edges[i].vertices()) {
                if (v.cls == victim.cls) targets.push_back(v);
            }
        }
        if (targets.empty()) continue;
        const auto target = targets[std::uniform_int_distribution<std::size_t>(0, targets.size() - 1)(rng)];
        auto ps = e0.parts();
        ps.front().rows.front() = target.row;
        if (std::adjacent_find(ps.front().rows.begin(), ps.front().rows.end()) != ps.front().rows.end()) continue;
        m.edges[0] = Edge(std::move(ps));
        EXPECT_FALSE(verify_matching(spec, m).ok());
    }
}

TEST(PropertyTest, ConstructionsRespectTheirCertificates) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 400; ++trial) {
        const auto parts = random_partition(rng, std::uniform_int_distribution<int>(2, 9)(rng));
        const auto sigma = Sigma::from_parts(parts);
        const int n = std::uniform_int_distribution<int>(sigma.s(), 40)(rng);
        const int q = std::uniform_int_distribution<int>(sigma.largest(), 150)(rng);
        const auto spec = make_spec(n, q, parts);
        const auto report = best_matching(spec);
        ASSERT_TRUE(verify_matching(spec, report.matching).ok()) << sigma.to_string() << " " << n << " " << q;
        EXPECT_EQ(report.nu * sigma.r() + report.unmatched_count, spec.vertex_count());
        EXPECT_LE(report.nu, *report.certificate("upper_bound_nq_over_r"));
        if (const auto ub = report.certificate("gcd_upper_bound")) {
            EXPECT_LE(report.nu, *ub);
        }
        if (const auto bound = report.certificate("certified_unmatched_bound")) {
            EXPECT_LE(report.unmatched_count, *bound) << report.strategy;
        }
    }
}

}  // namespace
}  // namespace sigmahyper
