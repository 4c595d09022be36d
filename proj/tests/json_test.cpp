#include <gtest/gtest.h>

#include "sigmahyper/json.hpp"

namespace sigmahyper {
namespace {

TEST(JsonTest, SpecRoundTrip) {
    const auto spec = make_spec(10, 5, {2, 4, 3});
    const auto j = to_json(spec);
    EXPECT_EQ(j.dump(), R"({"n":10,"q":5,"sigma":[4,3,2]})");
    EXPECT_EQ(spec_from_json(j), spec);
}

TEST(JsonTest, SpecAcceptsAnyPartOrder) {
    const auto spec = spec_from_json(json::parse(R"({"sigma":[1,2],"q":3,"n":4})"));
    EXPECT_EQ(spec.sigma.parts(), (std::vector<int>{2, 1}));
}

TEST(JsonTest, MalformedSpecs) {
    EXPECT_THROW(spec_from_json(json::parse(R"({"n":3,"q":3})")), ValidationError);
    EXPECT_THROW(spec_from_json(json::parse(R"({"n":"3","q":3,"sigma":[1]})")), ValidationError);
    EXPECT_THROW(spec_from_json(json::parse(R"({"n":3,"q":3,"sigma":[1.5]})")), ValidationError);
    EXPECT_THROW(spec_from_json(json::parse(R"({"n":3,"q":3,"sigma":[]})")), ValidationError);
    EXPECT_THROW(spec_from_json(json::parse(R"([1,2,3])")), ValidationError);
    EXPECT_THROW(spec_from_json(json::parse(R"({"n":99999999999,"q":3,"sigma":[1]})")), ValidationError);
}

TEST(JsonTest, EdgeEncoding) {
    const Edge e({{2, {1}}, {1, {2, 3}}});
    EXPECT_EQ(to_json(e).dump(), R"([{"class":1,"rows":[2,3]},{"class":2,"rows":[1]}])");
    EXPECT_EQ(edge_from_json(to_json(e)), e);
    EXPECT_THROW(edge_from_json(json::parse(R"({"class":1})")), ValidationError);
    EXPECT_THROW(edge_from_json(json::parse(R"([{"class":1,"rows":3}])")), ValidationError);
}

TEST(JsonTest, MatchingRoundTrip) {
    const auto spec = make_spec(4, 7, {2, 1});
    const auto report = best_matching(spec);
    const auto j = to_json(report.matching);
    const auto back = matching_from_json(j);
    EXPECT_EQ(back, report.matching);
    EXPECT_TRUE(verify_matching(spec, back).ok());
    EXPECT_THROW(matching_from_json(json::parse(R"({"edges":[]})")), ValidationError);
    EXPECT_THROW(matching_from_json(json::parse(R"({"edges":{},"unmatched":[]})")), ValidationError);
}

TEST(JsonTest, ReportFields) {
    const auto report = best_matching(make_spec(3, 9, {4, 3, 2}));
    const auto j = to_json(report, true);
    EXPECT_EQ(j["nu"], 3);
    EXPECT_EQ(j["unmatched_count"], 0);
    EXPECT_EQ(j["strategy"], "diagonal");
    EXPECT_TRUE(j["certificates"].is_array());
    EXPECT_EQ(j["certificates"][0]["name"], "upper_bound_nq_over_r");
    EXPECT_EQ(matching_from_json(j), report.matching);
    EXPECT_FALSE(to_json(report, false).contains("edges"));
}

}  // namespace
}  // namespace sigmahyper
