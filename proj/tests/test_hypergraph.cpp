#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "msindex/hypergraph.hpp"
#include "oracles.hpp"

namespace msindex {
namespace {

std::size_t parse_error_line(const std::string& text) {
    try {
        parse_hypergraph(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

TEST(Hypergraph, ParseExamples) {
    const auto g = parse_hypergraph("3 4 4\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n");
    EXPECT_EQ(g.r(), 3u);
    EXPECT_EQ(g.n(), 4u);
    EXPECT_EQ(g.m(), 4u);
    EXPECT_EQ(g, complete_graph(3, 4));

    const auto empty = parse_hypergraph("# nothing here\n3 5 0\n");
    EXPECT_EQ(empty.m(), 0u);
    EXPECT_EQ(empty.n(), 5u);

    const auto commented = parse_hypergraph("# K3\n2 3 3\n\n1 2\n# middle\n1 3\n2 3\n");
    EXPECT_EQ(commented.m(), 3u);
}

TEST(Hypergraph, ParseErrorsCarryLineNumbers) {
    EXPECT_EQ(parse_error_line("3 4 2\n1 2 3\n1 2 5\n"), 3u);    // out of range
    EXPECT_EQ(parse_error_line("3 4 2\n1 2 3\n1 2 2\n"), 3u);    // repeated vertex
    EXPECT_EQ(parse_error_line("3 4 2\n1 2 3\n3 2 1\n"), 3u);    // not ascending
    EXPECT_EQ(parse_error_line("3 4 2\n1 2 3\n\n1 2 3\n"), 4u);  // duplicate
    EXPECT_EQ(parse_error_line("3 4\n"), 1u);                     // short header
    EXPECT_EQ(parse_error_line("3 4 1\n1 2 3\n1 2 4\n"), 3u);    // trailing content
    EXPECT_EQ(parse_error_line("3 4 2\n1 2 3\n"), 2u);            // missing edge
    EXPECT_EQ(parse_error_line("3 4 1\n1 2 x\n"), 2u);
    EXPECT_EQ(parse_error_line("1 4 1\n1\n"), 1u);
    EXPECT_EQ(parse_error_line("3 4 5\n"), 1u);  // more edges than C(4,3)
    EXPECT_THROW(parse_hypergraph(""), ParseError);
}

TEST(Hypergraph, SerializeRoundTrip) {
    const auto g = colex_segment(3, 7);
    const std::string text = serialize(g);
    EXPECT_EQ(text, "3 5 7\n1 2 3\n1 2 4\n1 3 4\n2 3 4\n1 2 5\n1 3 5\n2 3 5\n");
    EXPECT_EQ(parse_hypergraph(text), g);
    for (std::size_t r = 2; r <= 5; ++r)
        for (std::size_t t = r; t <= 8; ++t) {
            const auto k = complete_graph(r, t);
            EXPECT_EQ(parse_hypergraph(serialize(k)), k);
        }
}

TEST(Hypergraph, ConstructorValidates) {
    EXPECT_THROW(Hypergraph(3, 4, {{0, 1}}), DomainError);
    EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 1}}), DomainError);
    EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 4}}), DomainError);
    EXPECT_THROW(Hypergraph(3, 4, {{0, 1, 2}, {2, 1, 0}}), DomainError);
    const Hypergraph g(3, 4, {{3, 1, 2}, {2, 1, 0}});
    EXPECT_EQ(g.edge(0)[0], 0u);
    EXPECT_EQ(g.edge(1)[0], 1u);
    EXPECT_EQ(g.edge(1)[2], 3u);
}

TEST(Colex, Examples) {
    EXPECT_EQ(colex_segment(3, 4), complete_graph(3, 4));
    const auto g = colex_segment(3, 5);
    EXPECT_EQ(g.n(), 5u);
    const std::vector<Vertex> last(g.edge(4).begin(), g.edge(4).end());
    EXPECT_EQ(last, (std::vector<Vertex>{0, 1, 4}));
    EXPECT_EQ(colex_segment(3, 0).m(), 0u);
    EXPECT_THROW(colex_segment(1, 3), DomainError);
}

TEST(Colex, MatchesOracleOrder) {
    for (std::size_t r = 2; r <= 5; ++r) {
        const std::size_t n = 10;
        const auto expected = oracle::colex_sorted_subsets(r, n);
        const auto g = colex_segment(r, expected.size());
        ASSERT_EQ(g.m(), expected.size());
        EXPECT_EQ(g.edge_list(), expected);
        for (std::size_t j = 0; j + 1 < g.m(); ++j) EXPECT_TRUE(colex_less(g.edge(j), g.edge(j + 1)));
    }
}

TEST(Colex, FullSegmentsAreComplete) {
    for (std::size_t r = 2; r <= 5; ++r)
        for (std::size_t t = r; t <= 9; ++t) EXPECT_EQ(colex_segment(r, binomial(t, r)), complete_graph(r, t));
}

TEST(Colex, SegmentsExtend) {
    const auto big = colex_segment(4, 60).edge_list();
    for (std::uint64_t m = 0; m <= 60; m += 7) {
        const auto small = colex_segment(4, m).edge_list();
        EXPECT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
    }
}

TEST(CompleteGraph, Examples) {
    const auto k = complete_graph(3, 5);
    EXPECT_EQ(k.m(), 10u);
    EXPECT_EQ(k.n(), 5u);
    EXPECT_EQ(complete_graph(2, 7).m(), 21u);
    EXPECT_EQ(complete_graph(4, 4).m(), 1u);
    EXPECT_THROW(complete_graph(4, 3), DomainError);
    EXPECT_THROW(complete_graph(1, 3), DomainError);
}

TEST(Hypergraph, InducedRelabels) {
    const auto g = colex_segment(3, 5);  // K4 plus {1,2,5}
    const std::vector<Vertex> keep{0, 1, 4};
    const auto h = g.induced(keep);
    EXPECT_EQ(h.n(), 3u);
    EXPECT_EQ(h.m(), 1u);
    const std::vector<Vertex> k4{0, 1, 2, 3};
    EXPECT_EQ(g.induced(k4), complete_graph(3, 4));
}

TEST(Binomial, Values) {
    EXPECT_EQ(binomial(5, 2), 10u);
    EXPECT_EQ(binomial(10, 4), 210u);
    EXPECT_EQ(binomial(3, 5), 0u);
    EXPECT_EQ(binomial(200, 100), UINT64_MAX);
}

}  // namespace
}  // namespace msindex
