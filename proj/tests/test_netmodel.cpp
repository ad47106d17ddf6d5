#include "helpers.hpp"

#include <doctest.h>

using namespace testutil;

namespace {

std::vector<QVec> columns_of(const ReactionNetwork& net) {
    std::vector<QVec> cols;
    for (const auto& r : net.reactions) cols.push_back(r.gamma);
    return cols;
}

}  // namespace

TEST_CASE("parsing worked networks") {
    ParseResult parsed = parse_network("A + B <=> C\nA <=> B\n2A <=> C\n");
    const ReactionNetwork& net = parsed.network;
    CHECK(parsed.warnings.empty());
    CHECK(net.species == std::vector<std::string>{"A", "B", "C"});
    CHECK(columns_of(net) == qm({{-1, -1, 1}, {-1, 1, 0}, {-2, 0, 1}}));
    for (const auto& r : net.reactions) CHECK(r.reversible);
}

TEST_CASE("parsing the empty complex") {
    ReactionNetwork net = net_of("A <=> 0\n");
    CHECK(net.reaction_count() == 1);
    CHECK(net.reactions[0].reversible);
    CHECK(net.reactions[0].gamma == qv({-1}));
    CHECK(net_of("A <=> \xE2\x88\x85\n") == net);
    CHECK(net_of("A <=> empty\n") == net);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_WITH_AS(parse_network("A => A + B\n"),
                         doctest::Contains("species 'A'"), ParseError);
    CHECK_THROWS_AS(parse_network("A <=> \n"), ParseError);
    CHECK_THROWS_AS(parse_network("A B => C\n"), ParseError);
    CHECK_THROWS_AS(parse_network("0 => 0\n"), ParseError);
    CHECK_THROWS_AS(parse_network("0A + B => C\n"), ParseError);
    CHECK_THROWS_AS(parse_network("# only a comment\n"), ParseError);
    try {
        parse_network("A => B\nA => ? C\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col == 6);
    }
}

TEST_CASE("duplicate reactions warn but stay") {
    ParseResult parsed = parse_network("A <=> B\nB <=> A\nA => C\n");
    CHECK(parsed.network.reaction_count() == 3);
    REQUIRE(parsed.warnings.size() == 1);
    CHECK(parsed.warnings[0].find("line 2") != std::string::npos);
}

TEST_CASE("round trip through render") {
    for (const char* text : {
             "A + B <=> C\nA <=> B\n2A <=> C\n",
             "A <=> B + D\nB <=> C\nC <=> D\nC <=> 0\n",
             "13A <=> 11B + 7C\n9B => 7A\n2A => B + 2C\n",
             "A <=> 0\n",
         }) {
        ReactionNetwork net = net_of(text);
        CHECK(net_of(render(net)) == net);
    }
}

TEST_CASE("stoichiometric matrices") {
    ReactionNetwork ex2 = net_of(kExample2);
    // Fixture columns are published in A,B,C,D order; the text interns A,B,D,C.
    CHECK(columns_of(ex2) == ex2m({{-1, 1, 0, 1}, {0, -1, 1, 0}, {0, 0, -1, 1}, {0, 0, -1, 0}}));
    CHECK(columns_of(net_of("A => B\n")) == qm({{-1, 1}}));
    ReactionNetwork ex3 = net_of("A + B <=> 2C\nA <=> C\nB <=> C\n");
    CHECK(columns_of(ex3) == qm({{-1, -1, 2}, {-1, 0, 1}, {0, -1, 1}}));
}

TEST_CASE("irreversible expansion") {
    ReactionNetwork single = net_of("13A <=> 11B + 7C\n");
    ReactionNetwork irr = to_irreversible(single);
    CHECK(columns_of(irr) == qm({{-13, 11, 7}, {13, -11, -7}}));
    for (const auto& r : irr.reactions) CHECK(!r.reversible);

    ReactionNetwork already = net_of("A => B\nB => C\n");
    CHECK(to_irreversible(already) == already);

    ReactionNetwork add1 = net_of("13A <=> 11B + 7C\n9B => 7A\n2A => B + 2C\n");
    CHECK(columns_of(to_irreversible(add1)) ==
          qm({{-13, 11, 7}, {13, -11, -7}, {7, -9, 0}, {-2, 1, 2}}));

    // Column count grows exactly by the number of reversible reactions.
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        ReactionNetwork net;
        size_t n = static_cast<size_t>(rng.pick(2, 4));
        for (size_t j = 0; j < n; ++j) net.species.push_back("X" + std::to_string(j));
        size_t reversible = 0;
        size_t m = static_cast<size_t>(rng.pick(1, 5));
        for (size_t i = 0; i < m; ++i) {
            bool rev = rng.pick(0, 1) == 1;
            reversible += rev;
            net.reactions.push_back(Reaction::from_vector(rng.nonzero_vec(n, -2, 2), rev));
        }
        CHECK(to_irreversible(net).reaction_count() == m + reversible);
    }
}

TEST_CASE("dual networks") {
    SUBCASE("mixed reversibility expands first") {
        ReactionNetwork add1 = net_of("13A <=> 11B + 7C\n9B => 7A\n2A => B + 2C\n");
        ReactionNetwork dual = dual_network(add1);
        CHECK(dual.species == std::vector<std::string>{"S1", "S2", "S3", "S4"});
        CHECK(columns_of(dual) ==
              qm({{-13, 13, 7, -2}, {11, -11, -9, 1}, {7, -7, 0, 2}}));
        for (const auto& r : dual.reactions) CHECK(!r.reversible);
        // 13A + 2D => 13B + 7C reading of the first dual column.
        CHECK(dual.reactions[0].reactant == qv({13, 0, 0, 2}));
        CHECK(dual.reactions[0].product == qv({0, 13, 7, 0}));
        // Transpose involution at the matrix level.
        CHECK(columns_of(dual_network(dual)) == columns_of(to_irreversible(add1)));
    }
    SUBCASE("fully reversible networks stay undoubled") {
        ReactionNetwork net = net_of("A <=> B\nB <=> C\nA + B <=> C\nA <=> C\n");
        // Columns of the dual are the rows of Gamma.
        QMat gamma = net.stoichiometric_matrix();
        ReactionNetwork dual = dual_network(net);
        CHECK(dual.species.size() == 4);
        QMat dual_gamma = dual.stoichiometric_matrix();
        CHECK(dual_gamma.rows == gamma.cols);
        CHECK(dual_gamma.cols == gamma.rows);
        for (size_t i = 0; i < gamma.rows; ++i)
            for (size_t j = 0; j < gamma.cols; ++j) CHECK(dual_gamma.at(j, i) == gamma.at(i, j));
        for (const auto& r : dual.reactions) CHECK(r.reversible);
        CHECK(columns_of(dual_network(dual)) == columns_of(net));
    }
}

TEST_CASE("influence graph") {
    SUBCASE("worked example is strongly connected") {
        InfluenceGraph g = influence_graph(net_of("A + B <=> C\nA <=> B\n2A <=> C\n"));
        CHECK(g.strongly_connected());
        CHECK(g.connected);
    }
    SUBCASE("disjoint pairs split") {
        InfluenceGraph g = influence_graph(net_of("A <=> B\nC <=> D\n"));
        CHECK(!g.connected);
        CHECK(!g.strongly_connected());
        CHECK(g.scc_count == 2);
        CHECK(g.edges().empty());
        CHECK(g.weak_component[0] != g.weak_component[1]);
    }
    SUBCASE("single reaction") {
        InfluenceGraph g = influence_graph(net_of("2A <=> C\n"));
        CHECK(g.strongly_connected());
    }
    SUBCASE("irreversible edges follow reactant support") {
        // A => B feeds B => C, but nothing feeds back.
        InfluenceGraph g = influence_graph(net_of("A => B\nB => C\n"));
        auto edges = g.edges();
        REQUIRE(edges.size() == 1);
        CHECK(edges[0] == std::pair<size_t, size_t>{0, 1});
        CHECK(!g.strongly_connected());
        CHECK(g.connected);
    }
    SUBCASE("edges survive species relabeling") {
        ReactionNetwork net = net_of("A + B <=> C\nC => D\nD <=> B\n");
        ReactionNetwork permuted = net_of("B + A <=> C\nC => D\nD <=> A\n");
        // Same reaction structure with A and B swapped.
        auto e1 = influence_graph(net).edges();
        auto e2 = influence_graph(permuted).edges();
        CHECK(e1 == e2);
    }
}

TEST_CASE("subnetwork enumeration") {
    ReactionNetwork ex1 = net_of("A + B <=> C\nA <=> B\n2A <=> C\n");
    SUBCASE("rank one singles, largest mask first") {
        auto subs = enumerate_subnetworks(ex1, 1);
        REQUIRE(subs.size() == 3);
        CHECK(subs[0].reactions[0].gamma == qv({-2, 0, 1}));
        CHECK(subs[1].reactions[0].gamma == qv({-1, 1, 0}));
        CHECK(subs[2].reactions[0].gamma == qv({-1, -1, 1}));
    }
    SUBCASE("rank zero is the empty subnetwork") {
        auto subs = enumerate_subnetworks(ex1, 0);
        REQUIRE(subs.size() == 1);
        CHECK(subs[0].reactions.empty());
    }
    SUBCASE("example two rank-three triples include the fixture") {
        ReactionNetwork ex2 = net_of(kExample2);
        auto masks = subnetwork_masks(ex2, 3);
        REQUIRE(!masks.empty());
        CHECK(masks.front() == 0b1110);  // {r2, r3, r4} leads
        ReactionNetwork inner = subnetwork(ex2, masks.front());
        std::vector<QVec> cols;
        for (const auto& r : inner.reactions) cols.push_back(r.gamma);
        CHECK(cols == ex2m({{0, -1, 1, 0}, {0, 0, -1, 1}, {0, 0, -1, 0}}));
    }
    SUBCASE("sizes never increase along the output") {
        auto masks = subnetwork_masks(ex1, 2);
        for (size_t i = 1; i < masks.size(); ++i)
            CHECK(__builtin_popcountll(masks[i - 1]) >= __builtin_popcountll(masks[i]));
    }
}
