#include <doctest.h>

#include <algorithm>

#include "ofnet/discovery.hpp"
#include "ofnet/topology.hpp"
#include "test_util.hpp"

using namespace ofnet;

namespace {

Network clique(std::size_t n, Msat weight) {
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < n; ++i) keys.push_back("n" + std::to_string(i));
    std::vector<Channel> channels;
    ChannelId id = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                channels.push_back({id++, static_cast<NodeIndex>(i), static_cast<NodeIndex>(j),
                                    weight, 0, 1000000000});
    return Network::build(std::move(keys), std::move(channels));
}

Network star(std::size_t leaves) {
    std::vector<std::string> keys{"hub"};
    for (std::size_t i = 0; i < leaves; ++i) keys.push_back("leaf" + std::to_string(i));
    std::vector<Channel> channels;
    ChannelId id = 0;
    for (std::size_t i = 1; i <= leaves; ++i) {
        channels.push_back({id++, 0, static_cast<NodeIndex>(i), 1, 0, 1000000000});
        channels.push_back({id++, static_cast<NodeIndex>(i), 0, 1, 0, 1000000000});
    }
    return Network::build(std::move(keys), std::move(channels));
}

bool route_contains(const Network& net, const Route& r, NodeIndex v) {
    if (r.source == v || r.target == v) return true;
    for (NodeIndex u : r.intermediates(net))
        if (u == v) return true;
    return false;
}

}  // namespace

TEST_CASE("assign_servers strategies") {
    Network net = star(6);
    CHECK(assign_servers(net, ServerStrategy::by_fraction(0.0), 1).empty());
    CHECK(assign_servers(net, ServerStrategy::by_fraction(1.0), 1).size() == 7);
    auto top = assign_servers(net, ServerStrategy::by_top_degree(1), 1);
    REQUIRE(top.size() == 1);
    CHECK(top.front().node == 0);  // the hub
    CHECK_THROWS_AS(assign_servers(net, ServerStrategy::by_top_degree(100), 1), GraphError);
    CHECK_THROWS_AS(assign_servers(net, ServerStrategy::by_fraction(1.5), 1), GraphError);

    auto a = assign_servers(net, ServerStrategy::by_fraction(0.5), 9);
    auto b = assign_servers(net, ServerStrategy::by_fraction(0.5), 9);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].node == b[i].node);
}

TEST_CASE("tn_answer on the uniform clique gives weight 2r") {
    const Msat r = 37;
    Network net = clique(6, r);
    for (NodeIndex tn = 0; tn < 6; ++tn) {
        for (NodeIndex s = 0; s < 6; ++s) {
            for (NodeIndex t = 0; t < 6; ++t) {
                if (s == t || tn == s || tn == t) continue;
                auto answers = tn_answer(net, tn, s, t, 1000000, 3);
                REQUIRE(!answers.empty());
                CHECK(answers.front().weight == 2 * r);
                for (const auto& wr : answers) CHECK(route_contains(net, wr.route, tn));
            }
        }
    }
}

TEST_CASE("tn_answer on lemma1 sees only expensive routes") {
    GeneratedTopology topo = gen_adversarial({AdversarialKind::Lemma1, 2, 5});
    // outer node 4 belongs to TN 1; every other TN answers at >= M+1
    for (NodeIndex tn : {NodeIndex{2}, NodeIndex{3}}) {
        auto answers = tn_answer(topo.network, tn, topo.source, 4, 1000000, 5);
        REQUIRE(!answers.empty());
        for (const auto& wr : answers) CHECK(wr.weight >= 6);
    }
    auto direct = tn_answer(topo.network, 1, topo.source, 4, 1000000, 5);
    REQUIRE(!direct.empty());
    CHECK(direct.front().weight == 1);
}

TEST_CASE("tn_answer returns empty when no route passes through the TN") {
    GeneratedTopology topo = gen_adversarial({AdversarialKind::Lemma3, 2, 3});
    // sink of TN 1 is node 4; TN 2 cannot reach it
    CHECK(tn_answer(topo.network, 2, topo.source, 4, 1000000, 5).empty());
}

TEST_CASE("tn_answer pages through its ranking with offset") {
    Network net = clique(6, 1);
    auto first = tn_answer(net, 2, 0, 1, 1000000, 4, 0);
    auto second = tn_answer(net, 2, 0, 1, 1000000, 4, 4);
    REQUIRE(first.size() == 4);
    REQUIRE(!second.empty());
    CHECK(second.front().weight >= first.back().weight);
    for (const auto& a : first)
        for (const auto& b : second) CHECK(a.route.channels != b.route.channels);
}

TEST_CASE("pn_answer serves only cached targets") {
    Network net = testutil::random_network(30, 4.0, 20, 77);
    ServerRole pn = build_partial_cache(net, 3, 10, 5, 1000);
    CHECK(pn.cache.size() <= 10);
    for (const auto& [target, route] : pn.cache) {
        CHECK(validate_route(net, route, 3, target));
        auto answers = pn_answer(net, pn, 7, target, 1000, 5);
        for (const auto& wr : answers) {
            CHECK(validate_route(net, wr.route, 7, target));
            CHECK(route_contains(net, wr.route, 3));
        }
    }
    ServerRole empty_pn{9, ServerKind::Partial, {}};
    CHECK(pn_answer(net, empty_pn, 7, 8, 1000, 5).empty());
}

TEST_CASE("pn_answer concatenates the s leg with the cached route") {
    // s=0 adjacent to pn=1, cached route 1->2
    std::vector<Channel> chans{{0, 0, 1, 1, 0, 10}, {1, 1, 2, 1, 0, 10}};
    Network net = Network::build({"a", "b", "c"}, chans);
    ServerRole pn{1, ServerKind::Partial, {}};
    pn.cache.emplace(2, Route{1, 2, {1}});
    auto answers = pn_answer(net, pn, 0, 2, 1000, 5);
    REQUIRE(answers.size() == 1);
    CHECK(answers.front().route.channels == std::vector<std::uint32_t>({0, 1}));
    CHECK(answers.front().weight == 2);
}

TEST_CASE("altruistic answer is the oracle") {
    GeneratedTopology topo = gen_adversarial({AdversarialKind::Lemma1, 2, 5});
    auto best = altruistic_answer(topo.network, topo.source, 4, 1000000);
    REQUIRE(best);
    CHECK(best->weight == 1);

    Network two = Network::build({"a", "b"}, {{0, 0, 1, 5, 0, 10}});
    CHECK_FALSE(altruistic_answer(two, 1, 0, 1000));
}

TEST_CASE("discover_route respects the query budget and no-server flag") {
    Network net = clique(8, 3);
    auto servers = assign_servers(net, ServerStrategy::by_fraction(1.0), 2);
    // keep only servers distinct from s and t below
    WalletPolicy policy{1, 3, 5, 42, false};
    auto model = AvailabilityModel::always();
    Episode ep;
    auto outcome = discover_route(net, servers, policy, 0, 1, 1000000, model, ep,
                                  DiscoveryMode::Efficiency);
    CHECK(outcome.queries_issued <= 3);
    CHECK(outcome.success);
    CHECK(outcome.weight <= 6);

    std::vector<ServerRole> none;
    Episode ep2;
    auto empty = discover_route(net, none, policy, 0, 1, 1000000, model, ep2,
                                DiscoveryMode::Efficiency);
    CHECK(empty.no_server);
    CHECK(empty.queries_issued == 0);
    CHECK_FALSE(empty.success);
}

TEST_CASE("effectiveness mode stops at the first available candidate") {
    Network net = clique(6, 2);
    auto servers = assign_servers(net, ServerStrategy::explicit_set({3}), 1);
    WalletPolicy policy{1, 5, 5, 11, false};
    auto model = AvailabilityModel::always();
    Episode ep;
    auto outcome = discover_route(net, servers, policy, 0, 1, 1000000, model, ep,
                                  DiscoveryMode::Effectiveness);
    CHECK(outcome.success);
    CHECK(outcome.candidates_tried == 1);
    CHECK(outcome.queries_issued == 1);
}

TEST_CASE("selfishness: every answer contains the answering server") {
    Network net = testutil::random_network(40, 4.0, 30, 55);
    auto servers = assign_servers(net, ServerStrategy::by_fraction(0.3), 3);
    for (const ServerRole& srv : servers) {
        auto answers = tn_answer(net, srv.node, 0, 20, 1000, 5);
        for (const auto& wr : answers) CHECK(route_contains(net, wr.route, srv.node));
    }
}

TEST_CASE("efficiency mode picks the minimum over received answers") {
    GeneratedTopology topo = gen_adversarial({AdversarialKind::Lemma1, 3, 7});
    std::vector<ServerRole> servers;
    for (NodeIndex tn : topo.tn_set) servers.push_back({tn, ServerKind::Trampoline, {}});
    WalletPolicy policy{1, 100, 5, 13, false};  // budget covers all TNs
    auto model = AvailabilityModel::always();
    Episode ep;
    // target outer node 5 belongs to TN 1; with all TNs queried the best is weight 1
    auto outcome = discover_route(topo.network, servers, policy, topo.source, 5, 1000000, model,
                                  ep, DiscoveryMode::Efficiency);
    CHECK(outcome.success);
    CHECK(outcome.weight == 1);
}

TEST_CASE("discovery outcome is deterministic") {
    Network net = testutil::random_network(60, 4.0, 30, 91);
    auto servers = assign_servers(net, ServerStrategy::by_fraction(0.2), 5);
    WalletPolicy policy{3, 6, 5, 17, false};
    auto model = AvailabilityModel::uniform_liquidity(1.0, 23);
    auto run = [&]() {
        Episode ep{42};
        return discover_route(net, servers, policy, 2, 50, 1000, model, ep,
                              DiscoveryMode::Effectiveness);
    };
    auto a = run(), b = run();
    CHECK(a.success == b.success);
    CHECK(a.queries_issued == b.queries_issued);
    CHECK(a.candidates_tried == b.candidates_tried);
    CHECK(a.aware_nodes == b.aware_nodes);
    if (a.success) CHECK(a.route->channels == b.route->channels);
}

TEST_CASE("adding servers never worsens efficiency-mode weight") {
    Network net = testutil::random_network(50, 4.0, 30, 123);
    auto small = assign_servers(net, ServerStrategy::by_fraction(0.2), 5);
    auto extra = assign_servers(net, ServerStrategy::by_fraction(0.4), 5);
    std::vector<ServerRole> large = small;
    for (const auto& srv : extra) {
        bool dup = false;
        for (const auto& have : large)
            if (have.node == srv.node) dup = true;
        if (!dup) large.push_back(srv);
    }
    WalletPolicy policy{4, 1000, 5, 31, false};  // budget covers every server
    auto model = AvailabilityModel::always();
    for (NodeIndex s = 0; s < 10; ++s) {
        for (NodeIndex t = 40; t < 50; ++t) {
            Episode e1, e2;
            auto a = discover_route(net, small, policy, s, t, 1000, model, e1,
                                    DiscoveryMode::Efficiency);
            auto b = discover_route(net, large, policy, s, t, 1000, model, e2,
                                    DiscoveryMode::Efficiency);
            if (a.success) {
                REQUIRE(b.success);
                CHECK(b.weight <= a.weight);
            }
        }
    }
}

TEST_CASE("aware_nodes covers queried servers and excludes endpoints") {
    Network net = clique(7, 2);
    auto servers = assign_servers(net, ServerStrategy::explicit_set({2, 3, 4}), 1);
    WalletPolicy policy{1, 10, 5, 3, false};
    auto model = AvailabilityModel::always();
    Episode ep;
    auto outcome = discover_route(net, servers, policy, 0, 1, 1000000, model, ep,
                                  DiscoveryMode::Efficiency);
    CHECK(outcome.aware_nodes.count(0) == 0);
    CHECK(outcome.aware_nodes.count(1) == 0);
    for (NodeIndex v : {NodeIndex{2}, NodeIndex{3}, NodeIndex{4}})
        CHECK(outcome.aware_nodes.count(v) == 1);
}
