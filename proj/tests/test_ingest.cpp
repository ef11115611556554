#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ofnet/ingest.hpp"

using namespace ofnet;

namespace {

std::string fixture_text() {
    std::ifstream in(std::string(FIXTURE_DIR) + "/describegraph_small.json");
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

constexpr const char* kTwoNodeSnapshot = R"({
  "nodes": [{"pub_key": "A"}, {"pub_key": "B"}],
  "edges": [{
    "channel_id": "1", "node1_pub": "A", "node2_pub": "B", "capacity": "100000",
    "node1_policy": {"fee_base_msat": "10", "fee_rate_milli_msat": "2", "disabled": false},
    "node2_policy": {"fee_base_msat": "20", "fee_rate_milli_msat": "3", "disabled": %s}
  }]
})";

std::string two_node(bool node2_disabled) {
    char buf[1024];
    std::snprintf(buf, sizeof(buf), kTwoNodeSnapshot, node2_disabled ? "true" : "false");
    return buf;
}

}  // namespace

TEST_CASE("two nodes, one edge, both policies enabled") {
    Network net = parse_describegraph(two_node(false));
    CHECK(net.node_count() == 2);
    CHECK(net.channel_count() == 2);
    // capacity satoshi -> msat
    CHECK(net.channel(0).capacity == 100000000);
    // weight at 1e6 msat equals base + rate
    CHECK(channel_weight(net.channel(0), 1000000) == 12);
    CHECK(channel_weight(net.channel(1), 1000000) == 23);
}

TEST_CASE("disabled policy side is omitted") {
    Network net = parse_describegraph(two_node(true));
    CHECK(net.channel_count() == 1);
    CHECK(net.node_key(net.channel(0).src) == "A");
    CHECK(net.node_key(net.channel(0).dst) == "B");
}

TEST_CASE("committed fixture parses with expected hand counts") {
    Network net = parse_describegraph(fixture_text());
    CHECK(net.node_count() == 3);
    // edge1 both sides, edge2 node1 side only, edge3 node2 side only
    CHECK(net.channel_count() == 4);
    CHECK(net.channel(3).capacity == 50000000);
}

TEST_CASE("ingest is idempotent at the model level") {
    Network a = parse_describegraph(fixture_text());
    Network b = parse_describegraph(fixture_text());
    REQUIRE(a.node_count() == b.node_count());
    REQUIRE(a.channel_count() == b.channel_count());
    for (std::uint32_t i = 0; i < a.channel_count(); ++i) {
        CHECK(a.channel(i).src == b.channel(i).src);
        CHECK(a.channel(i).dst == b.channel(i).dst);
        CHECK(a.channel(i).base_fee == b.channel(i).base_fee);
        CHECK(a.channel(i).proportional_rate == b.channel(i).proportional_rate);
        CHECK(a.channel(i).capacity == b.channel(i).capacity);
    }
}

TEST_CASE("malformed and invalid documents") {
    CHECK_THROWS_AS(parse_describegraph("{not json"), ParseError);
    CHECK_THROWS_AS(parse_describegraph("{\"nodes\": []}"), ParseError);
    std::string negative = two_node(false);
    auto pos = negative.find("\"10\"");
    negative.replace(pos, 4, "\"-10\"");
    CHECK_THROWS_AS(parse_describegraph(negative), ParseError);
}
