#pragma once

#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "ofnet/availability.hpp"
#include "ofnet/graph.hpp"
#include "ofnet/pathing.hpp"

namespace ofnet {

enum class ServerKind { Trampoline, Partial, Altruistic };

struct ServerRole {
    NodeIndex node = 0;
    ServerKind kind = ServerKind::Trampoline;
    // Partial only: cached route from this node per target.
    std::unordered_map<NodeIndex, Route> cache;
};

struct ServerStrategy {
    enum Kind { Fraction, TopDegree, Explicit } kind = Fraction;
    double fraction = 0.0;
    std::size_t top_k = 0;
    std::vector<NodeIndex> nodes;

    static ServerStrategy by_fraction(double f) { return {Fraction, f, 0, {}}; }
    static ServerStrategy by_top_degree(std::size_t k) { return {TopDegree, 0.0, k, {}}; }
    static ServerStrategy explicit_set(std::vector<NodeIndex> nodes) {
        return {Explicit, 0.0, 0, std::move(nodes)};
    }
};

std::vector<ServerRole> assign_servers(const Network& net, const ServerStrategy& strategy,
                                       std::uint64_t seed);

// Partial-node role with shortest routes to `cache_size` uniformly selected
// targets (unreachable selections are simply absent from the cache).
ServerRole build_partial_cache(const Network& net, NodeIndex node, std::size_t cache_size,
                               std::uint64_t seed, Msat amount);

struct WalletPolicy {
    unsigned neighborhood_h = 2;
    unsigned max_queries = 5;
    unsigned routes_per_server = 5;
    std::uint64_t order_seed = 0;
    bool undirected_neighborhood = false;
};

enum class DiscoveryMode { Efficiency, Effectiveness };

struct DiscoveryOutcome {
    std::optional<Route> route;
    Msat weight = kInfWeight;
    unsigned queries_issued = 0;
    unsigned candidates_tried = 0;
    std::set<NodeIndex> aware_nodes;  // excludes s and t
    bool success = false;
    bool no_server = false;
};

// Selfish trampoline answer: up to k loopless routes through tn, sorted by
// (weight, channel-id sequence). `offset` skips that many best routes, so
// repeated queries page through the TN's ranking.
std::vector<WeightedRoute> tn_answer(const Network& net, NodeIndex tn, NodeIndex s, NodeIndex t,
                                     Msat amount, std::size_t k, std::size_t offset = 0);

std::vector<WeightedRoute> pn_answer(const Network& net, const ServerRole& pn, NodeIndex s,
                                     NodeIndex t, Msat amount, std::size_t k);

// Oracle: globally optimal route, independent of the answering node.
std::optional<WeightedRoute> altruistic_answer(const Network& net, NodeIndex s, NodeIndex t,
                                               Msat amount);

// The wallet's seeded query order over the servers reachable within the
// policy's neighborhood. Independent of the target, which the adversarial
// constructions rely on.
std::vector<NodeIndex> server_query_order(const Network& net,
                                          const std::vector<ServerRole>& servers,
                                          const WalletPolicy& policy, NodeIndex s);

// Server answers depend only on (server, s, t, offset) for a fixed network,
// amount and routes_per_server, so sweeps may share a memoization cache.
struct AnswerKey {
    NodeIndex node;
    NodeIndex s;
    NodeIndex t;
    std::size_t offset;
    bool operator<(const AnswerKey& o) const {
        if (node != o.node) return node < o.node;
        if (s != o.s) return s < o.s;
        if (t != o.t) return t < o.t;
        return offset < o.offset;
    }
};
using AnswerCache = std::map<AnswerKey, std::vector<WeightedRoute>>;

DiscoveryOutcome discover_route(const Network& net, const std::vector<ServerRole>& servers,
                                const WalletPolicy& policy, NodeIndex s, NodeIndex t, Msat amount,
                                const AvailabilityModel& model, Episode& episode,
                                DiscoveryMode mode, AnswerCache* cache = nullptr);

}  // namespace ofnet
