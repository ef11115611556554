#pragma once

#include <optional>
#include <vector>

#include "ofnet/graph.hpp"

namespace ofnet {

// All-pairs shortest route weights; kNoNode in next_hop marks "unreachable".
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<Msat> dist;          // n*n, kInfWeight for unreachable
    std::vector<NodeIndex> next_hop; // n*n, first node after row-node on a shortest route

    Msat at(NodeIndex u, NodeIndex v) const { return dist[u * n + v]; }
    std::optional<Route> reconstruct(const Network& net, NodeIndex s, NodeIndex t,
                                     Msat amount) const;
};

DistanceMatrix all_pairs_shortest(const Network& net, Msat amount);

struct SingleSourceResult {
    std::vector<Msat> dist;               // kInfWeight for unreachable
    std::vector<std::uint32_t> parent;    // channel index into the node, or UINT32_MAX
    std::optional<Route> route_to(const Network& net, NodeIndex s, NodeIndex t) const;
};

SingleSourceResult shortest_path_single_source(const Network& net, NodeIndex s, Msat amount);

// D^(h): minimal route weight using at most h channels, D^(h)[v][v] = 0.
// Matrices for h = 1..h_max, computed by min-plus products with D^(1).
struct HopLimitedDistances {
    std::size_t n = 0;
    std::vector<std::vector<Msat>> per_hop;  // per_hop[h-1] is D^(h)

    Msat at(unsigned h, NodeIndex u, NodeIndex v) const { return per_hop[h - 1][u * n + v]; }
};

HopLimitedDistances hop_limited_distances(const Network& net, unsigned h_max, Msat amount);

struct WeightedRoute {
    Route route;
    Msat weight = 0;
};

// The k minimum-weight loopless routes from s to t, sorted by weight, ties
// broken by the lexicographic order of the channel-id sequence. Routes are
// distinct channel sequences; parallel channels yield distinct routes.
// With complete_ties the result may exceed k: it is extended through the
// whole tie class of the k-th weight, which keeps rankings derived from the
// result stable when k grows.
std::vector<WeightedRoute> k_shortest_paths(const Network& net, NodeIndex s, NodeIndex t,
                                            std::size_t k, Msat amount,
                                            bool complete_ties = false);

// Exhaustive DFS over all loopless routes from s to t, sorted like
// k_shortest_paths. Only viable on small graphs; serves as an independent
// enumeration oracle.
std::vector<WeightedRoute> enumerate_simple_routes(const Network& net, NodeIndex s, NodeIndex t,
                                                   Msat amount);

}  // namespace ofnet
