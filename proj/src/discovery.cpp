#include "ofnet/discovery.hpp"

#include <algorithm>
#include <cmath>

#include "ofnet/rng.hpp"

namespace ofnet {

namespace {

std::vector<ChannelId> id_sequence(const Network& net, const std::vector<std::uint32_t>& chans) {
    std::vector<ChannelId> ids;
    ids.reserve(chans.size());
    for (std::uint32_t ci : chans) ids.push_back(net.channel(ci).id);
    return ids;
}

bool is_loopless(const Network& net, const Route& route) {
    std::vector<NodeIndex> nodes{route.source};
    for (std::uint32_t ci : route.channels) nodes.push_back(net.channel(ci).dst);
    std::sort(nodes.begin(), nodes.end());
    return std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end();
}

}  // namespace

std::vector<ServerRole> assign_servers(const Network& net, const ServerStrategy& strategy,
                                       std::uint64_t seed) {
    const std::size_t n = net.node_count();
    std::vector<NodeIndex> chosen;
    switch (strategy.kind) {
        case ServerStrategy::Fraction: {
            if (strategy.fraction < 0.0 || strategy.fraction > 1.0)
                throw GraphError("server fraction out of [0,1]");
            std::size_t count =
                static_cast<std::size_t>(std::floor(strategy.fraction * static_cast<double>(n) + 1e-9));
            std::vector<NodeIndex> all(n);
            for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<NodeIndex>(i);
            RngStream rng(seed, "server-assignment");
            rng.shuffle(all);
            chosen.assign(all.begin(), all.begin() + count);
            break;
        }
        case ServerStrategy::TopDegree: {
            if (strategy.top_k > n) throw GraphError("top-k exceeds node count");
            std::vector<std::pair<std::size_t, NodeIndex>> deg;
            deg.reserve(n);
            std::vector<std::size_t> in_deg(n, 0);
            for (const Channel& ch : net.channels()) in_deg[ch.dst]++;
            for (std::size_t v = 0; v < n; ++v)
                deg.emplace_back(net.out_channels(static_cast<NodeIndex>(v)).size() + in_deg[v],
                                 static_cast<NodeIndex>(v));
            std::sort(deg.begin(), deg.end(), [](const auto& a, const auto& b) {
                if (a.first != b.first) return a.first > b.first;
                return a.second < b.second;
            });
            for (std::size_t i = 0; i < strategy.top_k; ++i) chosen.push_back(deg[i].second);
            break;
        }
        case ServerStrategy::Explicit:
            chosen = strategy.nodes;
            for (NodeIndex v : chosen)
                if (v >= n) throw GraphError("explicit server node out of range");
            break;
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<ServerRole> roles;
    roles.reserve(chosen.size());
    for (NodeIndex v : chosen) roles.push_back(ServerRole{v, ServerKind::Trampoline, {}});
    return roles;
}

ServerRole build_partial_cache(const Network& net, NodeIndex node, std::size_t cache_size,
                               std::uint64_t seed, Msat amount) {
    ServerRole role{node, ServerKind::Partial, {}};
    std::vector<NodeIndex> others;
    for (std::size_t v = 0; v < net.node_count(); ++v)
        if (v != node) others.push_back(static_cast<NodeIndex>(v));
    RngStream rng(seed, "pn-cache", node);
    rng.shuffle(others);
    if (others.size() > cache_size) others.resize(cache_size);

    auto sp = shortest_path_single_source(net, node, amount);
    for (NodeIndex t : others) {
        auto route = sp.route_to(net, node, t);
        if (route) role.cache.emplace(t, std::move(*route));
    }
    return role;
}

std::vector<WeightedRoute> tn_answer(const Network& net, NodeIndex tn, NodeIndex s, NodeIndex t,
                                     Msat amount, std::size_t k, std::size_t offset) {
    // Tie-complete legs keep the combined ranking prefix-stable when later
    // pages are requested with a larger leg budget.
    const std::size_t want = offset + k;
    auto legs_in = k_shortest_paths(net, s, tn, want, amount, true);
    auto legs_out = k_shortest_paths(net, tn, t, want, amount, true);

    struct Cand {
        Msat weight;
        std::vector<ChannelId> ids;
        Route route;
        bool operator<(const Cand& o) const {
            if (weight != o.weight) return weight < o.weight;
            return ids < o.ids;
        }
    };
    std::vector<Cand> cands;
    for (const WeightedRoute& a : legs_in) {
        for (const WeightedRoute& b : legs_out) {
            Route full{s, t, a.route.channels};
            full.channels.insert(full.channels.end(), b.route.channels.begin(),
                                 b.route.channels.end());
            if (!is_loopless(net, full)) continue;
            cands.push_back({a.weight + b.weight, id_sequence(net, full.channels), std::move(full)});
        }
    }
    std::sort(cands.begin(), cands.end());
    std::vector<WeightedRoute> out;
    for (std::size_t i = offset; i < cands.size() && out.size() < k; ++i)
        out.push_back({std::move(cands[i].route), cands[i].weight});
    return out;
}

std::vector<WeightedRoute> pn_answer(const Network& net, const ServerRole& pn, NodeIndex s,
                                     NodeIndex t, Msat amount, std::size_t k) {
    std::vector<WeightedRoute> out;
    if (k == 0) return out;
    auto it = pn.cache.find(t);
    if (it == pn.cache.end()) return out;

    auto leg = shortest_path_single_source(net, s, amount).route_to(net, s, pn.node);
    if (!leg) return out;
    Route full{s, t, leg->channels};
    full.channels.insert(full.channels.end(), it->second.channels.begin(),
                         it->second.channels.end());
    if (!is_loopless(net, full)) return out;
    Msat w = route_weight(net, full, amount);
    out.push_back({std::move(full), w});
    return out;
}

std::optional<WeightedRoute> altruistic_answer(const Network& net, NodeIndex s, NodeIndex t,
                                               Msat amount) {
    auto sp = shortest_path_single_source(net, s, amount);
    auto route = sp.route_to(net, s, t);
    if (!route) return std::nullopt;
    return WeightedRoute{std::move(*route), sp.dist[t]};
}

std::vector<NodeIndex> server_query_order(const Network& net,
                                          const std::vector<ServerRole>& servers,
                                          const WalletPolicy& policy, NodeIndex s) {
    auto nbhd = neighborhood(net, s, policy.neighborhood_h, policy.undirected_neighborhood);
    std::vector<NodeIndex> in_range;
    for (const ServerRole& srv : servers)
        if (std::binary_search(nbhd.begin(), nbhd.end(), srv.node)) in_range.push_back(srv.node);
    std::sort(in_range.begin(), in_range.end());
    RngStream rng(policy.order_seed, "server-order", s);
    rng.shuffle(in_range);
    return in_range;
}

DiscoveryOutcome discover_route(const Network& net, const std::vector<ServerRole>& servers,
                                const WalletPolicy& policy, NodeIndex s, NodeIndex t, Msat amount,
                                const AvailabilityModel& model, Episode& episode,
                                DiscoveryMode mode, AnswerCache* cache) {
    if (s == t) throw GraphError("discover_route requires s != t");
    DiscoveryOutcome outcome;
    std::vector<NodeIndex> order = server_query_order(net, servers, policy, s);
    if (order.empty()) {
        outcome.no_server = true;
        return outcome;
    }

    std::unordered_map<NodeIndex, const ServerRole*> by_node;
    for (const ServerRole& srv : servers) by_node[srv.node] = &srv;

    auto note_aware = [&](NodeIndex v) {
        if (v != s && v != t) outcome.aware_nodes.insert(v);
    };
    auto compute = [&](const ServerRole& srv, std::size_t offset) {
        switch (srv.kind) {
            case ServerKind::Trampoline:
                return tn_answer(net, srv.node, s, t, amount, policy.routes_per_server, offset);
            case ServerKind::Partial:
                return pn_answer(net, srv, s, t, amount, policy.routes_per_server);
            case ServerKind::Altruistic: {
                std::vector<WeightedRoute> out;
                if (auto best = altruistic_answer(net, s, t, amount)) out.push_back(std::move(*best));
                return out;
            }
        }
        return std::vector<WeightedRoute>{};
    };
    auto query = [&](const ServerRole& srv, std::size_t offset) {
        outcome.queries_issued++;
        note_aware(srv.node);
        if (!cache) return compute(srv, offset);
        AnswerKey key{srv.node, s, t, offset};
        auto it = cache->find(key);
        if (it == cache->end()) it = cache->emplace(key, compute(srv, offset)).first;
        return it->second;  // copy; callers may move routes out of their batch
    };

    if (mode == DiscoveryMode::Efficiency) {
        std::optional<WeightedRoute> best;
        std::vector<ChannelId> best_ids;
        for (NodeIndex v : order) {
            if (outcome.queries_issued >= policy.max_queries) break;
            auto answers = query(*by_node[v], 0);
            for (WeightedRoute& wr : answers) {
                auto ids = id_sequence(net, wr.route.channels);
                if (!best || wr.weight < best->weight ||
                    (wr.weight == best->weight && ids < best_ids)) {
                    best = std::move(wr);
                    best_ids = std::move(ids);
                }
            }
        }
        if (best) {
            outcome.success = true;
            outcome.weight = best->weight;
            outcome.route = std::move(best->route);
        }
    } else {
        // Page through each server's candidates in passes; a server is
        // exhausted once it returns a short batch.
        std::unordered_map<NodeIndex, std::size_t> offsets;
        std::unordered_map<NodeIndex, bool> exhausted;
        bool progress = true;
        while (!outcome.success && progress && outcome.queries_issued < policy.max_queries) {
            progress = false;
            for (NodeIndex v : order) {
                if (outcome.success || outcome.queries_issued >= policy.max_queries) break;
                if (exhausted[v]) continue;
                const ServerRole& srv = *by_node[v];
                std::size_t offset = offsets[v];
                auto answers = query(srv, offset);
                progress = true;
                offsets[v] = offset + policy.routes_per_server;
                if (answers.size() < policy.routes_per_server ||
                    srv.kind != ServerKind::Trampoline)
                    exhausted[v] = true;
                for (WeightedRoute& wr : answers) {
                    outcome.candidates_tried++;
                    if (route_available(net, wr.route, amount, model, episode)) {
                        outcome.success = true;
                        outcome.weight = wr.weight;
                        outcome.route = std::move(wr.route);
                        break;
                    }
                }
            }
        }
    }

    if (outcome.route)
        for (NodeIndex v : outcome.route->intermediates(net)) note_aware(v);
    return outcome;
}

}  // namespace ofnet
