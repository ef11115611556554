#include "ofnet/pathing.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace ofnet {

namespace {

// Channel-id sequence used for deterministic tie-breaking.
std::vector<ChannelId> id_sequence(const Network& net, const std::vector<std::uint32_t>& chans) {
    std::vector<ChannelId> ids;
    ids.reserve(chans.size());
    for (std::uint32_t ci : chans) ids.push_back(net.channel(ci).id);
    return ids;
}

}  // namespace

std::optional<Route> DistanceMatrix::reconstruct(const Network& net, NodeIndex s, NodeIndex t,
                                                 Msat amount) const {
    if (at(s, t) == kInfWeight) return std::nullopt;
    Route route{s, t, {}};
    NodeIndex at_node = s;
    while (at_node != t) {
        NodeIndex nxt = next_hop[at_node * n + t];
        // Minimum-weight parallel channel, ties to the smallest id.
        std::uint32_t best = UINT32_MAX;
        Msat best_w = kInfWeight;
        for (std::uint32_t ci : net.out_channels(at_node)) {
            const Channel& ch = net.channel(ci);
            if (ch.dst != nxt) continue;
            Msat w = channel_weight(ch, amount);
            if (w < best_w || (w == best_w && (best == UINT32_MAX || ch.id < net.channel(best).id))) {
                best = ci;
                best_w = w;
            }
        }
        route.channels.push_back(best);
        at_node = nxt;
    }
    return route;
}

DistanceMatrix all_pairs_shortest(const Network& net, Msat amount) {
    const std::size_t n = net.node_count();
    DistanceMatrix m;
    m.n = n;
    m.dist.assign(n * n, kInfWeight);
    m.next_hop.assign(n * n, kNoNode);
    for (std::size_t v = 0; v < n; ++v) {
        m.dist[v * n + v] = 0;
        m.next_hop[v * n + v] = static_cast<NodeIndex>(v);
    }
    for (const Channel& ch : net.channels()) {
        Msat w = channel_weight(ch, amount);
        if (w < m.dist[ch.src * n + ch.dst]) {
            m.dist[ch.src * n + ch.dst] = w;
            m.next_hop[ch.src * n + ch.dst] = ch.dst;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            Msat dik = m.dist[i * n + k];
            if (dik == kInfWeight) continue;
            const Msat* row_k = &m.dist[k * n];
            Msat* row_i = &m.dist[i * n];
            for (std::size_t j = 0; j < n; ++j) {
                if (row_k[j] == kInfWeight) continue;
                Msat cand = dik + row_k[j];
                if (cand < row_i[j]) {
                    row_i[j] = cand;
                    m.next_hop[i * n + j] = m.next_hop[i * n + k];
                }
            }
        }
    }
    return m;
}

namespace {

// Dijkstra over a masked graph. blocked_nodes/blocked_channels may be empty.
SingleSourceResult dijkstra(const Network& net, NodeIndex s, Msat amount,
                            const std::vector<bool>* blocked_nodes,
                            const std::set<std::uint32_t>* blocked_channels) {
    const std::size_t n = net.node_count();
    SingleSourceResult r;
    r.dist.assign(n, kInfWeight);
    r.parent.assign(n, UINT32_MAX);
    if (blocked_nodes && (*blocked_nodes)[s]) return r;
    r.dist[s] = 0;

    using Item = std::pair<Msat, NodeIndex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.emplace(0, s);
    std::vector<bool> done(n, false);
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        for (std::uint32_t ci : net.out_channels(u)) {
            if (blocked_channels && blocked_channels->count(ci)) continue;
            const Channel& ch = net.channel(ci);
            if (blocked_nodes && (*blocked_nodes)[ch.dst]) continue;
            Msat nd = d + channel_weight(ch, amount);
            if (nd < r.dist[ch.dst]) {
                r.dist[ch.dst] = nd;
                r.parent[ch.dst] = ci;
                pq.emplace(nd, ch.dst);
            }
        }
    }
    return r;
}

}  // namespace

std::optional<Route> SingleSourceResult::route_to(const Network& net, NodeIndex s,
                                                  NodeIndex t) const {
    if (dist[t] == kInfWeight) return std::nullopt;
    Route route{s, t, {}};
    NodeIndex at = t;
    while (at != s) {
        std::uint32_t ci = parent[at];
        route.channels.push_back(ci);
        at = net.channel(ci).src;
    }
    std::reverse(route.channels.begin(), route.channels.end());
    return route;
}

SingleSourceResult shortest_path_single_source(const Network& net, NodeIndex s, Msat amount) {
    return dijkstra(net, s, amount, nullptr, nullptr);
}

HopLimitedDistances hop_limited_distances(const Network& net, unsigned h_max, Msat amount) {
    const std::size_t n = net.node_count();
    HopLimitedDistances result;
    result.n = n;

    std::vector<Msat> d1(n * n, kInfWeight);
    for (std::size_t v = 0; v < n; ++v) d1[v * n + v] = 0;
    for (const Channel& ch : net.channels()) {
        Msat w = channel_weight(ch, amount);
        d1[ch.src * n + ch.dst] = std::min(d1[ch.src * n + ch.dst], w);
    }
    result.per_hop.push_back(d1);
    for (unsigned h = 2; h <= h_max; ++h) {
        const std::vector<Msat>& prev = result.per_hop.back();
        std::vector<Msat> cur(n * n, kInfWeight);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                Msat pik = prev[i * n + k];
                if (pik == kInfWeight) continue;
                const Msat* row_k = &d1[k * n];
                Msat* row_i = &cur[i * n];
                for (std::size_t j = 0; j < n; ++j) {
                    if (row_k[j] == kInfWeight) continue;
                    Msat cand = pik + row_k[j];
                    if (cand < row_i[j]) row_i[j] = cand;
                }
            }
        }
        result.per_hop.push_back(std::move(cur));
    }
    return result;
}

namespace {

struct Candidate {
    Msat weight;
    std::vector<ChannelId> ids;
    Route route;

    bool operator<(const Candidate& o) const {
        if (weight != o.weight) return weight < o.weight;
        return ids < o.ids;
    }
};

}  // namespace

std::vector<WeightedRoute> k_shortest_paths(const Network& net, NodeIndex s, NodeIndex t,
                                            std::size_t k, Msat amount, bool complete_ties) {
    std::vector<WeightedRoute> out;
    if (k == 0) return out;
    if (s == t) {
        out.push_back({Route{s, t, {}}, 0});
        return out;
    }

    auto first = shortest_path_single_source(net, s, amount).route_to(net, s, t);
    if (!first) return out;

    std::vector<Candidate> found;
    std::set<Candidate> pool;
    std::set<std::vector<std::uint32_t>> known;
    Candidate c0{route_weight(net, *first, amount), id_sequence(net, first->channels), *first};
    pool.insert(c0);
    known.insert(first->channels);

    // Extraction continues past k until the pool's best exceeds the k-th
    // weight, so equal-weight routes are ranked by channel-id sequence
    // exactly. Hard cap keeps pathological tie classes bounded.
    const std::size_t extract_cap = std::max<std::size_t>(4096, k * 4);
    while (!pool.empty() && found.size() < extract_cap) {
        if (found.size() >= k && pool.begin()->weight > found[k - 1].weight) break;
        Candidate cur = *pool.begin();
        pool.erase(pool.begin());
        found.push_back(cur);

        // Spur from every prefix of the current route.
        std::vector<bool> blocked_nodes(net.node_count(), false);
        NodeIndex spur = s;
        std::vector<std::uint32_t> root;
        Msat root_weight = 0;
        for (std::size_t i = 0; i <= cur.route.channels.size(); ++i) {
            std::set<std::uint32_t> blocked_channels;
            for (const Candidate& prev : found) {
                if (prev.route.channels.size() > i &&
                    std::equal(root.begin(), root.end(), prev.route.channels.begin()))
                    blocked_channels.insert(prev.route.channels[i]);
            }
            if (!blocked_channels.empty()) {
                auto spur_nodes = blocked_nodes;
                spur_nodes[spur] = false;
                auto sp = dijkstra(net, spur, amount, &spur_nodes, &blocked_channels);
                auto tail = sp.route_to(net, spur, t);
                if (tail) {
                    Route total{s, t, root};
                    total.channels.insert(total.channels.end(), tail->channels.begin(),
                                          tail->channels.end());
                    if (known.insert(total.channels).second) {
                        Msat w = root_weight + sp.dist[t];
                        pool.insert({w, id_sequence(net, total.channels), std::move(total)});
                    }
                }
            }
            if (i == cur.route.channels.size()) break;
            blocked_nodes[spur] = true;
            std::uint32_t ci = cur.route.channels[i];
            root.push_back(ci);
            root_weight += channel_weight(net.channel(ci), amount);
            spur = net.channel(ci).dst;
        }
    }

    std::sort(found.begin(), found.end());
    if (found.size() > k) {
        std::size_t cut = k;
        if (complete_ties)
            while (cut < found.size() && found[cut].weight == found[k - 1].weight) ++cut;
        found.resize(cut);
    }
    for (Candidate& c : found) out.push_back({std::move(c.route), c.weight});
    return out;
}

std::vector<WeightedRoute> enumerate_simple_routes(const Network& net, NodeIndex s, NodeIndex t,
                                                   Msat amount) {
    std::vector<Candidate> found;
    if (s == t) {
        found.push_back({0, {}, Route{s, t, {}}});
    } else {
        std::vector<bool> on_path(net.node_count(), false);
        std::vector<std::uint32_t> stack;
        Msat weight = 0;

        auto dfs = [&](auto&& self, NodeIndex u) -> void {
            on_path[u] = true;
            for (std::uint32_t ci : net.out_channels(u)) {
                const Channel& ch = net.channel(ci);
                Msat w = channel_weight(ch, amount);
                if (ch.dst == t) {
                    stack.push_back(ci);
                    Route r{s, t, stack};
                    found.push_back({weight + w, id_sequence(net, stack), std::move(r)});
                    stack.pop_back();
                } else if (!on_path[ch.dst]) {
                    stack.push_back(ci);
                    weight += w;
                    self(self, ch.dst);
                    weight -= w;
                    stack.pop_back();
                }
            }
            on_path[u] = false;
        };
        on_path[t] = true;  // t only ever terminates a route
        dfs(dfs, s);
    }
    std::sort(found.begin(), found.end());
    std::vector<WeightedRoute> out;
    out.reserve(found.size());
    for (Candidate& c : found) out.push_back({std::move(c.route), c.weight});
    return out;
}

}  // namespace ofnet
