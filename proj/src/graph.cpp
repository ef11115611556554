#include "ofnet/graph.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace ofnet {

Msat channel_weight(const Channel& ch, Msat amount) {
    // Proportional term in 128-bit to hold worst-case snapshot values.
    __int128 prop = static_cast<__int128>(amount) * ch.proportional_rate / 1000000;
    return ch.base_fee + static_cast<Msat>(prop);
}

Network Network::build(std::vector<std::string> node_keys, std::vector<Channel> channels) {
    Network net;
    net.node_keys_ = std::move(node_keys);
    const NodeIndex n = static_cast<NodeIndex>(net.node_keys_.size());

    std::unordered_set<ChannelId> seen_ids;
    seen_ids.reserve(channels.size());
    for (const Channel& ch : channels) {
        if (!seen_ids.insert(ch.id).second)
            throw DuplicateChannelError("duplicate channel id " + std::to_string(ch.id));
        if (ch.src >= n || ch.dst >= n)
            throw DanglingEndpointError("channel " + std::to_string(ch.id) +
                                        " references unknown node");
        if (ch.src == ch.dst)
            throw SelfLoopError("channel " + std::to_string(ch.id) + " is a self-loop");
        if (ch.base_fee < 0 || ch.proportional_rate < 0 || ch.capacity < 0)
            throw GraphError("channel " + std::to_string(ch.id) + " has negative fee/capacity");
    }

    net.channels_ = std::move(channels);
    net.out_.assign(n, {});
    for (std::uint32_t i = 0; i < net.channels_.size(); ++i)
        net.out_[net.channels_[i].src].push_back(i);
    return net;
}

std::vector<NodeIndex> Route::intermediates(const Network& net) const {
    std::vector<NodeIndex> out;
    for (std::size_t i = 0; i + 1 < channels.size(); ++i)
        out.push_back(net.channel(channels[i]).dst);
    return out;
}

bool validate_route(const Network& net, const Route& route, NodeIndex s, NodeIndex t) {
    if (route.source != s || route.target != t) return false;
    if (route.channels.empty()) return s == t;
    NodeIndex at = s;
    for (std::uint32_t ci : route.channels) {
        if (ci >= net.channel_count()) return false;
        const Channel& ch = net.channel(ci);
        if (ch.src != at) return false;
        at = ch.dst;
    }
    return at == t;
}

Msat route_weight(const Network& net, const Route& route, Msat amount) {
    if (!validate_route(net, route, route.source, route.target))
        throw GraphError("route is not contiguous from its source to its target");
    Msat total = 0;
    for (std::uint32_t ci : route.channels) total += channel_weight(net.channel(ci), amount);
    return total;
}

std::vector<NodeIndex> neighborhood(const Network& net, NodeIndex v, unsigned h, bool undirected) {
    std::vector<std::vector<std::uint32_t>> in;
    if (undirected) {
        in.assign(net.node_count(), {});
        for (std::uint32_t i = 0; i < net.channel_count(); ++i)
            in[net.channel(i).dst].push_back(i);
    }

    std::vector<unsigned> depth(net.node_count(), 0);
    std::vector<bool> seen(net.node_count(), false);
    seen[v] = true;
    std::deque<NodeIndex> frontier{v};
    std::vector<NodeIndex> result;
    while (!frontier.empty()) {
        NodeIndex u = frontier.front();
        frontier.pop_front();
        if (depth[u] >= h) continue;
        auto visit = [&](NodeIndex w) {
            if (seen[w]) return;
            seen[w] = true;
            depth[w] = depth[u] + 1;
            frontier.push_back(w);
            result.push_back(w);
        };
        for (std::uint32_t ci : net.out_channels(u)) visit(net.channel(ci).dst);
        if (undirected)
            for (std::uint32_t ci : in[u]) visit(net.channel(ci).src);
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace ofnet
