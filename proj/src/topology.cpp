#include "ofnet/topology.hpp"

#include <algorithm>
#include <string>

#include "ofnet/rng.hpp"

namespace ofnet {

namespace {

std::vector<std::string> numbered_nodes(std::size_t n) {
    std::vector<std::string> keys;
    keys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) keys.push_back("n" + std::to_string(i));
    return keys;
}

Channel unit_channel(ChannelId id, NodeIndex src, NodeIndex dst, Msat base_fee, Msat capacity) {
    return Channel{id, src, dst, base_fee, 0, capacity};
}

}  // namespace

Network gen_sparse_ring(std::size_t n, std::uint64_t seed, Msat capacity) {
    if (n < 3) throw GraphError("sparse ring needs n >= 3");
    RngStream rng(seed, "sparse-ring");
    std::vector<Channel> channels;
    channels.reserve(2 * n);
    ChannelId next_id = 0;
    for (std::size_t i = 0; i < n; ++i) {
        NodeIndex succ = static_cast<NodeIndex>((i + 1) % n);
        channels.push_back(unit_channel(next_id++, static_cast<NodeIndex>(i), succ, 1, capacity));
        NodeIndex other;
        do {
            other = static_cast<NodeIndex>(rng.next_below(n));
        } while (other == i || other == succ);
        channels.push_back(unit_channel(next_id++, static_cast<NodeIndex>(i), other, 1, capacity));
    }
    return Network::build(numbered_nodes(n), std::move(channels));
}

Network gen_scale_free(std::size_t n, std::size_t m_attach, std::uint64_t seed, Msat capacity) {
    if (m_attach < 1 || n <= m_attach) throw GraphError("scale-free needs n > m_attach >= 1");
    RngStream rng(seed, "scale-free");

    // Endpoint multiset: sampling from it is proportional to degree.
    std::vector<NodeIndex> endpoints;
    std::vector<Channel> channels;
    ChannelId next_id = 0;
    auto add_link = [&](NodeIndex a, NodeIndex b) {
        channels.push_back(unit_channel(next_id++, a, b, 1, capacity));
        channels.push_back(unit_channel(next_id++, b, a, 1, capacity));
        endpoints.push_back(a);
        endpoints.push_back(b);
    };

    for (std::size_t t = m_attach; t < n; ++t) {
        std::vector<NodeIndex> targets;
        while (targets.size() < m_attach) {
            NodeIndex cand;
            if (endpoints.empty())
                cand = static_cast<NodeIndex>(rng.next_below(t));
            else
                cand = endpoints[rng.next_below(endpoints.size())];
            if (cand == t) continue;
            if (std::find(targets.begin(), targets.end(), cand) != targets.end()) continue;
            targets.push_back(cand);
        }
        for (NodeIndex b : targets) add_link(static_cast<NodeIndex>(t), b);
    }
    return Network::build(numbered_nodes(n), std::move(channels));
}

namespace {

GeneratedTopology make_lemma1(unsigned q, unsigned m) {
    // Source center; q+1 TNs at weight 0; each TN reaches one unique outer
    // node at weight 1; outer nodes form a weight-M clique.
    const unsigned k = q + 1;
    const NodeIndex s = 0;
    auto tn = [&](unsigned i) { return static_cast<NodeIndex>(1 + i); };
    auto outer = [&](unsigned i) { return static_cast<NodeIndex>(1 + k + i); };

    std::vector<Channel> channels;
    ChannelId id = 0;
    for (unsigned i = 0; i < k; ++i)
        channels.push_back(unit_channel(id++, s, tn(i), 0, kDefaultSyntheticCapacity));
    for (unsigned i = 0; i < k; ++i)
        channels.push_back(unit_channel(id++, tn(i), outer(i), 1, kDefaultSyntheticCapacity));
    for (unsigned i = 0; i < k; ++i)
        for (unsigned j = 0; j < k; ++j)
            if (i != j)
                channels.push_back(
                    unit_channel(id++, outer(i), outer(j), m, kDefaultSyntheticCapacity));

    GeneratedTopology topo;
    topo.network = Network::build(numbered_nodes(1 + 2 * k), std::move(channels));
    topo.source = s;
    for (unsigned i = 0; i < k; ++i) topo.tn_set.push_back(tn(i));
    topo.target_chooser = [k, q](const std::vector<NodeIndex>& order) -> NodeIndex {
        // Pigeonhole: some TN is absent from the first q queries.
        for (unsigned i = 0; i < k; ++i) {
            NodeIndex t = static_cast<NodeIndex>(1 + i);
            bool queried = false;
            for (std::size_t j = 0; j < order.size() && j < q; ++j)
                if (order[j] == t) queried = true;
            if (!queried) return static_cast<NodeIndex>(1 + k + i);
        }
        throw GraphError("lemma1 chooser: all TNs queried within budget");
    };
    return topo;
}

GeneratedTopology make_lemma2(unsigned m) {
    if (m < 2) throw GraphError("lemma2 needs M >= 2");
    // Clique nodes 0..m-1; node 0 is the TN adjacent to the source; the
    // target hangs off node 1.
    const NodeIndex s = static_cast<NodeIndex>(m);
    const NodeIndex t = static_cast<NodeIndex>(m + 1);
    std::vector<Channel> channels;
    ChannelId id = 0;
    for (unsigned i = 0; i < m; ++i)
        for (unsigned j = 0; j < m; ++j)
            if (i != j)
                channels.push_back(unit_channel(id++, i, j, 1, kDefaultSyntheticCapacity));
    channels.push_back(unit_channel(id++, s, 0, 1, kDefaultSyntheticCapacity));
    channels.push_back(unit_channel(id++, 1, t, 1, kDefaultSyntheticCapacity));

    GeneratedTopology topo;
    topo.network = Network::build(numbered_nodes(m + 2), std::move(channels));
    topo.source = s;
    topo.tn_set = {0};
    topo.target_chooser = [t](const std::vector<NodeIndex>&) { return t; };
    for (unsigned i = 0; i < m; ++i) topo.blocked_schedule.insert(i);
    return topo;
}

GeneratedTopology make_lemma3(unsigned m) {
    // Star: source center, M TNs, each TN connected to one sink target.
    const NodeIndex s = 0;
    std::vector<Channel> channels;
    ChannelId id = 0;
    for (unsigned i = 0; i < m; ++i) {
        NodeIndex tn = static_cast<NodeIndex>(1 + i);
        NodeIndex sink = static_cast<NodeIndex>(1 + m + i);
        channels.push_back(unit_channel(id++, s, tn, 1, kDefaultSyntheticCapacity));
        channels.push_back(unit_channel(id++, tn, sink, 1, kDefaultSyntheticCapacity));
    }
    GeneratedTopology topo;
    topo.network = Network::build(numbered_nodes(1 + 2 * m), std::move(channels));
    topo.source = s;
    for (unsigned i = 0; i < m; ++i) topo.tn_set.push_back(static_cast<NodeIndex>(1 + i));
    topo.target_chooser = [m](const std::vector<NodeIndex>& order) -> NodeIndex {
        if (order.size() < m) throw GraphError("lemma3 chooser: incomplete TN order");
        return order[m - 1] + static_cast<NodeIndex>(m);
    };
    return topo;
}

}  // namespace

GeneratedTopology gen_adversarial(const AdversarialSpec& spec) {
    if (spec.q < 1 || spec.m < 1) throw GraphError("adversarial spec needs q >= 1 and M >= 1");
    switch (spec.kind) {
        case AdversarialKind::Lemma1:
            return make_lemma1(spec.q, spec.m);
        case AdversarialKind::Lemma2:
            return make_lemma2(spec.m);
        case AdversarialKind::Lemma3:
            return make_lemma3(spec.m);
    }
    throw GraphError("unknown adversarial kind");
}

}  // namespace ofnet
