#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "ofnet/graph.hpp"

namespace ofnet {

// Capacity assigned to synthetic channels; large enough to be unconstraining.
constexpr Msat kDefaultSyntheticCapacity = 1000000000;

// Ring of n nodes: one channel to the ring successor plus one to a random
// other node, all with fee 1.
Network gen_sparse_ring(std::size_t n, std::uint64_t seed,
                        Msat capacity = kDefaultSyntheticCapacity);

// Preferential attachment with m_attach undirected links per arriving node;
// every undirected link becomes two directed channels of weight 1.
Network gen_scale_free(std::size_t n, std::size_t m_attach, std::uint64_t seed,
                       Msat capacity = kDefaultSyntheticCapacity);

enum class AdversarialKind { Lemma1, Lemma2, Lemma3 };

struct AdversarialSpec {
    AdversarialKind kind;
    unsigned q = 1;  // query budget the construction defends against
    unsigned m = 1;  // adversarial magnitude
};

struct GeneratedTopology {
    Network network;
    NodeIndex source = 0;
    std::vector<NodeIndex> tn_set;
    // Maps the RDA's full TN query-order permutation to the adversarial target.
    std::function<NodeIndex(const std::vector<NodeIndex>&)> target_chooser;
    // Lemma2 only: presentation indices whose candidate routes fail.
    std::set<std::size_t> blocked_schedule;
};

GeneratedTopology gen_adversarial(const AdversarialSpec& spec);

}  // namespace ofnet
