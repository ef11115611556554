#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ofnet {

using NodeIndex = std::uint32_t;
using ChannelId = std::uint64_t;
using Msat = std::int64_t;

constexpr Msat kInfWeight = std::numeric_limits<Msat>::max();
constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DuplicateChannelError : GraphError {
    using GraphError::GraphError;
};
struct DanglingEndpointError : GraphError {
    using GraphError::GraphError;
};
struct SelfLoopError : GraphError {
    using GraphError::GraphError;
};

struct Channel {
    ChannelId id = 0;
    NodeIndex src = 0;
    NodeIndex dst = 0;
    Msat base_fee = 0;
    std::int64_t proportional_rate = 0;  // msat per 1e6 msat forwarded
    Msat capacity = 0;
};

// Fee charged by a channel to forward `amount` msat, in exact integer msat
// with floor rounding of the proportional term.
Msat channel_weight(const Channel& ch, Msat amount);

// Immutable after construction; safe for concurrent reads.
class Network {
public:
    static Network build(std::vector<std::string> node_keys, std::vector<Channel> channels);

    std::size_t node_count() const { return node_keys_.size(); }
    std::size_t channel_count() const { return channels_.size(); }
    const std::string& node_key(NodeIndex v) const { return node_keys_[v]; }
    const Channel& channel(std::uint32_t idx) const { return channels_[idx]; }
    const std::vector<Channel>& channels() const { return channels_; }
    const std::vector<std::uint32_t>& out_channels(NodeIndex v) const { return out_[v]; }

private:
    std::vector<std::string> node_keys_;
    std::vector<Channel> channels_;
    std::vector<std::vector<std::uint32_t>> out_;
};

// An ordered walk of channel indices from source to target. The empty route
// (source == target) is valid and has weight 0.
struct Route {
    NodeIndex source = 0;
    NodeIndex target = 0;
    std::vector<std::uint32_t> channels;  // indices into Network::channels()

    std::size_t hop_count() const { return channels.size(); }
    // Intermediate nodes, excluding source and target.
    std::vector<NodeIndex> intermediates(const Network& net) const;
};

bool validate_route(const Network& net, const Route& route, NodeIndex s, NodeIndex t);

// Sum of member channel weights at `amount`. Throws GraphError on a
// non-contiguous route.
Msat route_weight(const Network& net, const Route& route, Msat amount);

// Nodes reachable from v within h directed hops, excluding v itself.
// With undirected=true channels are traversed in both directions.
std::vector<NodeIndex> neighborhood(const Network& net, NodeIndex v, unsigned h,
                                    bool undirected = false);

}  // namespace ofnet
