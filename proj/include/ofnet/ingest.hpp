#pragma once

#include <string>
#include <string_view>

#include "ofnet/graph.hpp"

namespace ofnet {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parse a `describegraph`-style snapshot document into a Network. One node
// per listed public key; each edge contributes up to two directed channels,
// one per enabled policy side. Capacities are satoshi and converted to msat.
Network parse_describegraph(std::string_view text);

Network load_describegraph_file(const std::string& path);

}  // namespace ofnet
