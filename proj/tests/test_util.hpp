#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ofnet/graph.hpp"
#include "ofnet/rng.hpp"

namespace ofnet::testutil {

// Random sparse digraph with weights in [0, max_base]; density is average
// out-degree. Parallel channels are possible and intended.
inline Network random_network(std::size_t n, double density, Msat max_base, std::uint64_t seed) {
    RngStream rng(seed, "test-random-network");
    std::vector<std::string> keys;
    for (std::size_t i = 0; i < n; ++i) keys.push_back("n" + std::to_string(i));
    std::vector<Channel> channels;
    std::size_t m = static_cast<std::size_t>(density * static_cast<double>(n));
    for (std::size_t i = 0; i < m; ++i) {
        NodeIndex a = static_cast<NodeIndex>(rng.next_below(n));
        NodeIndex b = static_cast<NodeIndex>(rng.next_below(n));
        if (a == b) continue;
        Channel ch;
        ch.id = channels.size();
        ch.src = a;
        ch.dst = b;
        ch.base_fee = static_cast<Msat>(rng.next_below(static_cast<std::uint64_t>(max_base) + 1));
        ch.proportional_rate = 0;
        ch.capacity = 1000000000;
        channels.push_back(ch);
    }
    return Network::build(std::move(keys), std::move(channels));
}

// Spearman rank correlation; average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        std::size_t i = 0;
        while (i < idx.size()) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
            double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
            i = j + 1;
        }
        return r;
    };
    auto rx = ranks(x), ry = ranks(y);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(rx.size());
    my /= static_cast<double>(ry.size());
    double num = 0, dx = 0, dy = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0 || dy == 0) return 0.0;
    return num / std::sqrt(dx * dy);
}

}  // namespace ofnet::testutil
