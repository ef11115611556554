#pragma once

#include <cstdint>
#include <set>
#include <unordered_map>

#include "ofnet/graph.hpp"
#include "ofnet/rng.hpp"

namespace ofnet {

enum class AvailKind { AlwaysAvailable, Bernoulli, UniformLiquidity, BlockedSchedule };

struct AvailabilityModel {
    AvailKind kind = AvailKind::AlwaysAvailable;
    double p = 1.0;        // Bernoulli acceptance probability
    double factor = 0.0;   // UniformLiquidity occupation factor
    std::set<std::size_t> blocked;  // BlockedSchedule: presentation indices that fail
    std::uint64_t seed = 0;

    static AvailabilityModel always() { return {}; }
    static AvailabilityModel bernoulli(double p, std::uint64_t seed) {
        return {AvailKind::Bernoulli, p, 0.0, {}, seed};
    }
    static AvailabilityModel uniform_liquidity(double factor, std::uint64_t seed) {
        return {AvailKind::UniformLiquidity, 1.0, factor, {}, seed};
    }
    static AvailabilityModel blocked_schedule(std::set<std::size_t> blocked) {
        return {AvailKind::BlockedSchedule, 1.0, 0.0, std::move(blocked), 0};
    }
};

// Per-episode liquidity state. A channel's draw is made once per episode and
// reused across candidate routes; the presentation counter drives
// BlockedSchedule semantics.
struct Episode {
    std::uint64_t id = 0;
    std::size_t presented = 0;
    std::unordered_map<std::uint32_t, double> draws;

    double draw(const AvailabilityModel& model, std::uint32_t channel_idx) {
        auto it = draws.find(channel_idx);
        if (it != draws.end()) return it->second;
        double v = unit_draw(model.seed, id, channel_idx);
        draws.emplace(channel_idx, v);
        return v;
    }
};

bool channel_accepts(const Channel& ch, Msat amount, const AvailabilityModel& model, double draw);

// Conjunction of channel_accepts over the route; for BlockedSchedule the
// route's presentation index (episode-global) decides instead.
bool route_available(const Network& net, const Route& route, Msat amount,
                     const AvailabilityModel& model, Episode& episode);

}  // namespace ofnet
