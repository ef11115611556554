#include "ofnet/availability.hpp"

#include <cmath>

namespace ofnet {

bool channel_accepts(const Channel& ch, Msat amount, const AvailabilityModel& model, double draw) {
    switch (model.kind) {
        case AvailKind::AlwaysAvailable:
        case AvailKind::BlockedSchedule:
            return true;
        case AvailKind::Bernoulli:
            return draw < model.p;
        case AvailKind::UniformLiquidity: {
            // Occupied liquidity in whole msat; acceptance compared in
            // exact integer arithmetic.
            double locked_f = draw * static_cast<double>(amount) * model.factor;
            Msat locked = static_cast<Msat>(std::floor(locked_f));
            return ch.capacity - locked >= amount;
        }
    }
    return false;
}

bool route_available(const Network& net, const Route& route, Msat amount,
                     const AvailabilityModel& model, Episode& episode) {
    if (model.kind == AvailKind::BlockedSchedule) {
        std::size_t index = episode.presented++;
        return model.blocked.find(index) == model.blocked.end();
    }
    episode.presented++;
    for (std::uint32_t ci : route.channels) {
        double v = episode.draw(model, ci);
        if (!channel_accepts(net.channel(ci), amount, model, v)) return false;
    }
    return true;
}

}  // namespace ofnet
