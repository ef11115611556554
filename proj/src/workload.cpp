#include "ofnet/workload.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ofnet {

Workload gen_workload(const Network& net, WorkloadKind kind, std::uint64_t seed) {
    Workload w;
    w.kind = kind;
    w.n = net.node_count();
    if (kind == WorkloadKind::PowerLawActivity) {
        if (w.n < kPowerLawGroupSize)
            throw GraphError("power-law workload needs at least one full group of 100 nodes");
        std::vector<NodeIndex> order(w.n);
        for (std::size_t i = 0; i < w.n; ++i) order[i] = static_cast<NodeIndex>(i);
        RngStream rng(seed, "workload-groups");
        rng.shuffle(order);
        w.activity.assign(w.n, 0.0);
        for (std::size_t i = 0; i < w.n; ++i) {
            std::size_t group = i / kPowerLawGroupSize;
            w.activity[order[i]] = std::pow(2.0, -static_cast<double>(group));
        }
    }
    return w;
}

std::pair<NodeIndex, NodeIndex> sample_pair(const Workload& workload, RngStream& rng) {
    if (workload.n < 2) throw GraphError("workload needs at least two nodes");
    auto draw_node = [&]() -> NodeIndex {
        if (workload.kind == WorkloadKind::AllPairs)
            return static_cast<NodeIndex>(rng.next_below(workload.n));
        double total = 0.0;
        for (double a : workload.activity) total += a;
        double x = rng.next_unit() * total;
        for (std::size_t i = 0; i < workload.n; ++i) {
            x -= workload.activity[i];
            if (x < 0.0) return static_cast<NodeIndex>(i);
        }
        return static_cast<NodeIndex>(workload.n - 1);
    };
    for (;;) {
        NodeIndex s = draw_node();
        NodeIndex t = draw_node();
        if (s != t) return {s, t};
    }
}

double stretch(Msat found_weight, Msat optimal_weight) {
    if (optimal_weight == kInfWeight) throw GraphError("stretch needs a finite optimal weight");
    if (optimal_weight == 0)
        return found_weight == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return static_cast<double>(found_weight) / static_cast<double>(optimal_weight);
}

double leak_rate(const DiscoveryOutcome& outcome, const Network& net,
                 const Route& optimal_route) {
    std::size_t optimal_intermediates = optimal_route.intermediates(net).size();
    std::size_t denom = optimal_intermediates == 0 ? 1 : optimal_intermediates;
    return static_cast<double>(outcome.aware_nodes.size()) / static_cast<double>(denom);
}

double scale_free_success_prob(std::size_t n, double p, unsigned q) {
    if (n < 3) throw GraphError("scale_free_success_prob needs n >= 3");
    if (p < 0.0 || p > 1.0) throw GraphError("p out of [0,1]");
    if (q < 1) throw GraphError("q must be >= 1");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    double ln_n = std::log(static_cast<double>(n));
    double diameter = ln_n / std::log(ln_n);
    double per_route = std::pow(p, 2.0 * diameter);
    double routes = static_cast<double>(n) * (1.0 - std::pow(2.0, -static_cast<double>(q)));
    return 1.0 - std::pow(1.0 - per_route, routes);
}

double tn_optimal_hit_prob(unsigned k) {
    return 1.0 - std::pow(2.0, -static_cast<double>(k));
}

}  // namespace ofnet
