#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ofnet/discovery.hpp"
#include "ofnet/graph.hpp"
#include "ofnet/rng.hpp"

namespace ofnet {

enum class WorkloadKind { AllPairs, PowerLawActivity };

// Transaction demand over ordered node pairs. AllPairs enumerates; the
// power-law workload samples sources and targets proportionally to a
// per-node activity level (consecutive groups of 100 with activity 2^-i).
struct Workload {
    WorkloadKind kind = WorkloadKind::AllPairs;
    std::size_t n = 0;
    std::vector<double> activity;  // PowerLaw only, per node
};

Workload gen_workload(const Network& net, WorkloadKind kind, std::uint64_t seed);

constexpr std::size_t kPowerLawGroupSize = 100;

// Draws s and t independently proportional to activity, rejecting s == t.
std::pair<NodeIndex, NodeIndex> sample_pair(const Workload& workload, RngStream& rng);

// found / optimal; with a zero optimal weight: 1 when found is also 0,
// +infinity otherwise.
double stretch(Msat found_weight, Msat optimal_weight);

// |aware nodes| over the optimal route's intermediate count (floored at 1);
// endpoints are excluded on both sides.
double leak_rate(const DiscoveryOutcome& outcome, const Network& net,
                 const Route& optimal_route);

// Closed-form success lower bound for high-degree querying on a scale-free
// network, evaluated with natural logarithms.
double scale_free_success_prob(std::size_t n, double p, unsigned q);

// Probability that one of the top-k highest-degree nodes lies on the optimal
// route: 1 - 2^-k.
double tn_optimal_hit_prob(unsigned k);

struct MetricsRecord {
    NodeIndex source = 0;
    NodeIndex target = 0;
    Msat optimal_weight = kInfWeight;
    std::optional<Msat> found_weight;
    std::optional<double> stretch;
    unsigned queries_issued = 0;
    unsigned candidates_tried = 0;
    double leak = 0.0;
    bool success = false;
};

}  // namespace ofnet
