#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ofnet/discovery.hpp"
#include "ofnet/graph.hpp"
#include "ofnet/topology.hpp"
#include "ofnet/workload.hpp"

namespace ofnet {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TopologySpec {
    enum Kind { Ring, ScaleFree, Lemma1, Lemma2, Lemma3, Snapshot } kind = Ring;
    std::size_t n = 1000;
    std::size_t m_attach = 2;
    unsigned q = 2;   // adversarial constructions
    unsigned m = 5;
    Msat capacity = kDefaultSyntheticCapacity;
    std::string snapshot_path;
};

struct ExperimentConfig {
    TopologySpec topology;
    double tn_fraction = 0.05;
    std::size_t tn_top_k = 0;  // when nonzero, overrides tn_fraction
    WorkloadKind workload = WorkloadKind::AllPairs;

    std::vector<unsigned> h_list{2};
    std::vector<double> factor_list{1.0};
    std::vector<double> p_list;  // when nonempty, Bernoulli replaces UniformLiquidity
    std::vector<std::size_t> pn_count_list{0, 50};

    Msat amount = 1000000;
    unsigned trials = 1;
    unsigned max_queries = 10;
    unsigned routes_per_server = 5;
    std::size_t pn_cache_size = 50;
    std::uint64_t seed = 1;
    // 0 enumerates all ordered pairs (rejected above kAllPairsNodeLimit).
    std::size_t pair_sample = 0;
};

constexpr std::size_t kAllPairsNodeLimit = 1500;

// Builds the configured topology; lemma kinds return the full construction.
GeneratedTopology resolve_topology(const TopologySpec& spec, std::uint64_t seed);

// Portable edge list: one line per channel `src dst base_fee rate capacity`.
void write_edge_list(const Network& net, std::ostream& out);
Network read_edge_list(std::istream& in);

// Experiment families; each writes one CSV (metadata line, header, record
// rows, aggregate rows) and is byte-deterministic under (config, seed).
void run_neighborhood_cdf(const ExperimentConfig& config, std::ostream& out);
void run_efficiency(const ExperimentConfig& config, std::ostream& out);
void run_effectiveness(const ExperimentConfig& config, std::ostream& out);
void run_fee_effectiveness(const ExperimentConfig& config, std::ostream& out);
void run_partial_nodes(const ExperimentConfig& config, std::ostream& out);

struct LemmaCheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Verifies the adversarial constructions end to end and evaluates the
// analytic formulas; prints one pass/fail line per check.
std::vector<LemmaCheckResult> run_lemma_checks();
bool print_lemma_checks(std::ostream& out);

}  // namespace ofnet
