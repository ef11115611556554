#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ofnet/experiment.hpp"

namespace {

using namespace ofnet;

struct CliOptions {
    std::string topology = "ring";
    std::size_t n = 1000;
    std::size_t m_attach = 2;
    unsigned lemma_q = 2;
    unsigned lemma_m = 5;
    ExperimentConfig config;
    std::string pairs = "all";
    std::string workload = "all-pairs";
    std::string out_path;
};

void apply_common(CLI::App* cmd, CliOptions& opt) {
    // --h is a sweep axis, so the help flag keeps only its long form
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--topology", opt.topology,
                    "ring|scale-free|lemma1|lemma2|lemma3|snapshot:<path>");
    cmd->add_option("--n", opt.n, "node count for synthetic topologies");
    cmd->add_option("--m-attach", opt.m_attach, "links per arrival (scale-free)");
    cmd->add_option("--lemma-q", opt.lemma_q, "q parameter of adversarial constructions");
    cmd->add_option("--lemma-m", opt.lemma_m, "M parameter of adversarial constructions");
    cmd->add_option("--tn-fraction", opt.config.tn_fraction, "fraction of nodes acting as TNs");
    cmd->add_option("--tn-top-k", opt.config.tn_top_k, "pick the k highest-degree nodes as TNs");
    cmd->add_option("--h", opt.config.h_list, "neighborhood hop radii to sweep");
    cmd->add_option("--q", opt.config.max_queries, "query budget per discovery");
    cmd->add_option("--routes-per-tn", opt.config.routes_per_server, "candidates per TN query");
    cmd->add_option("--amount", opt.config.amount, "transaction size in msat");
    cmd->add_option("--capacity", opt.config.topology.capacity,
                    "channel capacity for synthetic topologies (msat)");
    cmd->add_option("--factor", opt.config.factor_list, "liquidity occupation factors to sweep");
    cmd->add_option("--p", opt.config.p_list, "Bernoulli acceptance probabilities to sweep");
    cmd->add_option("--trials", opt.config.trials, "trials per sweep point");
    cmd->add_option("--seed", opt.config.seed, "master seed");
    cmd->add_option("--pairs", opt.pairs, "all | sample:<N>");
    cmd->add_option("--workload", opt.workload, "all-pairs | power-law");
    cmd->add_option("--pn-counts", opt.config.pn_count_list, "partial-node counts to sweep");
    cmd->add_option("--pn-cache", opt.config.pn_cache_size, "cached targets per partial node");
    cmd->add_option("--out", opt.out_path, "output path (stdout when omitted)");
}

void finalize(CliOptions& opt) {
    TopologySpec& spec = opt.config.topology;
    if (opt.topology == "ring") {
        spec.kind = TopologySpec::Ring;
    } else if (opt.topology == "scale-free") {
        spec.kind = TopologySpec::ScaleFree;
    } else if (opt.topology == "lemma1") {
        spec.kind = TopologySpec::Lemma1;
    } else if (opt.topology == "lemma2") {
        spec.kind = TopologySpec::Lemma2;
    } else if (opt.topology == "lemma3") {
        spec.kind = TopologySpec::Lemma3;
    } else if (opt.topology.rfind("snapshot:", 0) == 0) {
        spec.kind = TopologySpec::Snapshot;
        spec.snapshot_path = opt.topology.substr(9);
    } else {
        throw ConfigError("unknown topology: " + opt.topology);
    }
    spec.n = opt.n;
    spec.m_attach = opt.m_attach;
    spec.q = opt.lemma_q;
    spec.m = opt.lemma_m;

    if (opt.pairs == "all") {
        opt.config.pair_sample = 0;
    } else if (opt.pairs.rfind("sample:", 0) == 0) {
        opt.config.pair_sample = std::stoull(opt.pairs.substr(7));
        if (opt.config.pair_sample == 0) throw ConfigError("sample size must be positive");
    } else {
        throw ConfigError("--pairs must be 'all' or 'sample:<N>'");
    }

    if (opt.workload == "all-pairs")
        opt.config.workload = WorkloadKind::AllPairs;
    else if (opt.workload == "power-law")
        opt.config.workload = WorkloadKind::PowerLawActivity;
    else
        throw ConfigError("--workload must be 'all-pairs' or 'power-law'");

    if (opt.config.h_list.empty() || opt.config.factor_list.empty() || opt.config.trials < 1)
        throw ConfigError("sweep lists must be nonempty and trials >= 1");
}

int emit(const CliOptions& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(opt.out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file: " << opt.out_path << "\n";
        return 1;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Offchain route-discovery simulator"};
    app.require_subcommand(1);

    CliOptions opt;
    auto* gen = app.add_subcommand("gen", "emit a topology as a portable edge list");
    auto* cdf = app.add_subcommand("neighborhood-cdf", "reachable-node fraction per hop radius");
    auto* eff = app.add_subcommand("efficiency", "stretch vs neighborhood size");
    auto* effv = app.add_subcommand("effectiveness", "queries/success vs liquidity occupation");
    auto* fee = app.add_subcommand("fee-effectiveness", "fee of the 10 shortest paths vs liquidity");
    auto* pn = app.add_subcommand("partial-nodes", "stretch with partial-node caches enabled");
    auto* lemma = app.add_subcommand("lemma-check", "verify the adversarial constructions");
    for (CLI::App* cmd : {gen, cdf, eff, effv, fee, pn, lemma}) apply_common(cmd, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        finalize(opt);
        std::ostringstream buf;
        if (gen->parsed()) {
            auto topo = resolve_topology(opt.config.topology, opt.config.seed);
            write_edge_list(topo.network, buf);
        } else if (cdf->parsed()) {
            run_neighborhood_cdf(opt.config, buf);
        } else if (eff->parsed()) {
            run_efficiency(opt.config, buf);
        } else if (effv->parsed()) {
            run_effectiveness(opt.config, buf);
        } else if (fee->parsed()) {
            run_fee_effectiveness(opt.config, buf);
        } else if (pn->parsed()) {
            run_partial_nodes(opt.config, buf);
        } else if (lemma->parsed()) {
            bool ok = print_lemma_checks(buf);
            int rc = emit(opt, buf.str());
            return rc != 0 ? rc : (ok ? 0 : 2);
        }
        return emit(opt, buf.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
