#include "ofnet/ingest.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace ofnet {

namespace {

using nlohmann::json;

std::int64_t read_int(const json& obj, const char* field, std::int64_t fallback) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) return fallback;
    if (it->is_number_integer()) return it->get<std::int64_t>();
    if (it->is_string()) {
        try {
            return std::stoll(it->get<std::string>());
        } catch (const std::exception&) {
            throw ParseError(std::string("field '") + field + "' is not a number: " +
                             it->get<std::string>());
        }
    }
    throw ParseError(std::string("field '") + field + "' has unexpected type");
}

struct Policy {
    bool present = false;
    bool disabled = false;
    Msat fee_base_msat = 0;
    std::int64_t fee_rate_milli_msat = 0;
};

Policy read_policy(const json& edge, const char* name) {
    Policy p;
    auto it = edge.find(name);
    if (it == edge.end() || it->is_null()) return p;
    p.present = true;
    const json& obj = *it;
    auto dis = obj.find("disabled");
    if (dis != obj.end() && dis->is_boolean()) p.disabled = dis->get<bool>();
    p.fee_base_msat = read_int(obj, "fee_base_msat", 0);
    p.fee_rate_milli_msat = read_int(obj, "fee_rate_milli_msat", 0);
    if (p.fee_base_msat < 0 || p.fee_rate_milli_msat < 0)
        throw ParseError(std::string(name) + " carries a negative fee field");
    return p;
}

}  // namespace

Network parse_describegraph(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("snapshot is not well-formed: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
        throw ParseError("snapshot must carry top-level 'nodes' and 'edges' arrays");

    std::vector<std::string> keys;
    std::unordered_map<std::string, NodeIndex> index;
    for (const json& node : doc["nodes"]) {
        auto it = node.find("pub_key");
        if (it == node.end() || !it->is_string())
            throw ParseError("node entry without a 'pub_key' string");
        std::string key = it->get<std::string>();
        if (index.emplace(key, static_cast<NodeIndex>(keys.size())).second)
            keys.push_back(std::move(key));
    }

    auto lookup = [&](const json& edge, const char* field) -> NodeIndex {
        auto it = edge.find(field);
        if (it == edge.end() || !it->is_string())
            throw ParseError(std::string("edge entry without a '") + field + "' string");
        auto found = index.find(it->get<std::string>());
        if (found == index.end())
            throw ParseError("edge references unlisted node " + it->get<std::string>());
        return found->second;
    };

    std::vector<Channel> channels;
    ChannelId next_id = 0;
    for (const json& edge : doc["edges"]) {
        NodeIndex n1 = lookup(edge, "node1_pub");
        NodeIndex n2 = lookup(edge, "node2_pub");
        Msat capacity_sat = read_int(edge, "capacity", 0);
        if (capacity_sat < 0) throw ParseError("edge carries negative capacity");
        Msat capacity = capacity_sat * 1000;  // satoshi -> millisatoshi

        Policy p1 = read_policy(edge, "node1_policy");
        Policy p2 = read_policy(edge, "node2_policy");
        if (p1.present && !p1.disabled)
            channels.push_back(
                Channel{next_id++, n1, n2, p1.fee_base_msat, p1.fee_rate_milli_msat, capacity});
        if (p2.present && !p2.disabled)
            channels.push_back(
                Channel{next_id++, n2, n1, p2.fee_base_msat, p2.fee_rate_milli_msat, capacity});
    }
    return Network::build(std::move(keys), std::move(channels));
}

Network load_describegraph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open snapshot file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_describegraph(buf.str());
}

}  // namespace ofnet
