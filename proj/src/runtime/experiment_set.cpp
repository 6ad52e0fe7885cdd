#include "csaf/runtime/experiment_set.hpp"

#include "csaf/core/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace csaf::runtime {

using nlohmann::json;

const SetNode* ExperimentSet::node(std::string_view id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

NodeResults node_results(const RunSummary& s) {
    NodeResults r{{"fms_prompts", s.fms_prompts},
                  {"fms_responses", s.fms_responses},
                  {"duration", s.duration},
                  {"coins_collected", s.coins_collected},
                  {"targets_hit", s.targets_hit},
                  {"mean_linear_speed", s.mean_linear_speed},
                  {"mean_angular_speed", s.mean_angular_speed},
                  {"optic_flow", s.optic_flow_proxy}};
    if (s.mean_fms) r["mean_fms"] = *s.mean_fms;
    if (s.max_fms) r["max_fms"] = *s.max_fms;
    return r;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string metric_key(std::string_view raw) {
    std::string out;
    bool gap = false;
    for (char c : trim(raw)) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            gap = true;
            continue;
        }
        if (gap && !out.empty()) out += '_';
        gap = false;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

} // namespace

bool evaluate_condition(std::string_view condition, const NodeResults& results) {
    const std::string_view c = trim(condition);
    if (c == "always") return true;
    static constexpr std::string_view ops[] = {">=", "<=", "==", "!=", ">", "<"};
    std::size_t pos = std::string_view::npos;
    std::string_view op;
    for (auto candidate : ops) {
        const auto p = c.find(candidate);
        if (p != std::string_view::npos && (pos == std::string_view::npos || p < pos)) {
            pos = p;
            op = candidate;
        }
    }
    require(pos != std::string_view::npos && pos > 0, ErrorCode::Parse,
            "malformed condition '" + std::string(condition) + "'");
    const std::string key = metric_key(c.substr(0, pos));
    const std::string_view rhs = trim(c.substr(pos + op.size()));
    double value = 0.0;
    const auto [end, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), value);
    require(!key.empty() && ec == std::errc() && end == rhs.data() + rhs.size() && std::isfinite(value),
            ErrorCode::Parse, "malformed condition '" + std::string(condition) + "'");
    require(key.find_first_of("<>=!") == std::string::npos, ErrorCode::Parse,
            "malformed condition '" + std::string(condition) + "'");
    const auto it = results.find(key);
    require(it != results.end(), ErrorCode::NotFound, "condition references unknown metric '" + key + "'");
    const double x = it->second;
    if (op == ">") return x > value;
    if (op == ">=") return x >= value;
    if (op == "<") return x < value;
    if (op == "<=") return x <= value;
    if (op == "==") return x == value;
    return x != value;
}

void validate(const ExperimentSet& set) {
    std::set<std::string, std::less<>> ids;
    for (const auto& n : set.nodes) {
        require(!n.id.empty(), ErrorCode::InvalidArgument, "set node without id");
        require(ids.insert(n.id).second, ErrorCode::InvalidArgument, "duplicate set node '" + n.id + "'");
        require(n.max_visits >= 1, ErrorCode::InvalidArgument, "max_visits must be >= 1");
    }
    require(ids.contains(set.start), ErrorCode::InvalidArgument, "start node '" + set.start + "' is not in the set");
    for (const auto& e : set.edges)
        require(ids.contains(e.from) && ids.contains(e.to), ErrorCode::InvalidArgument,
                "edge " + e.from + " -> " + e.to + " names an unknown node");
}

std::optional<std::string> next_node(const ExperimentSet& set, std::string_view current, const NodeResults& results,
                                     const std::map<std::string, int, std::less<>>& visits) {
    require(set.node(current) != nullptr, ErrorCode::NotFound, "node '" + std::string(current) + "' is not in the set");
    for (const auto& e : set.edges) {
        if (e.from != current) continue;
        if (!evaluate_condition(e.condition, results)) continue;
        const auto v = visits.find(e.to);
        if (v != visits.end() && v->second >= set.node(e.to)->max_visits) continue;
        return e.to;
    }
    return std::nullopt;
}

ExperimentSet experiment_set_from_json(const json& d) {
    ExperimentSet set;
    try {
        set.name = d.value("name", std::string("set"));
        for (const auto& n : d.at("nodes"))
            set.nodes.push_back({n.at("id").get<std::string>(), n.at("plan").get<std::string>(),
                                 n.value("presets", std::vector<std::string>{}), n.value("max_visits", 1)});
        set.start = d.value("start", set.nodes.empty() ? std::string() : set.nodes.front().id);
        if (d.contains("edges"))
            for (const auto& e : d.at("edges"))
                set.edges.push_back({e.at("from").get<std::string>(), e.at("to").get<std::string>(),
                                     e.value("condition", std::string("always"))});
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, std::string("malformed experiment set: ") + e.what());
    }
    validate(set);
    return set;
}

json to_json(const ExperimentSet& set) {
    json nodes = json::array(), edges = json::array();
    for (const auto& n : set.nodes)
        nodes.push_back({{"id", n.id}, {"plan", n.plan}, {"presets", n.presets}, {"max_visits", n.max_visits}});
    for (const auto& e : set.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"condition", e.condition}});
    return json{{"name", set.name}, {"start", set.start}, {"nodes", nodes}, {"edges", edges}};
}

} // namespace csaf::runtime
