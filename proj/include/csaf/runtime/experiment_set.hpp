#pragma once

#include "csaf/runtime/summary.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace csaf::runtime {

struct SetNode {
    std::string id;
    std::string plan;                  ///< plan file, relative to the set file
    std::vector<std::string> presets;  ///< extra preset files bound to this node
    int max_visits = 1;                ///< bounds repeats when edges form a loop
};

/// `condition` is "always" or `<metric> <op> <number>` with op one of > >= < <= == !=.
/// Metric names are case-insensitive and spaces read as underscores ("mean FMS" = "mean_fms").
struct SetEdge {
    std::string from;
    std::string to;
    std::string condition = "always";
};

struct ExperimentSet {
    std::string name;
    std::string start;
    std::vector<SetNode> nodes;
    std::vector<SetEdge> edges;

    [[nodiscard]] const SetNode* node(std::string_view id) const;
};

using NodeResults = std::map<std::string, double, std::less<>>;

/// Metrics a condition can reference: mean_fms, max_fms, fms_responses, fms_prompts, duration,
/// coins_collected, targets_hit, mean_linear_speed, mean_angular_speed, optic_flow. Absent FMS
/// statistics are omitted.
NodeResults node_results(const RunSummary& summary);

/// Throws Parse for a malformed condition and NotFound for an unknown metric.
bool evaluate_condition(std::string_view condition, const NodeResults& results);

/// Throws InvalidArgument on duplicate ids, a missing start, dangling edges or max_visits < 1.
void validate(const ExperimentSet& set);

/// First edge from `current` (in list order) whose condition holds and whose target has visits
/// left; nullopt when none does.
std::optional<std::string> next_node(const ExperimentSet& set, std::string_view current, const NodeResults& results,
                                     const std::map<std::string, int, std::less<>>& visits = {});

ExperimentSet experiment_set_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentSet& set);

} // namespace csaf::runtime
