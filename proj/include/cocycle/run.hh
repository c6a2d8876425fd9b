#pragma once

#include <cocycle/config.hh>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cocycle
{
    enum class TaskStatus
    {
        ok,
        failed,
        resource,
        error
    };

    auto status_name(TaskStatus s) -> std::string;

    struct TaskOutcome
    {
        TaskDef task;
        TaskStatus status = TaskStatus::ok;
        nlohmann::json result;
        // Asserted verdicts; the task fails if any is false.
        std::map<std::string, bool> verdicts;
        std::string error;

        auto to_json() const -> nlohmann::json;
    };

    struct RunOptions
    {
        unsigned jobs = 1;
        // Overrides the config's node budget.
        std::optional<std::uint64_t> node_budget;
    };

    struct RunResult
    {
        std::vector<TaskOutcome> tasks;

        // 3 if any task hit a budget, else 2 if any task was unusable, else 4
        // if any verdict failed, else 0.
        auto exit_code() const -> int;
    };

    auto run_task(const JobConfig & config, const TaskDef & task, const RunOptions & options = {}) -> TaskOutcome;
    auto run(const JobConfig & config, const RunOptions & options = {}) -> RunResult;

    // JSON array of task objects with sorted keys, two-space indent.
    auto render_json(const RunResult & result) -> std::string;
    auto render_table(const RunResult & result) -> std::string;
    auto render(const RunResult & result, const std::string & format) -> std::string;

    // Lexicographically least representative of each class of H^2(k, g) for
    // an abelian g, in lexicographic order.
    auto abelian_two_classes(const NervePtr & k, const GroupPtr & g, const SearchOptions & options,
        SearchStats & stats) -> std::vector<TwoCochain>;
}
