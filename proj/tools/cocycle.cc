#include <cocycle/config.hh>
#include <cocycle/run.hh>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace cocycle;

namespace
{
    auto read_file(const std::string & path) -> std::optional<std::string>
    {
        std::ifstream in(path);
        if (! in)
            return std::nullopt;
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto load(const std::string & path, const Budgets & defaults) -> std::optional<JobConfig>
    {
        auto text = read_file(path);
        if (! text) {
            std::cerr << path << ": cannot read file\n";
            return std::nullopt;
        }
        try {
            return parse_config(*text, defaults);
        }
        catch (const ConfigError & e) {
            std::cerr << path << ":" << e.line() << ":" << e.column() << ": " << e.code() << ": " << e.message()
                      << "\n";
            return std::nullopt;
        }
    }
}

auto main(int argc, char * argv[]) -> int
{
    CLI::App app{"Čech cohomology with finite coefficients, abelian and nonabelian"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> budget;
    std::string format, granularity, seed_complex, config_path;
    unsigned jobs = 1;
    app.add_option("--budget", budget, "Backtrack node budget (default from COCYCLE_BUDGET or 10000000)")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--jobs", jobs, "Worker threads inside searches")->check(CLI::Range(1u, 256u));
    app.add_option("--granularity", granularity, "Lifts up to class or as gauge-fixed cocycles")
        ->check(CLI::IsMember({"class", "cocycle"}));
    app.add_option("--seed-complex", seed_complex, "Complex used when a task names none");
    app.add_option("--config", config_path, "Config file supplying definitions for a single task");

    struct Command
    {
        std::string name, help;
        std::vector<std::string> args;
        CLI::App * sub = nullptr;
    };
    std::vector<Command> commands{
        {"h1", "H^1 classes: [complex] group", {}},
        {"abelian", "abelian cohomology: [complex] coefficients degree", {}},
        {"h2nab", "nonabelian H^2 classes: [complex] [crossed]", {}},
        {"nu", "cocycle pairs from quotient classes: [complex] [crossed] [classes]", {}},
        {"delta", "obstruction classes: [complex] [crossed] [classes]", {}},
        {"lift", "lifts of quotient classes: [complex] [crossed] [classes] [class|cocycle]", {}},
        {"exactness", "exactness of the long sequence: [complex] [crossed]", {}},
        {"square", "commutativity of the square: [complex] [crossed] [all|gauge-fixed]", {}},
        {"gerbe", "gerbe class and collapse: [complex] [crossed] [classes]", {}},
        {"gauge-classes", "lifts grouped by gauge class: [complex] [crossed] [classes] [class|cocycle]", {}},
        {"realize", "coboundary realization of G'-classes: [complex] [crossed] [classes]", {}},
    };
    for (auto & c : commands) {
        c.sub = app.add_subcommand(c.name, c.help)->fallthrough();
        c.sub->add_option("args", c.args, "Task arguments");
    }
    std::string run_path;
    auto run_sub = app.add_subcommand("run", "run every task in a config file")->fallthrough();
    run_sub->add_option("file", run_path, "Config file")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Budgets defaults;
    defaults.nodes = default_node_budget();
    RunOptions options;
    options.jobs = jobs;
    options.node_budget = budget;

    JobConfig config;
    config.budgets = defaults;
    std::string path = run_sub->parsed() ? run_path : config_path;
    if (! path.empty()) {
        auto loaded = load(path, defaults);
        if (! loaded)
            return 2;
        config = std::move(*loaded);
    }
    if (! format.empty())
        config.output = format;

    try {
        if (! seed_complex.empty()) {
            if (! config.find_complex(seed_complex)) {
                auto & names = builtin_complex_names();
                if (std::find(names.begin(), names.end(), seed_complex) == names.end())
                    throw ConfigError("E-NAME", 0, 0, "unknown complex '" + seed_complex + "'");
            }
            config.default_complex = seed_complex;
        }
        if (! run_sub->parsed()) {
            config.tasks.clear();
            for (auto & c : commands)
                if (c.sub->parsed()) {
                    TaskDef task{c.name, c.args, 0};
                    if (! granularity.empty() && (c.name == "lift" || c.name == "gauge-classes"))
                        task.args.push_back(granularity);
                    validate_task(config, task);
                    config.tasks.push_back(std::move(task));
                }
        }
        else
            for (auto & t : config.tasks)
                validate_task(config, t);
    }
    catch (const ConfigError & e) {
        std::cerr << "cocycle: " << e.code() << ": " << e.message() << "\n";
        return 2;
    }

    auto result = run(config, options);
    std::cout << render(result, config.output);
    return result.exit_code();
}
