#pragma once

#include <cocycle/abelian.hh>
#include <cocycle/cochain.hh>
#include <cocycle/error.hh>
#include <cocycle/group.hh>
#include <cocycle/nerve.hh>
#include <cocycle/obstruction.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cocycle
{
    // A rejected configuration, with a stable code such as E-NAME.
    class ConfigError : public Error
    {
    public:
        ConfigError(std::string code, std::size_t line, std::size_t column, const std::string & message);

        auto code() const -> const std::string & { return _code; }
        auto line() const -> std::size_t { return _line; }
        auto column() const -> std::size_t { return _column; }
        auto message() const -> const std::string & { return _message; }

    private:
        std::string _code;
        std::size_t _line, _column;
        std::string _message;
    };

    struct GroupDef
    {
        std::string name;
        GroupPtr group;

        friend auto operator==(const GroupDef & a, const GroupDef & b) -> bool
        {
            return a.name == b.name && *a.group == *b.group;
        }
    };

    struct ComplexDef
    {
        std::string name;
        NervePtr nerve;

        friend auto operator==(const ComplexDef & a, const ComplexDef & b) -> bool
        {
            return a.name == b.name && *a.nerve == *b.nerve;
        }
    };

    struct MorphismDef
    {
        std::string name, domain, codomain;
        GroupMorphism morphism;

        friend auto operator==(const MorphismDef &, const MorphismDef &) -> bool = default;
    };

    struct CrossedDef
    {
        enum class Kind
        {
            explicit_maps,
            builtin,
            automorphisms
        };

        std::string name;
        Kind kind = Kind::explicit_maps;
        // group names for explicit and automorphism modules, builtin name otherwise
        std::string g, n, builtin;
        CrossedModulePtr xm;

        friend auto operator==(const CrossedDef & a, const CrossedDef & b) -> bool
        {
            return a.name == b.name && a.kind == b.kind && a.g == b.g && a.n == b.n && a.builtin == b.builtin &&
                *a.xm == *b.xm;
        }
    };

    struct CochainDef
    {
        std::string name, complex, group;
        int degree = 1;
        std::vector<Element> values;

        friend auto operator==(const CochainDef &, const CochainDef &) -> bool = default;
    };

    struct TaskDef
    {
        std::string command;
        std::vector<std::string> args;
        std::size_t line = 0;

        friend auto operator==(const TaskDef & a, const TaskDef & b) -> bool
        {
            return a.command == b.command && a.args == b.args;
        }
    };

    struct Budgets
    {
        std::uint64_t nodes = 10'000'000;
        std::size_t order = GroupLimits{}.order_cap;
        std::size_t aut = GroupLimits{}.aut_cap;

        friend auto operator==(const Budgets &, const Budgets &) -> bool = default;
    };

    struct JobConfig
    {
        std::vector<GroupDef> groups;
        std::vector<ComplexDef> complexes;
        std::vector<MorphismDef> morphisms;
        std::vector<CrossedDef> crossed;
        std::vector<CochainDef> cochains;
        std::vector<TaskDef> tasks;
        Budgets budgets;
        std::optional<std::string> default_complex, default_crossed;
        std::string output = "json";

        auto find_group(const std::string & name) const -> const GroupDef *;
        auto find_complex(const std::string & name) const -> const ComplexDef *;
        auto find_crossed(const std::string & name) const -> const CrossedDef *;
        auto find_cochain(const std::string & name) const -> const CochainDef *;

        friend auto operator==(const JobConfig &, const JobConfig &) -> bool = default;
    };

    // Parses the cocycle-config v1 format. Throws ConfigError.
    auto parse_config(const std::string & text, const Budgets & defaults = {}) -> JobConfig;

    // Canonical text: groups as tables, complexes as facets, morphisms and
    // explicit crossed modules as full element maps.
    auto serialize_config(const JobConfig & config) -> std::string;

    // Which quotient classes (or G'-classes, for realize) a task runs on.
    struct ClassSpec
    {
        enum class Kind
        {
            all,
            trivial,
            generator,
            index,
            cochain
        };

        Kind kind = Kind::all;
        std::size_t index = 0;
        std::string cochain;
    };

    struct ResolvedTask
    {
        std::string command;
        std::string complex_name;
        NervePtr complex;
        std::string group_name;
        GroupPtr group;
        Coefficients coefficients;
        int degree = 0;
        std::string crossed_name;
        CrossedModulePtr xm;
        ClassSpec target;
        Granularity granularity = Granularity::classes;
        bool all_cocycles = false;
    };

    // Resolves a task's arguments against the config. An optional complex
    // comes first, then a crossed module where one is needed, falling back
    // to the defaults. Throws ConfigError with E-TASK or E-NAME.
    auto resolve_task(const JobConfig & config, const TaskDef & task) -> ResolvedTask;
    auto validate_task(const JobConfig & config, const TaskDef & task) -> void;

    auto task_commands() -> const std::vector<std::string> &;
}
