#pragma once

#include <cocycle/h1.hh>
#include <cocycle/h2.hh>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cocycle
{
    enum class Granularity
    {
        classes,
        cocycles
    };

    // pi_N,* o nu.
    auto delta(const OneCochain & q_cocycle, const ExtensionData & ext) -> AbelianClass;

    struct LiftResult
    {
        // Canonical class representatives, or gauge-fixed cocycles, sorted.
        std::vector<OneCochain> lifts;
        SearchStats stats;
    };

    // N-cocycles n with p_*[n] = [q]. Each class has a member with
    // p(n_ij) = q_ij and n = s(q) on the spanning tree, so the search runs
    // over the fibres s(q_ij) i(G) of the remaining edges.
    auto find_lifts(const OneCochain & q_cocycle, const ExtensionData & ext,
        Granularity granularity = Granularity::classes, const SearchOptions & options = {}) -> LiftResult;

    struct Counterexample
    {
        std::string check;
        OneCochain cocycle;
    };

    struct ExactnessReport
    {
        bool central = false;
        // p_* i_* is trivial on every G-class.
        bool composite_trivial = true;
        // Every class with a lift has trivial delta.
        bool image_in_kernel = true;
        // Every class with trivial delta has a lift. Recorded for non-central
        // extensions too, but only asserted for central ones.
        bool kernel_in_image = true;
        std::vector<std::size_t> image_classes, kernel_classes;
        std::size_t g_classes = 0, n_classes = 0, q_classes = 0;
        std::vector<Counterexample> counterexamples;
        SearchStats stats;

        // Absent unless central.
        auto exact() const -> std::optional<bool>;
        // The asserted parts hold.
        auto passed() const -> bool;
    };

    auto check_exactness(const NervePtr & k, const ExtensionData & ext, const SearchOptions & options = {})
        -> ExactnessReport;

    struct SquareReport
    {
        bool all_cocycles = false;
        std::uint64_t checked = 0;
        std::uint64_t failures = 0;
        std::vector<OneCochain> failing;
        SearchStats stats;
    };

    // d_* gamma_*(u) against breve_gamma_* nu p_*(u) for every gauge-fixed
    // N-cocycle u, or every N-cocycle.
    auto check_square(const NervePtr & k, const ExtensionData & ext, const SearchOptions & options = {},
        bool all_cocycles = false) -> SquareReport;

    struct GerbeResult
    {
        CocyclePair pair;
        bool collapsed = false;
        std::optional<OneCochain> lambda;
        bool lifts_exist = false;
        bool agrees = true;
        SearchStats stats;
    };

    auto gerbe_class(const OneCochain & q_cocycle, const ExtensionData & ext, const SearchOptions & options = {})
        -> GerbeResult;

    struct GaugeGroup
    {
        OneCochain gauge_class;
        std::vector<std::size_t> lifts;
    };

    struct GaugeGrouping
    {
        std::vector<OneCochain> lifts;
        std::vector<GaugeGroup> groups;
        bool duality_breaking = false;
        bool gauge_breaking = false;
        SearchStats stats;
    };

    auto classify_gauge_lifts(const OneCochain & q_cocycle, const ExtensionData & ext,
        const SearchOptions & options = {}) -> GaugeGrouping;

    // An N-cochain u with pi_G(i^-1(u_ij u_jk u_ik^-1)) = g2_ijk whose pair is
    // a cocycle pair, or none. u is trivial on the spanning tree.
    auto solve_coboundary_realization(const TwoCochain & g2, const ExtensionData & ext,
        const SearchOptions & options, SearchStats & stats) -> std::optional<OneCochain>;

    struct ObstructionReport
    {
        OneCochain input;
        OneCochain input_class;
        AbelianClass delta;
        std::vector<OneCochain> lifts;
        GaugeGrouping gauge;
        std::map<std::string, bool> flags;
        std::optional<ExactnessReport> exactness;
        SearchStats stats;
    };

    auto obstruction_report(const OneCochain & q_cocycle, const ExtensionData & ext,
        Granularity granularity = Granularity::classes, const SearchOptions & options = {}) -> ObstructionReport;
}
