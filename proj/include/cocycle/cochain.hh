#pragma once

#include <cocycle/group.hh>
#include <cocycle/nerve.hh>
#include <cocycle/search.hh>

#include <cstdint>
#include <vector>

namespace cocycle
{
    // Group values on the increasing edges of a nerve, in edge index order.
    // Reversed edges read as inverses.
    struct OneCochain
    {
        NervePtr nerve;
        GroupPtr group;
        std::vector<Element> values;

        static auto trivial(NervePtr nerve, GroupPtr group) -> OneCochain;

        auto at(Vertex i, Vertex j) const -> Element;

        friend auto operator==(const OneCochain & a, const OneCochain & b) -> bool
        {
            return a.values == b.values && *a.group == *b.group && *a.nerve == *b.nerve;
        }
    };

    // Group values on the increasing triangles of a nerve.
    struct TwoCochain
    {
        NervePtr nerve;
        GroupPtr group;
        std::vector<Element> values;

        static auto trivial(NervePtr nerve, GroupPtr group) -> TwoCochain;

        friend auto operator==(const TwoCochain & a, const TwoCochain & b) -> bool
        {
            return a.values == b.values && *a.group == *b.group && *a.nerve == *b.nerve;
        }
    };

    // A pointed set of classes. Representatives are canonical and sorted, so
    // the distinguished class is the first.
    template <typename Rep>
    struct ClassSet
    {
        std::vector<Rep> representatives;
        std::vector<std::uint64_t> sizes;
        std::size_t trivial_index = 0;
        SearchStats stats;

        auto count() const -> std::size_t { return representatives.size(); }
    };

    auto count_mul(std::uint64_t a, std::uint64_t b) -> std::uint64_t;
    auto count_pow(std::uint64_t base, std::size_t exponent) -> std::uint64_t;
}
