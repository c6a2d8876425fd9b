#include <cocycle/cochain.hh>
#include <cocycle/error.hh>

#include <limits>

namespace cocycle
{
    auto OneCochain::trivial(NervePtr nerve, GroupPtr group) -> OneCochain
    {
        auto m = nerve->edges().size();
        return OneCochain{std::move(nerve), std::move(group), std::vector<Element>(m, FiniteGroup::identity)};
    }

    auto OneCochain::at(Vertex i, Vertex j) const -> Element
    {
        if (i == j)
            return FiniteGroup::identity;
        if (i < j)
            return values.at(nerve->edge_index(i, j));
        return group->inv(values.at(nerve->edge_index(j, i)));
    }

    auto TwoCochain::trivial(NervePtr nerve, GroupPtr group) -> TwoCochain
    {
        auto m = nerve->triangles().size();
        return TwoCochain{std::move(nerve), std::move(group), std::vector<Element>(m, FiniteGroup::identity)};
    }

    auto count_mul(std::uint64_t a, std::uint64_t b) -> std::uint64_t
    {
        std::uint64_t r;
        if (__builtin_mul_overflow(a, b, &r))
            throw SizeError("count exceeds 64 bits");
        return r;
    }

    auto count_pow(std::uint64_t base, std::size_t exponent) -> std::uint64_t
    {
        std::uint64_t r = 1;
        for (std::size_t k = 0; k < exponent; ++k)
            r = count_mul(r, base);
        return r;
    }
}
