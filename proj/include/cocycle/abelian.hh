#pragma once

#include <cocycle/cochain.hh>
#include <cocycle/smith.hh>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cocycle
{
    // Coefficients Z (modulus 0) or Z_m.
    struct Coefficients
    {
        std::int64_t modulus = 0;

        auto name() const -> std::string;
        friend auto operator==(const Coefficients &, const Coefficients &) -> bool = default;
    };

    // Parses "Z", "Z_m" or "Zm".
    auto parse_coefficients(const std::string & text) -> std::optional<Coefficients>;

    // Matrix of the coboundary C^n -> C^{n+1}: rows are (n+1)-simplices,
    // columns n-simplices, entry (-1)^k for the face missing vertex k.
    // n = -1 gives the zero map into C^0.
    auto coboundary_matrix(const Nerve & k, int degree) -> IntMatrix;

    struct AbelianComplexData
    {
        NervePtr nerve;
        // d[n + 1] is the coboundary out of degree n, for n = -1 .. 3.
        std::vector<IntMatrix> d;
        std::vector<SmithForm> smith;

        // Asserts d_{n+1} d_n = 0.
        static auto build(NervePtr nerve) -> AbelianComplexData;

        auto out_of(int degree) const -> const IntMatrix & { return d.at(std::size_t(degree + 1)); }
        auto smith_out_of(int degree) const -> const SmithForm & { return smith.at(std::size_t(degree + 1)); }
    };

    struct AbelianCohomology
    {
        Coefficients coefficients;
        int degree = 0;
        // Ascending under divisibility, free summands (0) last.
        std::vector<std::int64_t> invariant_factors;
        // Absent when the group is infinite.
        std::optional<std::uint64_t> count;
    };

    auto abelian_cohomology(const NervePtr & k, Coefficients coeff, int degree) -> AbelianCohomology;

    // Sorts a list of cyclic orders (0 = Z) into invariant-factor form.
    auto normalize_invariant_factors(const std::vector<std::int64_t> & orders) -> std::vector<std::int64_t>;

    // Coordinates of the class of a Z_m-valued n-cocycle; equal coordinates
    // iff cohomologous, all zero iff a coboundary. Throws PreconditionError if
    // z is not a cocycle.
    struct ClassCoordinates
    {
        std::vector<std::int64_t> moduli;
        std::vector<std::int64_t> values;

        auto trivial() const -> bool;
        friend auto operator==(const ClassCoordinates &, const ClassCoordinates &) -> bool = default;
    };

    auto class_coordinates(const AbelianComplexData & data, int degree, std::int64_t modulus,
        const std::vector<std::int64_t> & z) -> ClassCoordinates;

    // A finite abelian group as a sum of cyclic factors of orders
    // factors[0] | factors[1] | ..., each > 1.
    struct AbelianDecomposition
    {
        GroupPtr group;
        std::vector<std::int64_t> factors;
        // Per element, one coordinate per factor.
        std::vector<std::vector<std::int64_t>> coordinates;
    };

    auto decompose_abelian(const GroupPtr & g) -> AbelianDecomposition;

    // The class of an abelian-group-valued cocycle, one coordinate block per
    // cyclic factor of the coefficient group.
    struct AbelianClass
    {
        int degree = 0;
        std::vector<std::int64_t> coefficient_factors;
        std::vector<ClassCoordinates> blocks;
        // H^n with each factor's coefficients.
        std::vector<std::vector<std::int64_t>> cohomology;

        auto trivial() const -> bool;
        friend auto operator==(const AbelianClass & a, const AbelianClass & b) -> bool
        {
            return a.degree == b.degree && a.coefficient_factors == b.coefficient_factors && a.blocks == b.blocks;
        }
    };

    auto abelian_class(const AbelianComplexData & data, int degree, const AbelianDecomposition & dec,
        const std::vector<Element> & values) -> AbelianClass;
    auto abelian_class(const OneCochain & c) -> AbelianClass;
    auto abelian_class(const TwoCochain & c) -> AbelianClass;
}
