#pragma once

#include <cocycle/abelian.hh>
#include <cocycle/cochain.hh>

#include <optional>
#include <string>
#include <vector>

namespace cocycle
{
    // (u, g): N-values on edges and G-values on triangles.
    struct CocyclePair
    {
        OneCochain u;
        TwoCochain g;
        CrossedModulePtr xm;

        friend auto operator==(const CocyclePair & a, const CocyclePair & b) -> bool
        {
            return a.u == b.u && a.g == b.g;
        }
    };

    // A witness that b is equivalent to b': per-vertex v in N, per-edge h in G.
    struct EquivalencePair
    {
        std::vector<Element> v;
        std::vector<Element> h;

        friend auto operator==(const EquivalencePair &, const EquivalencePair &) -> bool = default;
    };

    auto trivial_pair(const NervePtr & k, const CrossedModulePtr & xm) -> CocyclePair;

    // Checks u_ij u_jk = i(g_ijk) u_ik on triangles and
    // g_ijk g_ikl = alpha(u_ij)(g_jkl) g_ijl on tetrahedra.
    auto cocycle_pair_violation(const CocyclePair & b) -> std::optional<std::string>;
    auto is_cocycle_pair(const CocyclePair & b) -> bool;

    // True when (v, h) takes b to b2:
    //   v_i u2_ij = i(h_ij) u_ij v_j
    //   alpha(v_i)(g2_ijk) h_ik = h_ij alpha(u_ij)(h_jk) g_ijk
    auto is_equivalence(const CocyclePair & b, const CocyclePair & b2, const EquivalencePair & w) -> bool;

    // The pair that w takes b to.
    auto transform_pair(const CocyclePair & b, const EquivalencePair & w) -> CocyclePair;

    // Lexicographically least witness taking b to b2, or none. Exhaustive.
    auto pairs_equivalent(const CocyclePair & b, const CocyclePair & b2, const SearchOptions & options,
        SearchStats & stats) -> std::optional<EquivalencePair>;
    auto pairs_equivalent(const CocyclePair & b, const CocyclePair & b2, const SearchOptions & options = {})
        -> std::optional<EquivalencePair>;

    // u_ij = s(y_ij), i(g_ijk) = u_ij u_jk u_ik^-1.
    auto nu(const OneCochain & q_cocycle, const ExtensionData & ext) -> CocyclePair;

    // The abelian class of pi_G o g in H^2(X, G').
    auto pi_n_star(const CocyclePair & b, const ExtensionData & ext) -> AbelianClass;

    // (lambda, 1) over xm.
    auto d_star(const OneCochain & lambda, const CrossedModulePtr & xm) -> CocyclePair;

    struct AutomorphismData
    {
        AutomorphismGroupPtr aut;
        CrossedModulePtr module;

        static auto of(const GroupPtr & g, std::size_t cap = GroupLimits{}.aut_cap) -> AutomorphismData;
    };

    // (alpha(u_ij), g) over G -> Aut G.
    auto breve_gamma_star(const CocyclePair & b, const AutomorphismData & aut) -> CocyclePair;

    // Every cocycle pair, grouped into classes by pairs_equivalent. The
    // representative of each class is its least member.
    auto nonabelian_h2_classes(const NervePtr & k, const CrossedModulePtr & xm, const SearchOptions & options = {})
        -> ClassSet<CocyclePair>;

    // All cocycle pairs in lexicographic order.
    auto all_cocycle_pairs(const NervePtr & k, const CrossedModulePtr & xm, const SearchOptions & options,
        SearchStats & stats) -> std::vector<CocyclePair>;

    auto pair_class_index(const ClassSet<CocyclePair> & classes, const CocyclePair & b,
        const SearchOptions & options = {}) -> std::size_t;
}
