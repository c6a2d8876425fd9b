#pragma once

#include <cocycle/cochain.hh>

#include <optional>
#include <string>
#include <vector>

namespace cocycle
{
    auto is_cocycle(const OneCochain & c) -> bool;

    // The first triangle i<j<k with g_ij g_jk != g_ik.
    auto cocycle_violation(const OneCochain & c) -> std::optional<Triangle>;

    // g'_ij = v_i^-1 g_ij v_j.
    auto coboundary_transform(const OneCochain & c, const std::vector<Element> & v) -> OneCochain;

    // Lexicographically least cochain among all coboundary transforms of c.
    // Two cocycles are cohomologous exactly when their canonical forms agree.
    auto canonical_form(const OneCochain & c) -> OneCochain;

    // A gauge v with coboundary_transform(c, v) == canonical_form(c).
    auto canonical_gauge(const OneCochain & c) -> std::vector<Element>;

    auto cohomologous(const OneCochain & a, const OneCochain & b) -> bool;

    // The cochain that is trivial on the tree and cohomologous to c, reached
    // by a gauge with v_root = e.
    auto gauge_fix(const OneCochain & c, const SpanningTree & tree) -> OneCochain;

    // All cocycles with value e on every tree edge, in lexicographic order.
    auto gauge_fixed_cocycles(const NervePtr & k, const GroupPtr & g, const SearchOptions & options,
        SearchStats & stats, Vertex root = 0) -> std::vector<OneCochain>;

    // H^1(k, g). Class sizes count all cocycles in the class.
    auto h1_classes(const NervePtr & k, const GroupPtr & g, const SearchOptions & options = {}, Vertex root = 0)
        -> ClassSet<OneCochain>;

    // Index of the class containing c; throws if c is not in the set.
    auto class_index(const ClassSet<OneCochain> & classes, const OneCochain & c) -> std::size_t;

    auto pushforward(const GroupMorphism & f, const OneCochain & c) -> OneCochain;

    // u_ij -> alpha(u_ij) as an element of Aut(G).
    auto gamma_star(const OneCochain & n_cocycle, const CrossedModule & xm, const AutomorphismGroup & aut)
        -> OneCochain;

    struct ChernClass
    {
        OneCochain cocycle;
        OneCochain canonical;
        bool trivial = true;
    };

    // The H^1 class of chi_* q for chi into a cyclic group.
    auto chern(const OneCochain & q_cocycle, const GroupMorphism & chi) -> ChernClass;
}
