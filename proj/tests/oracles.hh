#pragma once

// Independent reference computations. These use only group tables and the
// simplex lists of a nerve, never the engine's search or reduction code.

#include <cocycle/group.hh>
#include <cocycle/nerve.hh>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace oracle
{
    using cocycle::Element;
    using cocycle::FiniteGroup;
    using cocycle::Permutation;

    // A relator is a word in generators: +k for x_k, -k for x_k^-1 (1-based).
    struct Presentation
    {
        int generators = 0;
        std::vector<std::vector<int>> relators;
    };

    inline auto fundamental_group(const std::string & complex) -> Presentation
    {
        if (complex == "circle3")
            return {1, {}};
        if (complex == "torus7")
            return {2, {{1, 2, -1, -2}}};
        if (complex == "rp2_6")
            return {1, {{1, 1}}};
        // sphere2_tet, sphere3_pent, disk3
        return {0, {}};
    }

    inline auto evaluate(const FiniteGroup & g, const std::vector<Element> & images, const std::vector<int> & word)
        -> Element
    {
        Element r = FiniteGroup::identity;
        for (auto letter : word) {
            auto x = images[std::size_t(std::abs(letter) - 1)];
            r = g.mul(r, letter > 0 ? x : g.inv(x));
        }
        return r;
    }

    // All homomorphisms from the presented group, as generator images.
    inline auto homomorphisms(const Presentation & p, const FiniteGroup & g) -> std::vector<std::vector<Element>>
    {
        std::vector<std::vector<Element>> result;
        std::vector<Element> images(std::size_t(p.generators), 0);
        while (true) {
            bool ok = true;
            for (auto & r : p.relators)
                if (evaluate(g, images, r) != FiniteGroup::identity)
                    ok = false;
            if (ok)
                result.push_back(images);
            std::size_t pos = 0;
            while (pos < images.size() && ++images[pos] == g.order())
                images[pos++] = 0;
            if (pos == images.size())
                break;
        }
        return result;
    }

    inline auto conjugate_tuple(const FiniteGroup & g, Element u, const std::vector<Element> & t) -> std::vector<Element>
    {
        std::vector<Element> r;
        for (auto x : t)
            r.push_back(g.mul(g.mul(u, x), g.inv(u)));
        return r;
    }

    inline auto canonical_tuple(const FiniteGroup & g, const std::vector<Element> & t) -> std::vector<Element>
    {
        auto best = t;
        for (Element u = 0; u < g.order(); ++u)
            best = std::min(best, conjugate_tuple(g, u, t));
        return best;
    }

    // |Hom(pi_1, G) / conjugation|.
    inline auto hom_classes(const Presentation & p, const FiniteGroup & g) -> std::set<std::vector<Element>>
    {
        std::set<std::vector<Element>> classes;
        for (auto & h : homomorphisms(p, g))
            classes.insert(canonical_tuple(g, h));
        return classes;
    }

    inline auto hom_class_count(const std::string & complex, const FiniteGroup & g) -> std::size_t
    {
        return hom_classes(fundamental_group(complex), g).size();
    }

    inline auto hom_count(const std::string & complex, const FiniteGroup & g) -> std::size_t
    {
        return homomorphisms(fundamental_group(complex), g).size();
    }

    // Classes of Hom(pi_1, Q)/conj hit by p o phi for phi in Hom(pi_1, N).
    inline auto image_class_count(const std::string & complex, const FiniteGroup & n, const FiniteGroup & q,
        const std::vector<Element> & p) -> std::size_t
    {
        std::set<std::vector<Element>> hit;
        for (auto & h : homomorphisms(fundamental_group(complex), n)) {
            std::vector<Element> image;
            for (auto x : h)
                image.push_back(p[x]);
            hit.insert(canonical_tuple(q, image));
        }
        return hit.size();
    }

    // Simplices of dimension d as sorted vertex lists.
    inline auto simplices(const cocycle::Nerve & k, int d) -> std::vector<std::vector<cocycle::Vertex>>
    {
        std::vector<std::vector<cocycle::Vertex>> r;
        switch (d) {
        case 0:
            for (cocycle::Vertex v = 0; v < k.vertex_count(); ++v)
                r.push_back({v});
            break;
        case 1:
            for (auto & e : k.edges())
                r.push_back({e.begin(), e.end()});
            break;
        case 2:
            for (auto & t : k.triangles())
                r.push_back({t.begin(), t.end()});
            break;
        case 3:
            for (auto & t : k.tetrahedra())
                r.push_back({t.begin(), t.end()});
            break;
        default: break;
        }
        return r;
    }

    // Coboundary C^d -> C^{d+1} with entries mod m, rebuilt from face lists.
    inline auto coboundary_mod(const cocycle::Nerve & k, int d, std::int64_t m) -> std::vector<std::vector<std::int64_t>>
    {
        auto rows = simplices(k, d + 1), cols = simplices(k, d);
        std::map<std::vector<cocycle::Vertex>, std::size_t> index;
        for (std::size_t c = 0; c < cols.size(); ++c)
            index[cols[c]] = c;
        std::vector<std::vector<std::int64_t>> a(rows.size(), std::vector<std::int64_t>(cols.size(), 0));
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t drop = 0; drop < rows[r].size(); ++drop) {
                auto face = rows[r];
                face.erase(face.begin() + long(drop));
                a[r][index.at(face)] = ((drop % 2 ? -1 : 1) % m + m) % m;
            }
        return a;
    }

    inline auto power_mod(std::int64_t a, std::int64_t e, std::int64_t p) -> std::int64_t
    {
        std::int64_t r = 1;
        a %= p;
        while (e > 0) {
            if (e & 1)
                r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    }

    // Rank over F_p by Gaussian elimination.
    inline auto rank_mod_prime(std::vector<std::vector<std::int64_t>> a, std::int64_t p) -> std::size_t
    {
        std::size_t rank = 0;
        std::size_t cols = a.empty() ? 0 : a.front().size();
        for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
            std::size_t pivot = rank;
            while (pivot < a.size() && a[pivot][c] % p == 0)
                ++pivot;
            if (pivot == a.size())
                continue;
            std::swap(a[pivot], a[rank]);
            auto inv = power_mod(a[rank][c], p - 2, p);
            for (auto & x : a[rank])
                x = x * inv % p;
            for (std::size_t r = 0; r < a.size(); ++r)
                if (r != rank && a[r][c] % p != 0) {
                    auto f = a[r][c];
                    for (std::size_t j = 0; j < cols; ++j)
                        a[r][j] = ((a[r][j] - f * a[rank][j]) % p + p) % p;
                }
            ++rank;
        }
        return rank;
    }

    // dim H^d(k; F_p) = dim C^d - rank d_d - rank d_{d-1}.
    inline auto betti_mod_prime(const cocycle::Nerve & k, int d, std::int64_t p) -> std::size_t
    {
        auto n = simplices(k, d).size();
        auto out = d < 3 ? rank_mod_prime(coboundary_mod(k, d, p), p) : 0;
        auto in = d > 0 ? rank_mod_prime(coboundary_mod(k, d - 1, p), p) : 0;
        return n - out - in;
    }

    // |H^d(k; Z_m)| by listing every d-cochain and every (d-1)-cochain.
    // Only for tiny complexes.
    inline auto brute_force_count(const cocycle::Nerve & k, int d, std::int64_t m) -> std::uint64_t
    {
        auto apply = [&](const std::vector<std::vector<std::int64_t>> & a, const std::vector<std::int64_t> & x) {
            std::vector<std::int64_t> y(a.size(), 0);
            for (std::size_t r = 0; r < a.size(); ++r)
                for (std::size_t c = 0; c < x.size(); ++c)
                    y[r] = (y[r] + a[r][c] * x[c]) % m;
            return y;
        };
        auto each = [&](std::size_t length, auto && f) {
            std::vector<std::int64_t> x(length, 0);
            while (true) {
                f(x);
                std::size_t pos = 0;
                while (pos < length && ++x[pos] == m)
                    x[pos++] = 0;
                if (pos == length)
                    break;
            }
        };
        std::uint64_t cocycles = 0;
        auto n = simplices(k, d).size();
        if (d < 3) {
            auto out = coboundary_mod(k, d, m);
            each(n, [&](const std::vector<std::int64_t> & x) {
                auto y = apply(out, x);
                if (std::all_of(y.begin(), y.end(), [](std::int64_t v) { return v == 0; }))
                    ++cocycles;
            });
        }
        else
            cocycles = std::uint64_t(std::pow(double(m), double(n)) + 0.5);
        std::set<std::vector<std::int64_t>> boundaries;
        if (d > 0) {
            auto in = coboundary_mod(k, d - 1, m);
            each(simplices(k, d - 1).size(), [&](const std::vector<std::int64_t> & x) { boundaries.insert(apply(in, x)); });
        }
        else
            boundaries.insert(std::vector<std::int64_t>(n, 0));
        return cocycles / boundaries.size();
    }

    // Direct check of the crossed-module axioms on tables.
    inline auto is_crossed_module(const FiniteGroup & g, const FiniteGroup & n, const std::vector<Element> & i,
        const std::vector<Permutation> & alpha) -> bool
    {
        if (i.size() != g.order() || alpha.size() != n.order())
            return false;
        for (auto x : i)
            if (x >= n.order())
                return false;
        for (Element x = 0; x < g.order(); ++x)
            for (Element y = 0; y < g.order(); ++y)
                if (i[g.mul(x, y)] != n.mul(i[x], i[y]))
                    return false;
        for (auto & a : alpha) {
            if (a.size() != g.order())
                return false;
            auto sorted = a;
            std::sort(sorted.begin(), sorted.end());
            for (Element x = 0; x < g.order(); ++x)
                if (sorted[x] != x)
                    return false;
            for (Element x = 0; x < g.order(); ++x)
                for (Element y = 0; y < g.order(); ++y)
                    if (a[g.mul(x, y)] != g.mul(a[x], a[y]))
                        return false;
        }
        for (Element x = 0; x < g.order(); ++x)
            if (alpha[FiniteGroup::identity][x] != x)
                return false;
        for (Element u = 0; u < n.order(); ++u)
            for (Element v = 0; v < n.order(); ++v)
                for (Element x = 0; x < g.order(); ++x)
                    if (alpha[n.mul(u, v)][x] != alpha[u][alpha[v][x]])
                        return false;
        for (Element u = 0; u < n.order(); ++u)
            for (Element x = 0; x < g.order(); ++x)
                if (i[alpha[u][x]] != n.mul(n.mul(u, i[x]), n.inv(u)))
                    return false;
        for (Element x = 0; x < g.order(); ++x)
            for (Element y = 0; y < g.order(); ++y)
                if (alpha[i[x]][y] != g.mul(g.mul(x, y), g.inv(x)))
                    return false;
        return true;
    }

    struct RawPair
    {
        std::vector<Element> u, g;

        friend auto operator<(const RawPair & a, const RawPair & b) -> bool
        {
            return std::tie(a.u, a.g) < std::tie(b.u, b.g);
        }
        friend auto operator==(const RawPair &, const RawPair &) -> bool = default;
    };

    // Cocycle pairs over an injective crossed module, classified by orbits of
    // the full gauge set (v, h) in N^V x G^E. Returns the orbit id of every
    // pair. Feasible only for tiny instances.
    struct PairOrbits
    {
        std::map<RawPair, std::size_t> orbit;
        std::size_t count = 0;
        bool partition = true;
    };

    inline auto pair_orbits(const cocycle::Nerve & k, const cocycle::CrossedModule & xm) -> PairOrbits
    {
        auto & g = *xm.g();
        auto & n = *xm.n();
        auto & i = xm.i().images();
        std::vector<Element> preimage(n.order(), Element(-1));
        for (Element x = 0; x < g.order(); ++x)
            preimage[i[x]] = x;
        auto & edges = k.edges();
        auto & triangles = k.triangles();
        auto edge = [&](cocycle::Vertex a, cocycle::Vertex b) { return k.edge_index(a, b); };
        auto act = [&](Element u, Element x) { return xm.alpha().apply(u, x); };

        auto is_pair = [&](const RawPair & b) {
            for (std::size_t t = 0; t < triangles.size(); ++t) {
                auto [a, c, d] = triangles[t];
                if (n.mul(b.u[edge(a, c)], b.u[edge(c, d)]) != n.mul(i[b.g[t]], b.u[edge(a, d)]))
                    return false;
            }
            for (auto & tet : k.tetrahedra()) {
                auto [a, c, d, e] = tet;
                auto tri = [&](cocycle::Vertex x, cocycle::Vertex y, cocycle::Vertex z) {
                    return b.g[k.triangle_index({x, y, z})];
                };
                if (g.mul(tri(a, c, d), tri(a, d, e)) != g.mul(act(b.u[edge(a, c)], tri(c, d, e)), tri(a, c, e)))
                    return false;
            }
            return true;
        };

        // every u whose triangle defects lie in i(G); g is then forced
        std::vector<RawPair> pairs;
        std::vector<Element> u(edges.size(), 0);
        while (true) {
            RawPair b{u, std::vector<Element>(triangles.size(), 0)};
            bool ok = true;
            for (std::size_t t = 0; t < triangles.size() && ok; ++t) {
                auto [a, c, d] = triangles[t];
                auto defect = n.mul(n.mul(u[edge(a, c)], u[edge(c, d)]), n.inv(u[edge(a, d)]));
                if (preimage[defect] == Element(-1))
                    ok = false;
                else
                    b.g[t] = preimage[defect];
            }
            if (ok && is_pair(b))
                pairs.push_back(b);
            std::size_t pos = 0;
            while (pos < u.size() && ++u[pos] == n.order())
                u[pos++] = 0;
            if (pos == u.size())
                break;
        }

        auto transform = [&](const RawPair & b, const std::vector<Element> & v, const std::vector<Element> & h) {
            RawPair r{b.u, b.g};
            for (std::size_t e = 0; e < edges.size(); ++e) {
                auto [a, c] = edges[e];
                r.u[e] = n.mul(n.mul(n.inv(v[a]), i[h[e]]), n.mul(b.u[e], v[c]));
            }
            for (std::size_t t = 0; t < triangles.size(); ++t) {
                auto [a, c, d] = triangles[t];
                auto inner = g.mul(g.mul(h[edge(a, c)], act(b.u[edge(a, c)], h[edge(c, d)])),
                    g.mul(b.g[t], g.inv(h[edge(a, d)])));
                r.g[t] = act(n.inv(v[a]), inner);
            }
            return r;
        };

        PairOrbits result;
        for (auto & b : pairs) {
            if (result.orbit.count(b))
                continue;
            auto id = result.count++;
            std::vector<Element> v(k.vertex_count(), 0), h(edges.size(), 0);
            while (true) {
                auto b2 = transform(b, v, h);
                auto [it, fresh] = result.orbit.emplace(b2, id);
                if (! fresh && it->second != id)
                    result.partition = false;
                if (! is_pair(b2))
                    result.partition = false;
                std::size_t pos = 0;
                while (pos < h.size() && ++h[pos] == g.order())
                    h[pos++] = 0;
                if (pos == h.size()) {
                    pos = 0;
                    while (pos < v.size() && ++v[pos] == n.order())
                        v[pos++] = 0;
                    if (pos == v.size())
                        break;
                }
            }
        }
        return result;
    }

    // Crossed modules with one table entry changed, invalid per the direct
    // check above.
    struct Mutant
    {
        cocycle::GroupPtr g, n;
        std::vector<Element> i;
        std::vector<Permutation> alpha;
    };

    inline auto mutate(const cocycle::CrossedModule & xm, std::mt19937 & rng) -> Mutant
    {
        Mutant m{xm.g(), xm.n(), xm.i().images(), xm.alpha().permutations()};
        auto pick = [&](std::size_t bound) { return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng); };
        switch (pick(3)) {
        case 0: {
            auto x = pick(m.g->order());
            m.i[x] = Element((m.i[x] + 1 + pick(m.n->order() - 1)) % m.n->order());
            break;
        }
        case 1: {
            auto u = pick(m.n->order());
            if (m.g->order() < 2)
                break;
            auto x = pick(m.g->order()), y = pick(m.g->order());
            std::swap(m.alpha[u][x], m.alpha[u][y]);
            break;
        }
        default: {
            auto u = pick(m.n->order()), v = pick(m.n->order());
            m.alpha[u] = m.alpha[v];
            break;
        }
        }
        return m;
    }
}
