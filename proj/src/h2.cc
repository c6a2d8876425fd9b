#include <cocycle/error.hh>
#include <cocycle/h1.hh>
#include <cocycle/h2.hh>

#include <algorithm>

using std::optional;
using std::string;
using std::uint64_t;
using std::vector;

namespace cocycle
{
    namespace
    {
        auto preimages(const GroupMorphism & i) -> vector<vector<Element>>
        {
            vector<vector<Element>> result(i.codomain()->order());
            for (Element x = 0; x < i.domain()->order(); ++x)
                result[i(x)].push_back(x);
            return result;
        }

        auto require_same_setting(const CocyclePair & a, const CocyclePair & b) -> void
        {
            if (! (*a.u.nerve == *b.u.nerve))
                throw UsageError("cocycle pairs live on different nerves");
            if (! (*a.xm == *b.xm))
                throw UsageError("cocycle pairs have different crossed modules");
        }

        auto budget_error(const SearchOptions & options, const char * where) -> ResourceError
        {
            return ResourceError("node budget " + std::to_string(options.node_budget) + " exhausted in " + where);
        }
    }

    auto trivial_pair(const NervePtr & k, const CrossedModulePtr & xm) -> CocyclePair
    {
        return CocyclePair{OneCochain::trivial(k, xm->n()), TwoCochain::trivial(k, xm->g()), xm};
    }

    auto cocycle_pair_violation(const CocyclePair & b) -> optional<string>
    {
        auto & k = *b.u.nerve;
        auto & xm = *b.xm;
        auto & n = *xm.n();
        auto & g = *xm.g();
        if (! (*b.u.group == n) || ! (*b.g.group == g))
            return "pair values are not in the crossed module's groups";
        if (b.u.values.size() != k.edges().size() || b.g.values.size() != k.triangles().size())
            return "pair has the wrong number of values";

        for (std::size_t t = 0; t < k.triangles().size(); ++t) {
            auto & f = k.triangle_faces(t);
            auto lhs = n.mul(b.u.values[f.ij], b.u.values[f.jk]);
            auto rhs = n.mul(xm.i()(b.g.values[t]), b.u.values[f.ik]);
            if (lhs != rhs) {
                auto [i, j, l] = k.triangles()[t];
                return "edge relation fails on (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(l) + ")";
            }
        }
        for (std::size_t t = 0; t < k.tetrahedra().size(); ++t) {
            auto & f = k.tetrahedron_faces(t);
            auto lhs = g.mul(b.g.values[f.ijk], b.g.values[f.ikl]);
            auto rhs = g.mul(xm.alpha().apply(b.u.values[f.edge_ij], b.g.values[f.jkl]), b.g.values[f.ijl]);
            if (lhs != rhs) {
                auto [i, j, l, m] = k.tetrahedra()[t];
                return "triangle relation fails on (" + std::to_string(i) + "," + std::to_string(j) + "," +
                    std::to_string(l) + "," + std::to_string(m) + ")";
            }
        }
        return std::nullopt;
    }

    auto is_cocycle_pair(const CocyclePair & b) -> bool
    {
        return ! cocycle_pair_violation(b).has_value();
    }

    auto is_equivalence(const CocyclePair & b, const CocyclePair & b2, const EquivalencePair & w) -> bool
    {
        require_same_setting(b, b2);
        auto & k = *b.u.nerve;
        auto & xm = *b.xm;
        auto & n = *xm.n();
        auto & g = *xm.g();
        auto & alpha = xm.alpha();
        if (w.v.size() != k.vertex_count() || w.h.size() != k.edges().size())
            return false;

        for (std::size_t e = 0; e < k.edges().size(); ++e) {
            auto [i, j] = k.edges()[e];
            if (n.mul(w.v[i], b2.u.values[e]) != n.mul(n.mul(xm.i()(w.h[e]), b.u.values[e]), w.v[j]))
                return false;
        }
        for (std::size_t t = 0; t < k.triangles().size(); ++t) {
            auto & f = k.triangle_faces(t);
            auto i = k.triangles()[t][0];
            auto lhs = g.mul(alpha.apply(w.v[i], b2.g.values[t]), w.h[f.ik]);
            auto rhs = g.mul(g.mul(w.h[f.ij], alpha.apply(b.u.values[f.ij], w.h[f.jk])), b.g.values[t]);
            if (lhs != rhs)
                return false;
        }
        return true;
    }

    auto transform_pair(const CocyclePair & b, const EquivalencePair & w) -> CocyclePair
    {
        auto & k = *b.u.nerve;
        auto & xm = *b.xm;
        auto & n = *xm.n();
        auto & g = *xm.g();
        auto & alpha = xm.alpha();
        auto result = b;
        for (std::size_t e = 0; e < k.edges().size(); ++e) {
            auto [i, j] = k.edges()[e];
            result.u.values[e] = n.mul(n.mul(n.inv(w.v[i]), xm.i()(w.h[e])), n.mul(b.u.values[e], w.v[j]));
        }
        for (std::size_t t = 0; t < k.triangles().size(); ++t) {
            auto & f = k.triangle_faces(t);
            auto i = k.triangles()[t][0];
            auto x = g.mul(g.mul(w.h[f.ij], alpha.apply(b.u.values[f.ij], w.h[f.jk])),
                g.mul(b.g.values[t], g.inv(w.h[f.ik])));
            result.g.values[t] = alpha.apply(n.inv(w.v[i]), x);
        }
        return result;
    }

    auto pairs_equivalent(const CocyclePair & b, const CocyclePair & b2, const SearchOptions & options,
        SearchStats & stats) -> optional<EquivalencePair>
    {
        require_same_setting(b, b2);
        auto nerve = b.u.nerve;
        auto & k = *nerve;
        auto xm = b.xm;
        auto & n = *xm->n();
        auto fiber = preimages(xm->i());
        auto vertex_count = k.vertex_count();

        // edges (i, j) with i < j, grouped by j
        vector<vector<std::size_t>> closing(vertex_count);
        for (std::size_t e = 0; e < k.edges().size(); ++e)
            closing[k.edges()[e][1]].push_back(e);

        struct Outcome
        {
            optional<EquivalencePair> witness;
            uint64_t nodes = 0;
            bool exhausted = false;
        };

        auto h_search = [&](const vector<Element> & v, uint64_t remaining, Outcome & o) -> bool {
            vector<vector<Element>> domains;
            for (std::size_t e = 0; e < k.edges().size(); ++e) {
                auto [i, j] = k.edges()[e];
                auto x = n.mul(n.mul(v[i], b2.u.values[e]), n.mul(n.inv(v[j]), n.inv(b.u.values[e])));
                domains.push_back(fiber[x]);
            }
            auto triangles = k.triangles().size();
            vector<Element> a(triangles), u(triangles), c(triangles);
            for (std::size_t t = 0; t < triangles; ++t) {
                a[t] = xm->alpha().apply(v[k.triangles()[t][0]], b2.g.values[t]);
                u[t] = b.u.values[k.triangle_faces(t).ij];
                c[t] = b.g.values[t];
            }
            TriangleRelation rel;
            rel.force = [xm, a, u, c](std::size_t t, int missing, Element x, Element y) -> Element {
                auto & g = *xm->g();
                auto & al = xm->alpha();
                switch (missing) {
                case 2: return g.mul(g.mul(g.inv(a[t]), x), g.mul(al.apply(u[t], y), c[t]));
                case 0: return g.mul(g.mul(a[t], y), g.mul(g.inv(c[t]), g.inv(al.apply(u[t], x))));
                default:
                    return al.apply(xm->n()->inv(u[t]), g.mul(g.mul(g.inv(x), a[t]), g.mul(y, g.inv(c[t]))));
                }
            };
            rel.holds = [xm, a, u, c](std::size_t t, Element ij, Element jk, Element ik) {
                auto & g = *xm->g();
                return g.mul(a[t], ik) == g.mul(g.mul(ij, xm->alpha().apply(u[t], jk)), c[t]);
            };
            EdgeSolver solver(nerve, xm->g()->order(), std::move(domains), std::move(rel));
            SearchStats inner;
            try {
                auto h = solver.first(SearchOptions{remaining, 1}, inner);
                o.nodes += inner.nodes;
                if (h) {
                    o.witness = EquivalencePair{v, std::move(*h)};
                    return true;
                }
            }
            catch (const ResourceError &) {
                o.nodes += remaining;
                o.exhausted = true;
                return true;
            }
            return false;
        };

        std::function<Outcome(std::size_t)> body = [&](std::size_t v0) {
            Outcome o;
            vector<Element> v(vertex_count, 0);
            v[0] = Element(v0);
            o.nodes = 1;
            auto rec = [&](auto & self, std::size_t j) -> bool {
                if (j == vertex_count)
                    return h_search(v, options.node_budget - o.nodes, o);
                for (Element x = 0; x < n.order(); ++x) {
                    if (++o.nodes > options.node_budget) {
                        o.exhausted = true;
                        return true;
                    }
                    v[j] = x;
                    bool ok = true;
                    for (auto e : closing[j]) {
                        auto i = k.edges()[e][0];
                        auto y = n.mul(n.mul(v[i], b2.u.values[e]), n.mul(n.inv(x), n.inv(b.u.values[e])));
                        if (fiber[y].empty()) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok && self(self, j + 1))
                        return true;
                }
                return false;
            };
            rec(rec, 1);
            return o;
        };
        std::function<bool(const Outcome &)> done = [](const Outcome & o) { return o.witness || o.exhausted; };

        auto results = run_branches<Outcome>(n.order(), options.jobs, true, body, done);
        uint64_t total = 0;
        for (auto & r : results) {
            if (! r)
                break;
            total += r->nodes;
            if (r->exhausted || total > options.node_budget)
                throw budget_error(options, "the equivalence search");
            if (r->witness) {
                stats.nodes += total;
                stats.solutions += 1;
                return r->witness;
            }
        }
        stats.nodes += total;
        return std::nullopt;
    }

    auto pairs_equivalent(const CocyclePair & b, const CocyclePair & b2, const SearchOptions & options)
        -> optional<EquivalencePair>
    {
        SearchStats stats;
        return pairs_equivalent(b, b2, options, stats);
    }

    auto nu(const OneCochain & q_cocycle, const ExtensionData & ext) -> CocyclePair
    {
        if (! (*q_cocycle.group == *ext.q))
            throw UsageError("nu of a cochain not valued in the quotient group");
        if (! is_cocycle(q_cocycle))
            throw PreconditionError("nu of a cochain that is not a cocycle");
        auto & k = *q_cocycle.nerve;
        auto & n = *ext.n();
        auto fiber = preimages(ext.xm->i());

        auto result = trivial_pair(q_cocycle.nerve, ext.xm);
        for (std::size_t e = 0; e < k.edges().size(); ++e)
            result.u.values[e] = ext.section[q_cocycle.values[e]];
        for (std::size_t t = 0; t < k.triangles().size(); ++t) {
            auto & f = k.triangle_faces(t);
            auto x = n.mul(n.mul(result.u.values[f.ij], result.u.values[f.jk]), n.inv(result.u.values[f.ik]));
            if (fiber[x].size() != 1)
                throw std::logic_error("section defect is not in the image of i");
            result.g.values[t] = fiber[x][0];
        }
        return result;
    }

    auto pi_n_star(const CocyclePair & b, const ExtensionData & ext) -> AbelianClass
    {
        if (! (*b.xm == *ext.xm))
            throw UsageError("pair and extension have different crossed modules");
        if (auto v = cocycle_pair_violation(b))
            throw PreconditionError("not a cocycle pair: " + *v);
        TwoCochain image{b.g.nerve, ext.ab.g_prime, b.g.values};
        for (auto & x : image.values)
            x = ext.ab.pi_g(x);
        return abelian_class(image);
    }

    auto d_star(const OneCochain & lambda, const CrossedModulePtr & xm) -> CocyclePair
    {
        if (! (*lambda.group == *xm->n()))
            throw UsageError("d_star of a cochain outside the crossed module's N");
        if (! is_cocycle(lambda))
            throw PreconditionError("d_star of a cochain that is not a cocycle");
        auto result = trivial_pair(lambda.nerve, xm);
        result.u.values = lambda.values;
        return result;
    }

    auto AutomorphismData::of(const GroupPtr & g, std::size_t cap) -> AutomorphismData
    {
        AutomorphismData d;
        d.aut = automorphism_group(g, cap);
        d.module = automorphism_module(*d.aut);
        return d;
    }

    auto breve_gamma_star(const CocyclePair & b, const AutomorphismData & aut) -> CocyclePair
    {
        if (! (*aut.module->g() == *b.xm->g()))
            throw UsageError("automorphism data is for another group");
        auto alpha = action_morphism(*b.xm, *aut.aut);
        CocyclePair result{pushforward(alpha, b.u), b.g, aut.module};
        result.u.group = aut.module->n();
        result.g.group = aut.module->g();
        return result;
    }

    auto all_cocycle_pairs(const NervePtr & nerve, const CrossedModulePtr & xm, const SearchOptions & options,
        SearchStats & stats) -> vector<CocyclePair>
    {
        auto & k = *nerve;
        auto np = xm->n();
        auto fiber = preimages(xm->i());
        auto in_image = std::make_shared<vector<char>>(np->order(), 0);
        for (Element x = 0; x < np->order(); ++x)
            (*in_image)[x] = ! fiber[x].empty();

        TriangleRelation rel;
        rel.force = [](std::size_t, int, Element, Element) { return TriangleRelation::unforced; };
        rel.holds = [np, in_image](std::size_t, Element ij, Element jk, Element ik) {
            return bool((*in_image)[np->mul(np->mul(ij, jk), np->inv(ik))]);
        };
        vector<Element> all(np->order());
        for (Element x = 0; x < np->order(); ++x)
            all[x] = x;
        EdgeSolver solver(nerve, np->order(), vector<vector<Element>>(k.edges().size(), all), std::move(rel));
        auto us = solver.enumerate(options, stats);

        // each tetrahedron is checked once its last face is set
        vector<vector<std::size_t>> checks(k.triangles().size());
        for (std::size_t t = 0; t < k.tetrahedra().size(); ++t) {
            auto & f = k.tetrahedron_faces(t);
            checks[std::max({f.ijk, f.ikl, f.jkl, f.ijl})].push_back(t);
        }

        vector<CocyclePair> result;
        auto & g = *xm->g();
        for (auto & u : us) {
            auto pair = trivial_pair(nerve, xm);
            pair.u.values = u;
            vector<vector<Element>> choices;
            for (std::size_t t = 0; t < k.triangles().size(); ++t) {
                auto & f = k.triangle_faces(t);
                choices.push_back(fiber[np->mul(np->mul(u[f.ij], u[f.jk]), np->inv(u[f.ik]))]);
            }
            auto rec = [&](auto & self, std::size_t t) -> void {
                if (t == k.triangles().size()) {
                    result.push_back(pair);
                    ++stats.solutions;
                    return;
                }
                for (auto x : choices[t]) {
                    if (++stats.nodes > options.node_budget)
                        throw budget_error(options, "cocycle pair enumeration");
                    pair.g.values[t] = x;
                    bool ok = true;
                    for (auto s : checks[t]) {
                        auto & f = k.tetrahedron_faces(s);
                        auto & gv = pair.g.values;
                        if (g.mul(gv[f.ijk], gv[f.ikl]) !=
                            g.mul(xm->alpha().apply(u[f.edge_ij], gv[f.jkl]), gv[f.ijl])) {
                            ok = false;
                            break;
                        }
                    }
                    if (ok)
                        self(self, t + 1);
                }
            };
            rec(rec, 0);
        }
        return result;
    }

    auto nonabelian_h2_classes(const NervePtr & k, const CrossedModulePtr & xm, const SearchOptions & options)
        -> ClassSet<CocyclePair>
    {
        ClassSet<CocyclePair> result;
        for (auto & b : all_cocycle_pairs(k, xm, options, result.stats)) {
            bool placed = false;
            for (std::size_t c = 0; c < result.count() && ! placed; ++c)
                if (pairs_equivalent(result.representatives[c], b, options, result.stats)) {
                    ++result.sizes[c];
                    placed = true;
                }
            if (! placed) {
                result.representatives.push_back(b);
                result.sizes.push_back(1);
            }
        }
        result.trivial_index = 0;
        return result;
    }

    auto pair_class_index(const ClassSet<CocyclePair> & classes, const CocyclePair & b, const SearchOptions & options)
        -> std::size_t
    {
        for (std::size_t c = 0; c < classes.count(); ++c)
            if (pairs_equivalent(classes.representatives[c], b, options))
                return c;
        throw PreconditionError("pair is not in any listed class");
    }
}
