#include <cocycle/error.hh>
#include <cocycle/h1.hh>

#include <algorithm>
#include <map>

using std::optional;
using std::vector;

namespace cocycle
{
    namespace
    {
        constexpr Element unset = ~Element(0);

        auto require_same(const FiniteGroup & a, const FiniteGroup & b, const char * what) -> void
        {
            if (! (a == b))
                throw UsageError(std::string("group mismatch: ") + what);
        }

        auto h1_relation(const GroupPtr & gp) -> TriangleRelation
        {
            TriangleRelation r;
            r.force = [gp](std::size_t, int missing, Element a, Element b) -> Element {
                auto & g = *gp;
                switch (missing) {
                case 0: return g.mul(b, g.inv(a));
                case 1: return g.mul(g.inv(a), b);
                default: return g.mul(a, b);
                }
            };
            r.holds = [gp](std::size_t, Element ij, Element jk, Element ik) { return gp->mul(ij, jk) == ik; };
            return r;
        }
    }

    auto cocycle_violation(const OneCochain & c) -> optional<Triangle>
    {
        auto & k = *c.nerve;
        auto & g = *c.group;
        for (std::size_t t = 0; t < k.triangles().size(); ++t) {
            auto & f = k.triangle_faces(t);
            if (g.mul(c.values[f.ij], c.values[f.jk]) != c.values[f.ik])
                return k.triangles()[t];
        }
        return std::nullopt;
    }

    auto is_cocycle(const OneCochain & c) -> bool
    {
        return ! cocycle_violation(c).has_value();
    }

    auto coboundary_transform(const OneCochain & c, const vector<Element> & v) -> OneCochain
    {
        auto & g = *c.group;
        if (v.size() != c.nerve->vertex_count())
            throw UsageError("gauge needs one value per vertex");
        auto result = c;
        for (std::size_t e = 0; e < c.values.size(); ++e) {
            auto [i, j] = c.nerve->edges()[e];
            result.values[e] = g.mul(g.mul(g.inv(v[i]), c.values[e]), v[j]);
        }
        return result;
    }

    auto canonical_gauge(const OneCochain & c) -> vector<Element>
    {
        auto & k = *c.nerve;
        auto & g = *c.group;
        auto m = k.edges().size();
        vector<Element> v(k.vertex_count(), unset), cur(m), best, best_v;

        auto rec = [&](auto & self, std::size_t pos) -> void {
            if (pos == m) {
                if (best.empty() || cur < best) {
                    best = cur;
                    best_v = v;
                }
                return;
            }
            auto [i, j] = k.edges()[pos];
            auto x = c.values[pos];

            auto step = [&](Element value) {
                cur[pos] = value;
                if (! best.empty() &&
                    std::lexicographical_compare(best.begin(), best.begin() + long(pos) + 1, cur.begin(),
                        cur.begin() + long(pos) + 1))
                    return;
                self(self, pos + 1);
            };

            if (v[i] != unset && v[j] != unset)
                step(g.mul(g.mul(g.inv(v[i]), x), v[j]));
            else if (v[i] != unset) {
                v[j] = g.mul(g.inv(x), v[i]);
                step(FiniteGroup::identity);
                v[j] = unset;
            }
            else if (v[j] != unset) {
                v[i] = g.mul(x, v[j]);
                step(FiniteGroup::identity);
                v[i] = unset;
            }
            else {
                for (Element a = 0; a < g.order(); ++a) {
                    v[i] = a;
                    v[j] = g.mul(g.inv(x), a);
                    step(FiniteGroup::identity);
                }
                v[i] = v[j] = unset;
            }
        };
        rec(rec, 0);

        for (auto & x : best_v)
            if (x == unset)
                x = FiniteGroup::identity;
        return best_v;
    }

    auto canonical_form(const OneCochain & c) -> OneCochain
    {
        return coboundary_transform(c, canonical_gauge(c));
    }

    auto cohomologous(const OneCochain & a, const OneCochain & b) -> bool
    {
        require_same(*a.group, *b.group, "cohomologous");
        return canonical_form(a).values == canonical_form(b).values;
    }

    auto gauge_fix(const OneCochain & c, const SpanningTree & tree) -> OneCochain
    {
        auto & g = *c.group;
        vector<Element> v(c.nerve->vertex_count(), FiniteGroup::identity);
        for (std::size_t pos = 1; pos < tree.order.size(); ++pos) {
            auto w = tree.order[pos];
            auto p = tree.parent[w];
            v[w] = g.mul(g.inv(c.at(p, w)), v[p]);
        }
        return coboundary_transform(c, v);
    }

    auto gauge_fixed_cocycles(const NervePtr & k, const GroupPtr & g, const SearchOptions & options,
        SearchStats & stats, Vertex root) -> vector<OneCochain>
    {
        auto tree = spanning_tree(*k, root);
        vector<Element> all(g->order());
        for (Element x = 0; x < g->order(); ++x)
            all[x] = x;
        vector<vector<Element>> domains;
        for (std::size_t e = 0; e < k->edges().size(); ++e)
            domains.push_back(tree.in_tree[e] ? vector<Element>{FiniteGroup::identity} : all);

        EdgeSolver solver(k, g->order(), std::move(domains), h1_relation(g));
        vector<OneCochain> result;
        for (auto & values : solver.enumerate(options, stats))
            result.push_back(OneCochain{k, g, std::move(values)});
        return result;
    }

    auto h1_classes(const NervePtr & k, const GroupPtr & g, const SearchOptions & options, Vertex root)
        -> ClassSet<OneCochain>
    {
        ClassSet<OneCochain> result;
        std::map<vector<Element>, std::uint64_t> counts;
        for (auto & c : gauge_fixed_cocycles(k, g, options, result.stats, root))
            ++counts[canonical_form(c).values];

        auto orbit = count_pow(g->order(), k->vertex_count() - 1);
        for (auto & [values, n] : counts) {
            result.representatives.push_back(OneCochain{k, g, values});
            result.sizes.push_back(count_mul(n, orbit));
        }
        result.trivial_index = 0;
        return result;
    }

    auto class_index(const ClassSet<OneCochain> & classes, const OneCochain & c) -> std::size_t
    {
        auto canon = canonical_form(c);
        for (std::size_t n = 0; n < classes.count(); ++n)
            if (classes.representatives[n].values == canon.values)
                return n;
        throw PreconditionError("cochain is not in any listed class");
    }

    auto pushforward(const GroupMorphism & f, const OneCochain & c) -> OneCochain
    {
        require_same(*f.domain(), *c.group, "pushforward along a morphism from another group");
        OneCochain result{c.nerve, f.codomain(), c.values};
        for (auto & x : result.values)
            x = f(x);
        return result;
    }

    auto gamma_star(const OneCochain & n_cocycle, const CrossedModule & xm, const AutomorphismGroup & aut)
        -> OneCochain
    {
        return pushforward(action_morphism(xm, aut), n_cocycle);
    }

    auto chern(const OneCochain & q_cocycle, const GroupMorphism & chi) -> ChernClass
    {
        if (! chi.codomain()->is_cyclic())
            throw UsageError("chern needs a morphism into a cyclic group");
        if (! is_cocycle(q_cocycle))
            throw PreconditionError("chern of a cochain that is not a cocycle");
        ChernClass result;
        result.cocycle = pushforward(chi, q_cocycle);
        result.canonical = canonical_form(result.cocycle);
        result.trivial = std::all_of(result.canonical.values.begin(), result.canonical.values.end(),
            [](Element x) { return x == FiniteGroup::identity; });
        return result;
    }
}
