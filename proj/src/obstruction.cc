#include <cocycle/error.hh>
#include <cocycle/obstruction.hh>

#include <algorithm>
#include <map>

using std::optional;
using std::vector;

namespace cocycle
{
    namespace
    {
        auto is_trivial(const OneCochain & c) -> bool
        {
            return std::all_of(c.values.begin(), c.values.end(), [](Element x) { return x == FiniteGroup::identity; });
        }

        auto all_elements(std::size_t order) -> vector<Element>
        {
            vector<Element> r(order);
            for (Element x = 0; x < order; ++x)
                r[x] = x;
            return r;
        }
    }

    auto delta(const OneCochain & q_cocycle, const ExtensionData & ext) -> AbelianClass
    {
        return pi_n_star(nu(q_cocycle, ext), ext);
    }

    auto find_lifts(const OneCochain & q_cocycle, const ExtensionData & ext, Granularity granularity,
        const SearchOptions & options) -> LiftResult
    {
        if (! (*q_cocycle.group == *ext.q))
            throw UsageError("lift of a cochain not valued in the quotient group");
        if (! is_cocycle(q_cocycle))
            throw PreconditionError("lift of a cochain that is not a cocycle");
        auto nerve = q_cocycle.nerve;
        auto & k = *nerve;
        auto np = ext.n();
        auto tree = spanning_tree(k);

        vector<vector<Element>> fibres(ext.q->order());
        for (Element x = 0; x < np->order(); ++x)
            fibres[ext.p(x)].push_back(x);
        vector<vector<Element>> domains;
        for (std::size_t e = 0; e < k.edges().size(); ++e) {
            auto y = q_cocycle.values[e];
            domains.push_back(tree.in_tree[e] ? vector<Element>{ext.section[y]} : fibres[y]);
        }

        TriangleRelation rel;
        rel.force = [np](std::size_t, int missing, Element a, Element b) -> Element {
            auto & n = *np;
            switch (missing) {
            case 0: return n.mul(b, n.inv(a));
            case 1: return n.mul(n.inv(a), b);
            default: return n.mul(a, b);
            }
        };
        rel.holds = [np](std::size_t, Element ij, Element jk, Element ik) { return np->mul(ij, jk) == ik; };

        EdgeSolver solver(nerve, np->order(), std::move(domains), std::move(rel));
        LiftResult result;
        auto found = solver.enumerate(options, result.stats);
        if (granularity == Granularity::cocycles) {
            for (auto & values : found)
                result.lifts.push_back(OneCochain{nerve, np, std::move(values)});
            return result;
        }
        std::map<vector<Element>, int> classes;
        for (auto & values : found)
            classes[canonical_form(OneCochain{nerve, np, values}).values] = 0;
        for (auto & [values, unused] : classes)
            result.lifts.push_back(OneCochain{nerve, np, values});
        return result;
    }

    auto ExactnessReport::exact() const -> optional<bool>
    {
        if (! central)
            return std::nullopt;
        return composite_trivial && image_in_kernel && kernel_in_image;
    }

    auto ExactnessReport::passed() const -> bool
    {
        return composite_trivial && image_in_kernel && (! central || kernel_in_image);
    }

    auto check_exactness(const NervePtr & k, const ExtensionData & ext, const SearchOptions & options)
        -> ExactnessReport
    {
        ExactnessReport r;
        r.central = ext.central;
        auto p_of_i = compose(ext.p, ext.xm->i());

        auto gs = h1_classes(k, ext.g(), options);
        r.stats += gs.stats;
        r.g_classes = gs.count();
        for (auto & c : gs.representatives)
            if (! is_trivial(canonical_form(pushforward(p_of_i, c)))) {
                r.composite_trivial = false;
                r.counterexamples.push_back({"composite_trivial", c});
            }

        auto ns = h1_classes(k, ext.n(), options);
        r.stats += ns.stats;
        r.n_classes = ns.count();
        for (auto & c : ns.representatives)
            if (! delta(pushforward(ext.p, c), ext).trivial()) {
                r.image_in_kernel = false;
                r.counterexamples.push_back({"image_in_kernel", c});
            }

        auto qs = h1_classes(k, ext.q, options);
        r.stats += qs.stats;
        r.q_classes = qs.count();
        for (std::size_t n = 0; n < qs.count(); ++n) {
            auto & q = qs.representatives[n];
            auto trivial_delta = delta(q, ext).trivial();
            auto lifts = find_lifts(q, ext, Granularity::classes, options);
            r.stats += lifts.stats;
            auto lifted = ! lifts.lifts.empty();
            if (lifted)
                r.image_classes.push_back(n);
            if (trivial_delta)
                r.kernel_classes.push_back(n);
            if (lifted && ! trivial_delta) {
                r.image_in_kernel = false;
                r.counterexamples.push_back({"image_in_kernel", q});
            }
            if (trivial_delta && ! lifted) {
                r.kernel_in_image = false;
                r.counterexamples.push_back({"kernel_in_image", q});
            }
        }
        return r;
    }

    auto check_square(const NervePtr & k, const ExtensionData & ext, const SearchOptions & options,
        bool all_cocycles) -> SquareReport
    {
        SquareReport r;
        r.all_cocycles = all_cocycles;
        auto aut = AutomorphismData::of(ext.g());
        auto np = ext.n();

        auto test = [&](const OneCochain & u) {
            auto left = d_star(gamma_star(u, *ext.xm, *aut.aut), aut.module);
            auto right = breve_gamma_star(nu(pushforward(ext.p, u), ext), aut);
            ++r.checked;
            if (! pairs_equivalent(left, right, options, r.stats)) {
                ++r.failures;
                r.failing.push_back(u);
            }
        };

        auto tree = spanning_tree(*k);
        for (auto & u : gauge_fixed_cocycles(k, np, options, r.stats)) {
            if (! all_cocycles) {
                test(u);
                continue;
            }
            // every gauge with v_root = e, as an odometer over the other vertices
            vector<Element> v(k->vertex_count(), 0);
            while (true) {
                test(coboundary_transform(u, v));
                std::size_t pos = 0;
                while (pos < v.size()) {
                    if (pos == tree.root) {
                        ++pos;
                        continue;
                    }
                    if (++v[pos] < np->order())
                        break;
                    v[pos] = 0;
                    ++pos;
                }
                if (pos == v.size())
                    break;
            }
        }
        return r;
    }

    auto gerbe_class(const OneCochain & q_cocycle, const ExtensionData & ext, const SearchOptions & options)
        -> GerbeResult
    {
        GerbeResult r;
        auto aut = AutomorphismData::of(ext.g());
        r.pair = breve_gamma_star(nu(q_cocycle, ext), aut);
        auto lambdas = h1_classes(q_cocycle.nerve, aut.aut->aut, options);
        r.stats += lambdas.stats;
        for (auto & lambda : lambdas.representatives)
            if (pairs_equivalent(d_star(lambda, aut.module), r.pair, options, r.stats)) {
                r.collapsed = true;
                r.lambda = lambda;
                break;
            }
        auto lifts = find_lifts(q_cocycle, ext, Granularity::classes, options);
        r.stats += lifts.stats;
        r.lifts_exist = ! lifts.lifts.empty();
        r.agrees = r.collapsed == r.lifts_exist;
        return r;
    }

    auto classify_gauge_lifts(const OneCochain & q_cocycle, const ExtensionData & ext, const SearchOptions & options)
        -> GaugeGrouping
    {
        GaugeGrouping r;
        auto lifts = find_lifts(q_cocycle, ext, Granularity::classes, options);
        r.stats += lifts.stats;
        r.lifts = std::move(lifts.lifts);
        if (r.lifts.empty())
            return r;

        auto aut = AutomorphismData::of(ext.g());
        std::map<vector<Element>, vector<std::size_t>> groups;
        for (std::size_t n = 0; n < r.lifts.size(); ++n)
            groups[canonical_form(gamma_star(r.lifts[n], *ext.xm, *aut.aut)).values].push_back(n);
        for (auto & [values, members] : groups)
            r.groups.push_back(GaugeGroup{OneCochain{q_cocycle.nerve, aut.aut->aut, values}, members});
        r.duality_breaking = r.lifts.size() >= 2;
        r.gauge_breaking = r.groups.size() >= 2;
        return r;
    }

    auto solve_coboundary_realization(const TwoCochain & g2, const ExtensionData & ext, const SearchOptions & options,
        SearchStats & stats) -> optional<OneCochain>
    {
        auto & ab = ext.ab;
        if (! (*g2.group == *ab.g_prime))
            throw UsageError("realization target is not valued in G'");
        abelian_class(g2);

        auto nerve = g2.nerve;
        auto & k = *nerve;
        auto xm = ext.xm;
        auto np = ext.n();
        auto triangles = k.triangles().size();

        // allowed values of u_ij u_jk u_ik^-1 per triangle
        vector<vector<char>> allowed(triangles, vector<char>(np->order(), 0));
        vector<Element> only(triangles, TriangleRelation::unforced);
        vector<Element> preimage(np->order(), TriangleRelation::conflict);
        for (Element x = 0; x < ext.g()->order(); ++x)
            preimage[xm->i()(x)] = x;
        for (std::size_t t = 0; t < triangles; ++t) {
            std::size_t n = 0;
            for (Element x = 0; x < ext.g()->order(); ++x)
                if (ab.pi_g(x) == g2.values[t]) {
                    allowed[t][xm->i()(x)] = 1;
                    only[t] = xm->i()(x);
                    ++n;
                }
            if (n != 1)
                only[t] = TriangleRelation::unforced;
            if (n == 0)
                return std::nullopt;
        }

        TriangleRelation rel;
        rel.force = [np, only](std::size_t t, int missing, Element a, Element b) -> Element {
            auto & n = *np;
            auto s = only[t];
            if (s == TriangleRelation::unforced)
                return s;
            switch (missing) {
            case 0: return n.mul(n.mul(s, b), n.inv(a));
            case 1: return n.mul(n.mul(n.inv(a), s), b);
            default: return n.mul(n.inv(s), n.mul(a, b));
            }
        };
        rel.holds = [np, allowed](std::size_t t, Element ij, Element jk, Element ik) {
            return bool(allowed[t][np->mul(np->mul(ij, jk), np->inv(ik))]);
        };

        auto tree = spanning_tree(k);
        vector<vector<Element>> domains;
        for (std::size_t e = 0; e < k.edges().size(); ++e)
            domains.push_back(tree.in_tree[e] ? vector<Element>{FiniteGroup::identity} : all_elements(np->order()));
        EdgeSolver solver(nerve, np->order(), std::move(domains), std::move(rel));
        solver.set_filter([&](const vector<Element> & u) {
            CocyclePair pair = trivial_pair(nerve, xm);
            pair.u.values = u;
            for (std::size_t t = 0; t < triangles; ++t) {
                auto & f = k.triangle_faces(t);
                pair.g.values[t] = preimage[np->mul(np->mul(u[f.ij], u[f.jk]), np->inv(u[f.ik]))];
            }
            return is_cocycle_pair(pair);
        });
        auto u = solver.first(options, stats);
        if (! u)
            return std::nullopt;
        return OneCochain{nerve, np, std::move(*u)};
    }

    auto obstruction_report(const OneCochain & q_cocycle, const ExtensionData & ext, Granularity granularity,
        const SearchOptions & options) -> ObstructionReport
    {
        ObstructionReport r;
        r.input = q_cocycle;
        r.input_class = canonical_form(q_cocycle);
        r.delta = delta(q_cocycle, ext);
        auto lifts = find_lifts(q_cocycle, ext, granularity, options);
        r.stats += lifts.stats;
        r.lifts = std::move(lifts.lifts);
        r.gauge = classify_gauge_lifts(q_cocycle, ext, options);
        r.stats += r.gauge.stats;
        r.flags["delta_trivial"] = r.delta.trivial();
        r.flags["lift_exists"] = ! r.lifts.empty();
        r.flags["duality_breaking"] = r.gauge.duality_breaking;
        r.flags["gauge_breaking"] = r.gauge.gauge_breaking;
        r.flags["consistent"] = r.lifts.empty() || r.delta.trivial();
        return r;
    }
}
