#include <cocycle/error.hh>
#include <cocycle/group.hh>

#include <algorithm>
#include <deque>
#include <numeric>

using std::optional;
using std::pair;
using std::string;
using std::string_view;
using std::vector;

namespace cocycle
{
    namespace
    {
        auto closure(const FiniteGroup & g, vector<char> & member, vector<Element> & elements,
            const vector<Element> & gens) -> void
        {
            std::deque<Element> queue(elements.begin(), elements.end());
            while (! queue.empty()) {
                auto x = queue.front();
                queue.pop_front();
                for (auto s : gens) {
                    auto y = g.mul(x, s);
                    if (! member[y]) {
                        member[y] = 1;
                        elements.push_back(y);
                        queue.push_back(y);
                    }
                }
            }
        }

        auto to_subset(const vector<char> & member) -> Subset
        {
            Subset result;
            for (Element x = 0; x < member.size(); ++x)
                if (member[x])
                    result.push_back(x);
            return result;
        }

        auto greedy_generators(const FiniteGroup & g) -> vector<Element>
        {
            vector<Element> gens;
            vector<char> member(g.order(), 0);
            member[0] = 1;
            vector<Element> elements{0};
            for (Element x = 1; x < g.order(); ++x) {
                if (member[x])
                    continue;
                gens.push_back(x);
                member[x] = 1;
                elements.push_back(x);
                closure(g, member, elements, gens);
            }
            return gens;
        }

        auto word_name(const vector<std::size_t> & word) -> string
        {
            if (word.empty())
                return "e";
            auto letter = [](std::size_t k) -> string {
                if (k < 26)
                    return string(1, char('a' + k));
                return "g" + std::to_string(k);
            };
            string result;
            std::size_t pos = 0;
            while (pos < word.size()) {
                auto end = pos;
                while (end < word.size() && word[end] == word[pos])
                    ++end;
                if (! result.empty())
                    result += "*";
                result += letter(word[pos]);
                if (end - pos > 1)
                    result += "^" + std::to_string(end - pos);
                pos = end;
            }
            return result;
        }

        auto is_permutation(const Permutation & p) -> bool
        {
            vector<char> seen(p.size(), 0);
            for (auto x : p) {
                if (x >= p.size() || seen[x])
                    return false;
                seen[x] = 1;
            }
            return true;
        }

        auto index_of(const Subset & subset, Element x) -> std::size_t
        {
            auto it = std::lower_bound(subset.begin(), subset.end(), x);
            return std::size_t(it - subset.begin());
        }
    }

    auto FiniteGroup::from_table(std::size_t order, vector<Element> table, vector<string> names) -> FiniteGroup
    {
        if (order == 0)
            throw StructureError("group of order zero");
        if (table.size() != order * order)
            throw StructureError("multiplication table has " + std::to_string(table.size()) + " entries, expected " +
                std::to_string(order * order));
        for (auto x : table)
            if (x >= order)
                throw StructureError("multiplication table entry " + std::to_string(x) + " out of range");

        auto at = [&](Element a, Element b) { return table[a * order + b]; };
        for (Element a = 0; a < order; ++a)
            if (at(0, a) != a || at(a, 0) != a)
                throw StructureError("element 0 is not a two-sided identity");

        for (Element a = 0; a < order; ++a) {
            vector<char> row(order, 0), col(order, 0);
            for (Element b = 0; b < order; ++b) {
                if (row[at(a, b)]++ || col[at(b, a)]++)
                    throw StructureError("multiplication table is not a Latin square at element " + std::to_string(a));
            }
        }

        for (Element a = 0; a < order; ++a)
            for (Element b = 0; b < order; ++b) {
                auto ab = at(a, b);
                for (Element c = 0; c < order; ++c)
                    if (at(ab, c) != at(a, at(b, c)))
                        throw StructureError("multiplication is not associative on (" + std::to_string(a) + ", " +
                            std::to_string(b) + ", " + std::to_string(c) + ")");
            }

        FiniteGroup g;
        g._order = order;
        g._table = std::move(table);
        g._inverse.assign(order, 0);
        for (Element a = 0; a < order; ++a)
            for (Element b = 0; b < order; ++b)
                if (g.mul(a, b) == 0)
                    g._inverse[a] = b;

        if (names.empty()) {
            names.resize(order);
            for (Element a = 0; a < order; ++a)
                names[a] = std::to_string(a);
        }
        if (names.size() != order)
            throw StructureError("expected " + std::to_string(order) + " element names, got " +
                std::to_string(names.size()));
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw StructureError("element names are not unique");
        for (auto & n : names)
            if (n.empty() || n.front() == '#')
                throw StructureError("invalid element name '" + n + "'");
        g._names = std::move(names);
        g._generators = greedy_generators(g);
        return g;
    }

    auto FiniteGroup::power(Element a, std::size_t k) const -> Element
    {
        Element result = identity;
        for (std::size_t j = 0; j < k; ++j)
            result = mul(result, a);
        return result;
    }

    auto FiniteGroup::element_order(Element a) const -> std::size_t
    {
        std::size_t k = 1;
        for (Element x = a; x != identity; x = mul(x, a))
            ++k;
        return k;
    }

    auto FiniteGroup::find(string_view name) const -> optional<Element>
    {
        if (! name.empty() && name.front() == '#') {
            Element k = 0;
            for (auto c : name.substr(1)) {
                if (c < '0' || c > '9')
                    return std::nullopt;
                k = k * 10 + Element(c - '0');
                if (k >= _order)
                    return std::nullopt;
            }
            if (name.size() == 1)
                return std::nullopt;
            return k;
        }
        for (Element a = 0; a < _order; ++a)
            if (_names[a] == name)
                return a;
        return std::nullopt;
    }

    auto FiniteGroup::element(string_view name) const -> Element
    {
        if (auto x = find(name))
            return *x;
        throw UsageError("no element named '" + string(name) + "'");
    }

    auto FiniteGroup::is_abelian() const -> bool
    {
        for (Element a = 0; a < _order; ++a)
            for (Element b = a + 1; b < _order; ++b)
                if (mul(a, b) != mul(b, a))
                    return false;
        return true;
    }

    auto FiniteGroup::is_cyclic() const -> bool
    {
        for (Element a = 0; a < _order; ++a)
            if (element_order(a) == _order)
                return true;
        return false;
    }

    auto compose_permutations(const Permutation & outer, const Permutation & inner) -> Permutation
    {
        Permutation result(inner.size());
        for (std::size_t x = 0; x < inner.size(); ++x)
            result[x] = outer[inner[x]];
        return result;
    }

    auto group_from_generators(std::size_t degree, const vector<Permutation> & generators, std::size_t order_cap)
        -> GroupPtr
    {
        for (auto & p : generators)
            if (p.size() != degree || ! is_permutation(p))
                throw StructureError("generator is not a permutation of 0.." + std::to_string(degree) + "-1");

        Permutation id(degree);
        std::iota(id.begin(), id.end(), 0);

        vector<Permutation> elements{id};
        vector<vector<std::size_t>> words{{}};
        std::map<Permutation, Element> index{{id, 0}};
        for (std::size_t head = 0; head < elements.size(); ++head) {
            for (std::size_t k = 0; k < generators.size(); ++k) {
                auto next = compose_permutations(elements[head], generators[k]);
                if (index.contains(next))
                    continue;
                if (elements.size() >= order_cap)
                    throw SizeError("group closure exceeds order cap " + std::to_string(order_cap));
                index.emplace(next, Element(elements.size()));
                auto w = words[head];
                w.push_back(k);
                elements.push_back(std::move(next));
                words.push_back(std::move(w));
            }
        }

        auto n = elements.size();
        vector<Element> table(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                table[a * n + b] = index.at(compose_permutations(elements[a], elements[b]));

        vector<string> names;
        for (auto & w : words)
            names.push_back(word_name(w));
        return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(n, std::move(table), std::move(names)));
    }

    namespace
    {
        auto cycles(std::size_t degree, const vector<vector<std::uint32_t>> & cs) -> Permutation
        {
            Permutation p(degree);
            std::iota(p.begin(), p.end(), 0);
            for (auto & c : cs)
                for (std::size_t k = 0; k < c.size(); ++k)
                    p[c[k]] = c[(k + 1) % c.size()];
            return p;
        }

        struct BuiltinGroup
        {
            string name;
            std::size_t degree;
            vector<vector<vector<std::uint32_t>>> gens;
        };

        auto builtin_table() -> const vector<BuiltinGroup> &
        {
            // Q8 acts on itself by left multiplication; elements 1,-1,i,-i,j,-j,k,-k are points 0..7.
            static const vector<BuiltinGroup> table{
                {"Z1", 1, {}},
                {"Z2", 2, {{{0, 1}}}},
                {"Z3", 3, {{{0, 1, 2}}}},
                {"Z4", 4, {{{0, 1, 2, 3}}}},
                {"Z6", 6, {{{0, 1, 2, 3, 4, 5}}}},
                {"Z2xZ2", 4, {{{0, 1}}, {{2, 3}}}},
                {"S3", 3, {{{0, 1}}, {{0, 1, 2}}}},
                {"Q8", 8, {{{0, 2, 1, 3}, {4, 6, 5, 7}}, {{0, 4, 1, 5}, {2, 7, 3, 6}}}},
                {"D4", 4, {{{0, 1, 2, 3}}, {{0, 2}}}},
            };
            return table;
        }
    }

    auto builtin_group(string_view name) -> GroupPtr
    {
        for (auto & b : builtin_table())
            if (b.name == name) {
                vector<Permutation> gens;
                for (auto & g : b.gens)
                    gens.push_back(cycles(b.degree, g));
                return group_from_generators(b.degree, gens);
            }
        throw UsageError("unknown built-in group '" + string(name) + "'");
    }

    auto builtin_group_names() -> const vector<string> &
    {
        static const vector<string> names = [] {
            vector<string> r;
            for (auto & b : builtin_table())
                r.push_back(b.name);
            return r;
        }();
        return names;
    }

    auto generated_subgroup(const FiniteGroup & g, const vector<Element> & generators) -> Subset
    {
        vector<char> member(g.order(), 0);
        member[0] = 1;
        vector<Element> elements{0};
        closure(g, member, elements, generators);
        return to_subset(member);
    }

    auto is_subgroup(const FiniteGroup & g, const Subset & subset) -> bool
    {
        if (subset.empty() || ! std::is_sorted(subset.begin(), subset.end()) || subset.front() != 0)
            return false;
        if (std::adjacent_find(subset.begin(), subset.end()) != subset.end() || subset.back() >= g.order())
            return false;
        vector<char> member(g.order(), 0);
        for (auto x : subset)
            member[x] = 1;
        for (auto a : subset)
            for (auto b : subset)
                if (! member[g.mul(a, g.inv(b))])
                    return false;
        return true;
    }

    auto is_normal_subgroup(const FiniteGroup & g, const Subset & subset) -> bool
    {
        if (! is_subgroup(g, subset))
            return false;
        vector<char> member(g.order(), 0);
        for (auto x : subset)
            member[x] = 1;
        for (Element u = 0; u < g.order(); ++u)
            for (auto x : subset)
                if (! member[g.conj(u, x)])
                    return false;
        return true;
    }

    auto normal_closure(const FiniteGroup & g, const vector<Element> & seeds) -> Subset
    {
        vector<char> member(g.order(), 0);
        member[0] = 1;
        vector<Element> elements{0};
        vector<Element> gens;
        for (auto s : seeds)
            for (Element u = 0; u < g.order(); ++u)
                gens.push_back(g.conj(u, s));
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        closure(g, member, elements, gens);
        return to_subset(member);
    }

    auto center(const FiniteGroup & g) -> Subset
    {
        Subset result;
        for (Element a = 0; a < g.order(); ++a) {
            bool central = true;
            for (Element b = 0; b < g.order() && central; ++b)
                central = g.mul(a, b) == g.mul(b, a);
            if (central)
                result.push_back(a);
        }
        return result;
    }

    auto homomorphism_violation(const FiniteGroup & domain, const FiniteGroup & codomain, const vector<Element> & image)
        -> optional<string>
    {
        if (image.size() != domain.order())
            return "image map has " + std::to_string(image.size()) + " entries, expected " +
                std::to_string(domain.order());
        for (auto y : image)
            if (y >= codomain.order())
                return "image " + std::to_string(y) + " out of range";
        if (image[0] != 0)
            return "identity is not mapped to the identity";
        for (Element a = 0; a < domain.order(); ++a)
            for (Element b = 0; b < domain.order(); ++b)
                if (image[domain.mul(a, b)] != codomain.mul(image[a], image[b]))
                    return "f(" + domain.name(a) + " * " + domain.name(b) + ") != f(" + domain.name(a) + ") * f(" +
                        domain.name(b) + ")";
        return std::nullopt;
    }

    auto GroupMorphism::make(GroupPtr domain, GroupPtr codomain, vector<Element> image) -> GroupMorphism
    {
        if (auto v = homomorphism_violation(*domain, *codomain, image))
            throw StructureError("not a homomorphism: " + *v);
        GroupMorphism f;
        f._domain = std::move(domain);
        f._codomain = std::move(codomain);
        f._image = std::move(image);
        return f;
    }

    auto GroupMorphism::from_images(GroupPtr domain, GroupPtr codomain,
        const vector<pair<Element, Element>> & prescribed) -> GroupMorphism
    {
        constexpr Element unset = ~Element(0);
        vector<Element> image(domain->order(), unset);
        image[0] = 0;
        for (auto [x, y] : prescribed) {
            if (x >= domain->order() || y >= codomain->order())
                throw StructureError("prescribed image out of range");
            if (image[x] != unset && image[x] != y)
                throw StructureError("conflicting images for " + domain->name(x));
            image[x] = y;
        }

        vector<Element> gens;
        for (auto [x, _] : prescribed)
            gens.push_back(x);

        std::deque<Element> queue{0};
        vector<char> seen(domain->order(), 0);
        seen[0] = 1;
        while (! queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (auto s : gens) {
                auto y = domain->mul(x, s);
                auto fy = codomain->mul(image[x], image[s]);
                if (image[y] == unset)
                    image[y] = fy;
                else if (image[y] != fy)
                    throw StructureError("prescribed images do not extend to a homomorphism (conflict at " +
                        domain->name(y) + ")");
                if (! seen[y]) {
                    seen[y] = 1;
                    queue.push_back(y);
                }
            }
        }
        for (Element x = 0; x < domain->order(); ++x)
            if (! seen[x])
                throw StructureError("prescribed elements do not generate the domain (missing " + domain->name(x) + ")");
        return make(std::move(domain), std::move(codomain), std::move(image));
    }

    auto GroupMorphism::identity(GroupPtr g) -> GroupMorphism
    {
        vector<Element> image(g->order());
        std::iota(image.begin(), image.end(), 0);
        GroupMorphism f;
        f._domain = g;
        f._codomain = std::move(g);
        f._image = std::move(image);
        return f;
    }

    auto GroupMorphism::is_injective() const -> bool { return kernel().size() == 1; }

    auto GroupMorphism::is_surjective() const -> bool { return image_set().size() == _codomain->order(); }

    auto GroupMorphism::kernel() const -> Subset
    {
        Subset k;
        for (Element x = 0; x < _image.size(); ++x)
            if (_image[x] == 0)
                k.push_back(x);
        return k;
    }

    auto GroupMorphism::image_set() const -> Subset
    {
        Subset s = _image;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    auto operator==(const GroupMorphism & a, const GroupMorphism & b) -> bool
    {
        auto same = [](const GroupPtr & x, const GroupPtr & y) { return x == y || (x && y && *x == *y); };
        return same(a._domain, b._domain) && same(a._codomain, b._codomain) && a._image == b._image;
    }

    auto compose(const GroupMorphism & outer, const GroupMorphism & inner) -> GroupMorphism
    {
        if (! (*outer.domain() == *inner.codomain()))
            throw UsageError("cannot compose morphisms: codomain and domain differ");
        vector<Element> image(inner.domain()->order());
        for (Element x = 0; x < image.size(); ++x)
            image[x] = outer(inner(x));
        return GroupMorphism::make(inner.domain(), outer.codomain(), std::move(image));
    }

    auto action_violation(const FiniteGroup & actor, const FiniteGroup & target, const vector<Permutation> & perms)
        -> optional<string>
    {
        if (perms.size() != actor.order())
            return "action has " + std::to_string(perms.size()) + " permutations, expected " +
                std::to_string(actor.order());
        for (Element u = 0; u < actor.order(); ++u) {
            auto & p = perms[u];
            if (p.size() != target.order() || ! is_permutation(p))
                return "action of " + actor.name(u) + " is not a permutation of the target";
            if (auto v = homomorphism_violation(target, target, p))
                return "action of " + actor.name(u) + " is not an automorphism: " + *v;
        }
        for (Element x = 0; x < target.order(); ++x)
            if (perms[0][x] != x)
                return "identity does not act trivially";
        for (Element u = 0; u < actor.order(); ++u)
            for (Element v = 0; v < actor.order(); ++v)
                if (perms[actor.mul(u, v)] != compose_permutations(perms[u], perms[v]))
                    return "act(" + actor.name(u) + " * " + actor.name(v) + ") != act(" + actor.name(u) + ") o act(" +
                        actor.name(v) + ")";
        return std::nullopt;
    }

    auto GroupAction::make(GroupPtr actor, GroupPtr target, vector<Permutation> perms) -> GroupAction
    {
        if (auto v = action_violation(*actor, *target, perms))
            throw StructureError("not a group action: " + *v);
        GroupAction a;
        a._actor = std::move(actor);
        a._target = std::move(target);
        a._perms = std::move(perms);
        return a;
    }

    auto GroupAction::trivial(GroupPtr actor, GroupPtr target) -> GroupAction
    {
        Permutation id(target->order());
        std::iota(id.begin(), id.end(), 0);
        vector<Permutation> perms(actor->order(), id);
        return make(std::move(actor), std::move(target), std::move(perms));
    }

    auto GroupAction::conjugation(const GroupMorphism & i) -> GroupAction
    {
        if (! i.is_injective())
            throw StructureError("conjugation action needs an injective i");
        auto & n = *i.codomain();
        auto & g = *i.domain();
        constexpr Element unset = ~Element(0);
        vector<Element> preimage(n.order(), unset);
        for (Element x = 0; x < g.order(); ++x)
            preimage[i(x)] = x;

        vector<Permutation> perms(n.order(), Permutation(g.order()));
        for (Element u = 0; u < n.order(); ++u)
            for (Element x = 0; x < g.order(); ++x) {
                auto y = preimage[n.conj(u, i(x))];
                if (y == unset)
                    throw StructureError("image of i is not normal: " + n.name(u) + " conjugates " + g.name(x) +
                        " outside it");
                perms[u][x] = y;
            }
        return make(i.codomain(), i.domain(), std::move(perms));
    }

    auto operator==(const GroupAction & a, const GroupAction & b) -> bool
    {
        auto same = [](const GroupPtr & x, const GroupPtr & y) { return x == y || (x && y && *x == *y); };
        return same(a._actor, b._actor) && same(a._target, b._target) && a._perms == b._perms;
    }

    auto crossed_module_violation(const FiniteGroup & g, const FiniteGroup & n, const vector<Element> & i,
        const vector<Permutation> & alpha) -> optional<string>
    {
        if (auto v = homomorphism_violation(g, n, i))
            return "i: " + *v;
        if (auto v = action_violation(n, g, alpha))
            return "alpha: " + *v;
        for (Element u = 0; u < n.order(); ++u)
            for (Element x = 0; x < g.order(); ++x)
                if (i[alpha[u][x]] != n.conj(u, i[x]))
                    return "equivariance fails: i(alpha_" + n.name(u) + "(" + g.name(x) + ")) != " + n.name(u) + " i(" +
                        g.name(x) + ") " + n.name(u) + "^-1";
        for (Element x = 0; x < g.order(); ++x)
            for (Element y = 0; y < g.order(); ++y)
                if (alpha[i[x]][y] != g.conj(x, y))
                    return "Peiffer identity fails: alpha_i(" + g.name(x) + ")(" + g.name(y) + ") != " + g.name(x) + " " +
                        g.name(y) + " " + g.name(x) + "^-1";
        return std::nullopt;
    }

    auto CrossedModule::make(GroupMorphism i, GroupAction alpha) -> CrossedModule
    {
        if (! (*alpha.actor() == *i.codomain()) || ! (*alpha.target() == *i.domain()))
            throw StructureError("action groups do not match the morphism");
        if (auto v = crossed_module_violation(*i.domain(), *i.codomain(), i.images(), alpha.permutations()))
            throw StructureError("not a crossed module: " + *v);
        return CrossedModule(std::move(i), std::move(alpha));
    }

    auto subgroup_group(const GroupPtr & parent, const Subset & subset) -> pair<GroupPtr, GroupMorphism>
    {
        if (! is_subgroup(*parent, subset))
            throw StructureError("element set is not a subgroup");
        auto k = subset.size();
        vector<Element> table(k * k);
        vector<string> names;
        for (std::size_t a = 0; a < k; ++a) {
            names.push_back(parent->name(subset[a]));
            for (std::size_t b = 0; b < k; ++b)
                table[a * k + b] = Element(index_of(subset, parent->mul(subset[a], subset[b])));
        }
        auto sub = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(k, std::move(table), std::move(names)));
        auto inclusion = GroupMorphism::make(sub, parent, subset);
        return {sub, inclusion};
    }

    auto normal_subgroup_module(const GroupPtr & n, const Subset & subset) -> CrossedModulePtr
    {
        if (! is_normal_subgroup(*n, subset))
            throw StructureError("element set is not a normal subgroup");
        auto [g, i] = subgroup_group(n, subset);
        auto alpha = GroupAction::conjugation(i);
        return std::make_shared<const CrossedModule>(CrossedModule::make(std::move(i), std::move(alpha)));
    }

    auto quotient(const GroupPtr & n, const Subset & normal_subgroup) -> Quotient
    {
        if (! is_subgroup(*n, normal_subgroup))
            throw StructureError("quotient by a subset that is not a subgroup");
        if (! is_normal_subgroup(*n, normal_subgroup))
            throw StructureError("quotient by a subgroup that is not normal");

        constexpr Element unset = ~Element(0);
        vector<Element> coset(n->order(), unset);
        vector<Element> reps;
        for (Element x = 0; x < n->order(); ++x) {
            if (coset[x] != unset)
                continue;
            auto c = Element(reps.size());
            reps.push_back(x);
            for (auto h : normal_subgroup)
                coset[n->mul(x, h)] = c;
        }

        auto k = reps.size();
        vector<Element> table(k * k);
        vector<string> names;
        for (std::size_t a = 0; a < k; ++a) {
            names.push_back(n->name(reps[a]));
            for (std::size_t b = 0; b < k; ++b)
                table[a * k + b] = coset[n->mul(reps[a], reps[b])];
        }
        auto q = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(k, std::move(table), std::move(names)));
        auto p = GroupMorphism::make(n, q, coset);
        return Quotient{q, std::move(p), std::move(reps)};
    }

    auto AutomorphismGroup::element_of(const Permutation & automorphism) const -> Element
    {
        auto it = index.find(automorphism);
        if (it == index.end())
            throw StructureError("permutation is not an automorphism");
        return it->second;
    }

    auto automorphism_group(const GroupPtr & gp, std::size_t cap) -> AutomorphismGroupPtr
    {
        auto & g = *gp;
        if (g.order() > cap)
            throw SizeError("automorphism search needs order <= " + std::to_string(cap) + ", group has order " +
                std::to_string(g.order()));

        auto gens = g.generators();
        // BFS parents let any map on generators be extended in one pass
        vector<Element> parent(g.order(), 0), via(g.order(), 0), order_bfs{0};
        {
            vector<char> seen(g.order(), 0);
            seen[0] = 1;
            for (std::size_t head = 0; head < order_bfs.size(); ++head)
                for (std::size_t k = 0; k < gens.size(); ++k) {
                    auto y = g.mul(order_bfs[head], gens[k]);
                    if (! seen[y]) {
                        seen[y] = 1;
                        parent[y] = order_bfs[head];
                        via[y] = Element(k);
                        order_bfs.push_back(y);
                    }
                }
        }

        vector<vector<Element>> candidates;
        for (auto s : gens) {
            vector<Element> c;
            for (Element y = 0; y < g.order(); ++y)
                if (g.element_order(y) == g.element_order(s))
                    c.push_back(y);
            candidates.push_back(std::move(c));
        }

        vector<Permutation> found;
        vector<Element> choice(gens.size());
        auto extend = [&]() -> optional<Permutation> {
            Permutation image(g.order());
            image[0] = 0;
            for (std::size_t pos = 1; pos < order_bfs.size(); ++pos) {
                auto y = order_bfs[pos];
                image[y] = g.mul(image[parent[y]], choice[via[y]]);
            }
            if (homomorphism_violation(g, g, image) || ! is_permutation(image))
                return std::nullopt;
            return image;
        };
        auto search = [&](auto & self, std::size_t k) -> void {
            if (k == gens.size()) {
                if (auto p = extend())
                    found.push_back(std::move(*p));
                return;
            }
            for (auto y : candidates[k]) {
                choice[k] = y;
                self(self, k + 1);
            }
        };
        search(search, 0);
        std::sort(found.begin(), found.end());

        auto m = found.size();
        auto result = std::make_shared<AutomorphismGroup>();
        for (std::size_t a = 0; a < m; ++a)
            result->index.emplace(found[a], Element(a));

        vector<Element> table(m * m);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                table[a * m + b] = result->index.at(compose_permutations(found[a], found[b]));

        vector<string> names;
        for (auto & f : found) {
            string name;
            for (auto s : gens)
                if (f[s] != s)
                    name += (name.empty() ? "" : ",") + g.name(s) + "->" + g.name(f[s]);
            names.push_back(name.empty() ? "id" : name);
        }
        result->aut = std::make_shared<const FiniteGroup>(FiniteGroup::from_table(m, std::move(table), std::move(names)));
        result->action = GroupAction::make(result->aut, gp, found);
        return result;
    }

    auto automorphism_module(const AutomorphismGroup & aut) -> CrossedModulePtr
    {
        auto & g = aut.action.target();
        vector<Element> inner(g->order());
        for (Element x = 0; x < g->order(); ++x) {
            Permutation p(g->order());
            for (Element y = 0; y < g->order(); ++y)
                p[y] = g->conj(x, y);
            inner[x] = aut.element_of(p);
        }
        auto i = GroupMorphism::make(g, aut.aut, std::move(inner));
        return std::make_shared<const CrossedModule>(CrossedModule::make(std::move(i), aut.action));
    }

    auto action_morphism(const CrossedModule & xm, const AutomorphismGroup & aut) -> GroupMorphism
    {
        vector<Element> image(xm.n()->order());
        for (Element u = 0; u < image.size(); ++u)
            image[u] = aut.element_of(xm.alpha().permutation(u));
        return GroupMorphism::make(xm.n(), aut.aut, std::move(image));
    }

    auto commutator_closure(const CrossedModule & xm) -> Subset
    {
        auto & n = *xm.n();
        vector<Element> seeds;
        for (Element x = 0; x < xm.g()->order(); ++x)
            for (Element u = 0; u < n.order(); ++u)
                seeds.push_back(n.commutator(xm.i()(x), u));
        std::sort(seeds.begin(), seeds.end());
        seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
        return normal_closure(n, seeds);
    }

    auto abelianization_data(const CrossedModule & xm) -> Abelianization
    {
        Abelianization ab;
        ab.ng = commutator_closure(xm);
        auto q = quotient(xm.n(), ab.ng);
        ab.n_prime = q.q;
        ab.pi_n = q.p;

        Subset image;
        for (Element x = 0; x < xm.g()->order(); ++x)
            image.push_back(ab.pi_n(xm.i()(x)));
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());

        auto [g_prime, i_prime] = subgroup_group(ab.n_prime, image);
        ab.g_prime = g_prime;
        ab.i_prime = i_prime;

        vector<Element> pi_g(xm.g()->order());
        for (Element x = 0; x < pi_g.size(); ++x)
            pi_g[x] = Element(index_of(image, ab.pi_n(xm.i()(x))));
        ab.pi_g = GroupMorphism::make(xm.g(), g_prime, std::move(pi_g));

        if (! ab.g_prime->is_abelian())
            throw std::logic_error("image of G in N/N_G is not abelian");
        for (Element x = 0; x < xm.g()->order(); ++x)
            if (ab.pi_n(xm.i()(x)) != ab.i_prime(ab.pi_g(x)))
                throw std::logic_error("abelianization square does not commute");
        return ab;
    }

    auto ExtensionData::from_crossed_module(CrossedModulePtr xm) -> ExtensionData
    {
        if (! xm->i().is_injective())
            throw StructureError("extension data needs an injective i");
        ExtensionData ext;
        auto image = xm->i().image_set();
        auto q = quotient(xm->n(), image);
        ext.q = q.q;
        ext.p = q.p;
        ext.section = q.section;
        ext.ab = abelianization_data(*xm);
        auto z = center(*xm->n());
        ext.central = std::includes(z.begin(), z.end(), image.begin(), image.end());
        ext.xm = std::move(xm);
        return ext;
    }

    auto ExtensionData::with_section(vector<Element> s) const -> ExtensionData
    {
        if (s.size() != q->order())
            throw PreconditionError("section has the wrong length");
        if (s[0] != 0)
            throw PreconditionError("section must send the identity to the identity");
        for (Element y = 0; y < q->order(); ++y)
            if (s[y] >= n()->order() || p(s[y]) != y)
                throw PreconditionError("section is not a right inverse of p at " + q->name(y));
        auto copy = *this;
        copy.section = std::move(s);
        return copy;
    }

    namespace
    {
        struct BuiltinExtension
        {
            string name;
            string group;
            vector<string> normal_generators;
        };

        auto builtin_extensions() -> const vector<BuiltinExtension> &
        {
            static const vector<BuiltinExtension> table{
                {"Z2->Z4", "Z4", {"a^2"}},
                {"Z3->S3", "S3", {"b"}},
                {"Z2->Z2xZ2", "Z2xZ2", {"a"}},
                {"Z2->Q8", "Q8", {"a^2"}},
                {"Z2->D4", "D4", {"a^2"}},
            };
            return table;
        }
    }

    auto builtin_extension(string_view name) -> CrossedModulePtr
    {
        for (auto & e : builtin_extensions())
            if (e.name == name) {
                auto n = builtin_group(e.group);
                vector<Element> gens;
                for (auto & s : e.normal_generators)
                    gens.push_back(n->element(s));
                return normal_subgroup_module(n, generated_subgroup(*n, gens));
            }
        throw UsageError("unknown built-in extension '" + string(name) + "'");
    }

    auto builtin_extension_names() -> const vector<string> &
    {
        static const vector<string> names = [] {
            vector<string> r;
            for (auto & e : builtin_extensions())
                r.push_back(e.name);
            return r;
        }();
        return names;
    }
}
