#include <cocycle/run.hh>

#include <algorithm>
#include <sstream>

using nlohmann::json;
using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace cocycle
{
    auto status_name(TaskStatus s) -> string
    {
        switch (s) {
        case TaskStatus::ok: return "ok";
        case TaskStatus::failed: return "failed";
        case TaskStatus::resource: return "resource";
        case TaskStatus::error: return "error";
        }
        return "error";
    }

    auto TaskOutcome::to_json() const -> json
    {
        json j;
        j["task"] = task.command;
        j["args"] = task.args;
        j["status"] = status_name(status);
        j["result"] = result;
        j["verdicts"] = json::object();
        for (auto & [name, value] : verdicts)
            j["verdicts"][name] = value;
        if (! error.empty())
            j["error"] = error;
        return j;
    }

    auto RunResult::exit_code() const -> int
    {
        auto any = [&](TaskStatus s) {
            return std::any_of(tasks.begin(), tasks.end(), [s](const TaskOutcome & t) { return t.status == s; });
        };
        if (any(TaskStatus::resource))
            return 3;
        if (any(TaskStatus::error))
            return 2;
        if (any(TaskStatus::failed))
            return 4;
        return 0;
    }

    auto abelian_two_classes(const NervePtr & k, const GroupPtr & g, const SearchOptions & options,
        SearchStats & stats) -> vector<TwoCochain>
    {
        if (! g->is_abelian())
            throw UsageError("abelian cohomology needs an abelian coefficient group");
        auto data = AbelianComplexData::build(k);
        auto dec = decompose_abelian(g);
        auto trivial = abelian_class(data, 2, dec, vector<Element>(k->triangles().size(), FiniteGroup::identity));
        std::uint64_t total = 1;
        for (auto & factors : trivial.cohomology)
            for (auto f : factors)
                total = count_mul(total, std::uint64_t(f));

        // tetrahedra checked when their last face is assigned
        auto triangles = k->triangles().size();
        vector<vector<size_t>> closing(triangles);
        for (size_t t = 0; t < k->tetrahedra().size(); ++t) {
            auto & f = k->tetrahedron_faces(t);
            closing[std::max({f.ijk, f.ikl, f.jkl, f.ijl})].push_back(t);
        }

        vector<TwoCochain> reps;
        vector<AbelianClass> seen;
        vector<Element> values(triangles, FiniteGroup::identity);
        auto & gg = *g;
        auto consistent = [&](size_t t) {
            for (auto tet : closing[t]) {
                auto & f = k->tetrahedron_faces(tet);
                if (gg.mul(values[f.jkl], values[f.ijl]) != gg.mul(values[f.ikl], values[f.ijk]))
                    return false;
            }
            return true;
        };

        std::uint64_t nodes = 0;
        auto dfs = [&](auto & self, size_t t) -> void {
            if (reps.size() == total)
                return;
            if (++nodes > options.node_budget)
                throw ResourceError("H^2 class enumeration exceeded node budget " +
                    std::to_string(options.node_budget) + " with " + std::to_string(triangles - t) +
                    " triangles undecided");
            if (t == triangles) {
                auto c = abelian_class(data, 2, dec, values);
                if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
                    seen.push_back(c);
                    reps.push_back(TwoCochain{k, g, values});
                }
                return;
            }
            for (Element x = 0; x < gg.order() && reps.size() < total; ++x) {
                values[t] = x;
                if (consistent(t))
                    self(self, t + 1);
            }
            values[t] = FiniteGroup::identity;
        };
        dfs(dfs, 0);
        stats.nodes += nodes;
        stats.solutions += reps.size();
        if (reps.size() != total)
            throw std::logic_error("abelian class enumeration found " + std::to_string(reps.size()) + " of " +
                std::to_string(total) + " classes");
        std::sort(reps.begin(), reps.end(), [](const TwoCochain & a, const TwoCochain & b) { return a.values < b.values; });
        return reps;
    }

    namespace
    {
        auto cochain_json(const OneCochain & c) -> json
        {
            auto r = json::array();
            auto & edges = c.nerve->edges();
            for (size_t e = 0; e < edges.size(); ++e)
                r.push_back(json::array({edges[e][0], edges[e][1], c.group->name(c.values[e])}));
            return r;
        }

        auto cochain_json(const TwoCochain & c) -> json
        {
            auto r = json::array();
            auto & triangles = c.nerve->triangles();
            for (size_t t = 0; t < triangles.size(); ++t)
                r.push_back(json::array({triangles[t][0], triangles[t][1], triangles[t][2], c.group->name(c.values[t])}));
            return r;
        }

        auto pair_json(const CocyclePair & b) -> json
        {
            return json{{"u", cochain_json(b.u)}, {"g", cochain_json(b.g)}};
        }

        auto class_json(const AbelianClass & c) -> json
        {
            json blocks = json::array();
            for (auto & b : c.blocks)
                blocks.push_back(json{{"moduli", b.moduli}, {"values", b.values}});
            return json{{"degree", c.degree}, {"coefficient_factors", c.coefficient_factors},
                {"cohomology", c.cohomology}, {"coordinates", blocks}, {"trivial", c.trivial()}};
        }

        struct Target
        {
            size_t index;
            OneCochain cocycle;
        };

        auto select_classes(const ClassSet<OneCochain> & classes, const ClassSpec & spec, const JobConfig & config,
            const NervePtr & k, const GroupPtr & g) -> vector<Target>
        {
            vector<Target> r;
            switch (spec.kind) {
            case ClassSpec::Kind::all:
                for (size_t n = 0; n < classes.count(); ++n)
                    r.push_back({n, classes.representatives[n]});
                break;
            case ClassSpec::Kind::trivial: r.push_back({classes.trivial_index, classes.representatives[classes.trivial_index]}); break;
            case ClassSpec::Kind::generator:
                if (classes.count() < 2)
                    throw UsageError("H^1 has no nontrivial class to use as a generator");
                r.push_back({1, classes.representatives[1]});
                break;
            case ClassSpec::Kind::index:
                if (spec.index >= classes.count())
                    throw UsageError("class " + std::to_string(spec.index) + " out of range; there are " +
                        std::to_string(classes.count()) + " classes");
                r.push_back({spec.index, classes.representatives[spec.index]});
                break;
            case ClassSpec::Kind::cochain: {
                auto & def = *config.find_cochain(spec.cochain);
                auto group = config.find_group(def.group) ? config.find_group(def.group)->group : builtin_group(def.group);
                if (group->table() != g->table())
                    throw UsageError("cochain '" + def.name + "' is not valued in the quotient group");
                OneCochain c{k, g, def.values};
                if (auto t = cocycle_violation(c))
                    throw PreconditionError("cochain '" + def.name + "' is not a cocycle on triangle (" +
                        std::to_string((*t)[0]) + ", " + std::to_string((*t)[1]) + ", " + std::to_string((*t)[2]) + ")");
                r.push_back({class_index(classes, c), c});
                break;
            }
            }
            return r;
        }

        auto run_h1(const ResolvedTask & t, const SearchOptions & options, TaskOutcome & out) -> void
        {
            auto classes = h1_classes(t.complex, t.group, options);
            auto list = json::array();
            for (size_t n = 0; n < classes.count(); ++n)
                list.push_back(json{{"representative", cochain_json(classes.representatives[n])}, {"size", classes.sizes[n]}});
            out.result = json{{"complex", t.complex_name}, {"group", t.group_name}, {"count", classes.count()},
                {"classes", list}};
        }

        auto run_abelian(const ResolvedTask & t, TaskOutcome & out) -> void
        {
            auto h = abelian_cohomology(t.complex, t.coefficients, t.degree);
            out.result = json{{"complex", t.complex_name}, {"coefficients", t.coefficients.name()}, {"degree", t.degree},
                {"invariant_factors", h.invariant_factors}};
            out.result["count"] = h.count ? json(*h.count) : json(nullptr);
        }

        auto run_h2nab(const ResolvedTask & t, const SearchOptions & options, TaskOutcome & out) -> void
        {
            auto classes = nonabelian_h2_classes(t.complex, t.xm, options);
            auto list = json::array();
            for (size_t n = 0; n < classes.count(); ++n) {
                auto j = pair_json(classes.representatives[n]);
                j["size"] = classes.sizes[n];
                list.push_back(j);
            }
            out.result = json{{"complex", t.complex_name}, {"crossed", t.crossed_name}, {"count", classes.count()},
                {"classes", list}};
            if (! t.xm->i().is_injective())
                return;

            auto ext = ExtensionData::from_crossed_module(t.xm);
            auto qs = h1_classes(t.complex, ext.q, options);
            out.result["quotient_classes"] = qs.count();
            // nu on classes, and p_* back again
            vector<size_t> forward;
            for (auto & q : qs.representatives)
                forward.push_back(pair_class_index(classes, nu(q, ext), options));
            auto sorted = forward;
            std::sort(sorted.begin(), sorted.end());
            bool bijective = qs.count() == classes.count() &&
                std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
            bool inverse = true;
            for (size_t n = 0; n < classes.count(); ++n) {
                auto back = class_index(qs, pushforward(ext.p, classes.representatives[n].u));
                if (back >= forward.size() || forward[back] != n)
                    inverse = false;
            }
            out.result["nu_classes"] = forward;
            out.verdicts["nu_bijection"] = bijective && inverse;
        }

        auto run_exactness(const ResolvedTask & t, const ExtensionData & ext, const SearchOptions & options,
            TaskOutcome & out) -> void
        {
            auto r = check_exactness(t.complex, ext, options);
            auto counter = json::array();
            for (auto & c : r.counterexamples)
                counter.push_back(json{{"check", c.check}, {"cocycle", cochain_json(c.cocycle)}});
            out.result = json{{"complex", t.complex_name}, {"crossed", t.crossed_name}, {"central", r.central},
                {"composite_trivial", r.composite_trivial}, {"image_in_kernel", r.image_in_kernel},
                {"kernel_in_image", r.kernel_in_image}, {"g_classes", r.g_classes}, {"n_classes", r.n_classes},
                {"q_classes", r.q_classes}, {"image_classes", r.image_classes}, {"kernel_classes", r.kernel_classes},
                {"counterexamples", counter}};
            auto exact = r.exact();
            out.result["exact"] = exact ? json(*exact) : json(nullptr);
            out.verdicts["exactness"] = r.passed();
        }

        auto run_square(const ResolvedTask & t, const ExtensionData & ext, const SearchOptions & options,
            TaskOutcome & out) -> void
        {
            auto r = check_square(t.complex, ext, options, t.all_cocycles);
            auto failing = json::array();
            for (auto & u : r.failing)
                failing.push_back(cochain_json(u));
            out.result = json{{"complex", t.complex_name}, {"crossed", t.crossed_name},
                {"all_cocycles", r.all_cocycles}, {"checked", r.checked}, {"failures", r.failures},
                {"failing", failing}};
            out.verdicts["square"] = r.failures == 0;
        }

        auto run_realize(const ResolvedTask & t, const JobConfig & config, const ExtensionData & ext,
            const SearchOptions & options, TaskOutcome & out) -> void
        {
            SearchStats stats;
            auto & gp = ext.ab.g_prime;
            vector<std::pair<size_t, TwoCochain>> targets;
            if (t.target.kind == ClassSpec::Kind::cochain) {
                auto & def = *config.find_cochain(t.target.cochain);
                auto group = config.find_group(def.group) ? config.find_group(def.group)->group : builtin_group(def.group);
                if (group->table() != gp->table())
                    throw UsageError("cochain '" + def.name + "' is not valued in G'");
                TwoCochain c{t.complex, gp, def.values};
                auto reps = abelian_two_classes(t.complex, gp, options, stats);
                auto cls = abelian_class(c);
                size_t index = 0;
                while (index < reps.size() && ! (abelian_class(reps[index]) == cls))
                    ++index;
                targets.emplace_back(index, c);
            }
            else {
                auto reps = abelian_two_classes(t.complex, gp, options, stats);
                switch (t.target.kind) {
                case ClassSpec::Kind::all:
                    for (size_t n = 0; n < reps.size(); ++n)
                        targets.emplace_back(n, reps[n]);
                    break;
                case ClassSpec::Kind::trivial: targets.emplace_back(0, reps[0]); break;
                case ClassSpec::Kind::generator:
                    if (reps.size() < 2)
                        throw UsageError("H^2 with G' coefficients has no nontrivial class");
                    targets.emplace_back(1, reps[1]);
                    break;
                default:
                    if (t.target.index >= reps.size())
                        throw UsageError("class " + std::to_string(t.target.index) + " out of range; there are " +
                            std::to_string(reps.size()) + " classes");
                    targets.emplace_back(t.target.index, reps[t.target.index]);
                    break;
                }
            }

            auto list = json::array();
            bool witnesses = true;
            for (auto & [index, g2] : targets) {
                auto u = solve_coboundary_realization(g2, ext, options, stats);
                json j{{"class", index}, {"target", cochain_json(g2)}, {"realizable", bool(u)}};
                if (u) {
                    auto pair = trivial_pair(t.complex, ext.xm);
                    pair.u = *u;
                    auto & k = *t.complex;
                    auto & n = *ext.n();
                    vector<Element> preimage(n.order(), FiniteGroup::identity);
                    for (Element x = 0; x < ext.g()->order(); ++x)
                        preimage[ext.xm->i()(x)] = x;
                    for (size_t s = 0; s < k.triangles().size(); ++s) {
                        auto & f = k.triangle_faces(s);
                        pair.g.values[s] = preimage[n.mul(n.mul(u->values[f.ij], u->values[f.jk]), n.inv(u->values[f.ik]))];
                    }
                    if (! is_cocycle_pair(pair) || ! (pi_n_star(pair, ext) == abelian_class(g2)))
                        witnesses = false;
                    j["u"] = cochain_json(*u);
                    j["g"] = cochain_json(pair.g);
                }
                else
                    j["u"] = nullptr;
                list.push_back(j);
            }
            out.result = json{{"complex", t.complex_name}, {"crossed", t.crossed_name}, {"g_prime_order", gp->order()},
                {"targets", list}};
            out.verdicts["witness"] = witnesses;
        }

        auto run_per_class(const ResolvedTask & t, const JobConfig & config, const ExtensionData & ext,
            const SearchOptions & options, TaskOutcome & out) -> void
        {
            auto qs = h1_classes(t.complex, ext.q, options);
            auto targets = select_classes(qs, t.target, config, t.complex, ext.q);
            auto list = json::array();
            bool all_good = true;
            for (auto & [index, q] : targets) {
                json j{{"class", index}, {"q", cochain_json(q)}};
                if (t.command == "nu") {
                    auto b = nu(q, ext);
                    auto ok = is_cocycle_pair(b);
                    all_good = all_good && ok;
                    j["pair"] = pair_json(b);
                    j["is_cocycle_pair"] = ok;
                }
                else if (t.command == "delta") {
                    j["delta"] = class_json(delta(q, ext));
                }
                else if (t.command == "lift") {
                    auto d = delta(q, ext);
                    auto lifts = find_lifts(q, ext, t.granularity, options);
                    auto ls = json::array();
                    for (auto & l : lifts.lifts)
                        ls.push_back(cochain_json(l));
                    j["delta_trivial"] = d.trivial();
                    j["lifts"] = ls;
                    j["count"] = lifts.lifts.size();
                    all_good = all_good && (lifts.lifts.empty() || d.trivial());
                }
                else if (t.command == "gerbe") {
                    auto g = gerbe_class(q, ext, options);
                    j["pair"] = pair_json(g.pair);
                    j["collapsed"] = g.collapsed;
                    j["lambda"] = g.lambda ? cochain_json(*g.lambda) : json(nullptr);
                    j["lifts_exist"] = g.lifts_exist;
                    j["agrees"] = g.agrees;
                    all_good = all_good && g.agrees;
                }
                else {
                    auto r = obstruction_report(q, ext, t.granularity, options);
                    auto ls = json::array();
                    for (auto & l : r.lifts)
                        ls.push_back(cochain_json(l));
                    auto groups = json::array();
                    for (auto & g : r.gauge.groups)
                        groups.push_back(json{{"gauge_class", cochain_json(g.gauge_class)}, {"lifts", g.lifts}});
                    j["input_class"] = cochain_json(r.input_class);
                    j["delta"] = class_json(r.delta);
                    j["lifts"] = ls;
                    j["lift_classes"] = r.gauge.lifts.size();
                    j["groups"] = groups;
                    j["flags"] = r.flags;
                    all_good = all_good && r.flags.at("consistent");
                }
                list.push_back(j);
            }
            out.result = json{{"complex", t.complex_name}, {"crossed", t.crossed_name}, {"quotient_classes", qs.count()},
                {"classes", list}};
            if (t.command == "nu")
                out.verdicts["cocycle_pairs"] = all_good;
            else if (t.command == "gerbe")
                out.verdicts["agrees"] = all_good;
            else if (t.command == "lift" || t.command == "gauge-classes")
                out.verdicts["consistent"] = all_good;
        }
    }

    auto run_task(const JobConfig & config, const TaskDef & task, const RunOptions & run_options) -> TaskOutcome
    {
        TaskOutcome out;
        out.task = task;
        SearchOptions options;
        options.node_budget = run_options.node_budget.value_or(config.budgets.nodes);
        options.jobs = std::max(1u, run_options.jobs);
        try {
            auto t = resolve_task(config, task);
            if (t.command == "h1")
                run_h1(t, options, out);
            else if (t.command == "abelian")
                run_abelian(t, out);
            else if (t.command == "h2nab")
                run_h2nab(t, options, out);
            else {
                if (t.command == "square" || t.command == "gerbe" || t.command == "gauge-classes")
                    if (t.xm->g()->order() > config.budgets.aut)
                        throw SizeError("automorphism search needs order <= " + std::to_string(config.budgets.aut) +
                            ", group has order " + std::to_string(t.xm->g()->order()));
                auto ext = ExtensionData::from_crossed_module(t.xm);
                if (t.command == "exactness")
                    run_exactness(t, ext, options, out);
                else if (t.command == "square")
                    run_square(t, ext, options, out);
                else if (t.command == "realize")
                    run_realize(t, config, ext, options, out);
                else
                    run_per_class(t, config, ext, options, out);
            }
            for (auto & [name, value] : out.verdicts)
                if (! value)
                    out.status = TaskStatus::failed;
        }
        catch (const ResourceError & e) {
            out.status = TaskStatus::resource;
            out.result = nullptr;
            out.verdicts.clear();
            out.error = e.what();
        }
        catch (const SizeError & e) {
            out.status = TaskStatus::resource;
            out.result = nullptr;
            out.verdicts.clear();
            out.error = e.what();
        }
        catch (const ConfigError & e) {
            out.status = TaskStatus::error;
            out.result = nullptr;
            out.verdicts.clear();
            out.error = e.code() + ": " + e.message();
        }
        catch (const Error & e) {
            out.status = TaskStatus::error;
            out.result = nullptr;
            out.verdicts.clear();
            out.error = e.what();
        }
        return out;
    }

    auto run(const JobConfig & config, const RunOptions & options) -> RunResult
    {
        RunResult r;
        for (auto & t : config.tasks)
            r.tasks.push_back(run_task(config, t, options));
        return r;
    }

    auto render_json(const RunResult & result) -> string
    {
        auto j = json::array();
        for (auto & t : result.tasks)
            j.push_back(t.to_json());
        return j.dump(2) + "\n";
    }

    auto render_table(const RunResult & result) -> string
    {
        std::ostringstream out;
        for (auto & t : result.tasks) {
            out << "task " << t.task.command;
            for (auto & a : t.task.args)
                out << " " << a;
            out << "\n  status: " << status_name(t.status) << "\n";
            if (! t.error.empty())
                out << "  error: " << t.error << "\n";
            for (auto & [name, value] : t.verdicts)
                out << "  verdict " << name << ": " << (value ? "pass" : "FAIL") << "\n";
            if (t.result.is_object())
                for (auto & [key, value] : t.result.items()) {
                    if (value.is_array() && ! value.empty() && value.front().is_structured()) {
                        out << "  " << key << ":\n";
                        for (auto & item : value)
                            out << "    " << item.dump() << "\n";
                    }
                    else
                        out << "  " << key << ": " << value.dump() << "\n";
                }
        }
        return out.str();
    }

    auto render(const RunResult & result, const string & format) -> string
    {
        return format == "table" ? render_table(result) : render_json(result);
    }
}
