#include <cocycle/error.hh>
#include <cocycle/search.hh>

#include <algorithm>
#include <cstdlib>
#include <string>

using std::optional;
using std::string;
using std::uint64_t;
using std::vector;

namespace cocycle
{
    auto default_node_budget() -> uint64_t
    {
        if (auto env = std::getenv("COCYCLE_BUDGET")) {
            try {
                std::size_t pos = 0;
                auto value = std::stoull(env, &pos);
                if (pos == string(env).size() && value > 0)
                    return value;
            }
            catch (const std::exception &) {
            }
        }
        return SearchOptions{}.node_budget;
    }

    namespace
    {
        constexpr Element unassigned = ~Element(0);
    }

    struct EdgeSolver::State
    {
        vector<Element> value;
        vector<std::size_t> trail;
        std::size_t decided = 0;
        // set when the budget ran out; the number of undecided edges at that point
        optional<std::size_t> frontier;
    };

    EdgeSolver::EdgeSolver(NervePtr nerve, std::size_t value_count, vector<vector<Element>> domains,
        TriangleRelation relation) :
        _nerve(std::move(nerve)),
        _value_count(value_count),
        _domains(std::move(domains)),
        _relation(std::move(relation))
    {
        if (_domains.size() != _nerve->edges().size())
            throw std::logic_error("edge solver needs one domain per edge");
        for (auto & d : _domains) {
            std::sort(d.begin(), d.end());
            d.erase(std::unique(d.begin(), d.end()), d.end());
            vector<char> m(_value_count, 0);
            for (auto x : d)
                m.at(x) = 1;
            _member.push_back(std::move(m));
        }
    }

    auto EdgeSolver::set_filter(std::function<bool(const vector<Element> &)> filter) -> void
    {
        _filter = std::move(filter);
    }

    namespace
    {
        struct Propagator
        {
            const Nerve & k;
            const vector<vector<char>> & member;
            const TriangleRelation & relation;

            auto assign(vector<Element> & value, vector<std::size_t> & trail, std::size_t & decided,
                vector<std::size_t> & queue, std::size_t e, Element x) const -> bool
            {
                if (value[e] != unassigned)
                    return value[e] == x;
                if (x >= member[e].size() || ! member[e][x])
                    return false;
                value[e] = x;
                trail.push_back(e);
                ++decided;
                queue.push_back(e);
                return true;
            }

            auto propagate(vector<Element> & value, vector<std::size_t> & trail, std::size_t & decided,
                vector<std::size_t> & queue) const -> bool
            {
                while (! queue.empty()) {
                    auto e = queue.back();
                    queue.pop_back();
                    for (auto t : k.triangles_of_edge(e)) {
                        auto & f = k.triangle_faces(t);
                        std::size_t slots[3] = {f.ij, f.jk, f.ik};
                        int missing = -1, unknown = 0;
                        for (int s = 0; s < 3; ++s)
                            if (value[slots[s]] == unassigned) {
                                missing = s;
                                ++unknown;
                            }
                        if (unknown == 0) {
                            if (! relation.holds(t, value[f.ij], value[f.jk], value[f.ik]))
                                return false;
                        }
                        else if (unknown == 1) {
                            Element a, b;
                            if (missing == 0)
                                a = value[f.jk], b = value[f.ik];
                            else if (missing == 1)
                                a = value[f.ij], b = value[f.ik];
                            else
                                a = value[f.ij], b = value[f.jk];
                            auto forced = relation.force(t, missing, a, b);
                            if (forced == TriangleRelation::conflict)
                                return false;
                            if (forced != TriangleRelation::unforced &&
                                ! assign(value, trail, decided, queue, slots[missing], forced))
                                return false;
                        }
                    }
                }
                return true;
            }
        };
    }

    auto EdgeSolver::initial_state() const -> optional<State>
    {
        State s;
        auto m = _nerve->edges().size();
        s.value.assign(m, unassigned);
        Propagator prop{*_nerve, _member, _relation};
        vector<std::size_t> queue;
        for (std::size_t e = 0; e < m; ++e) {
            if (_domains[e].empty())
                return std::nullopt;
            if (_domains[e].size() == 1 && ! prop.assign(s.value, s.trail, s.decided, queue, e, _domains[e][0]))
                return std::nullopt;
        }
        if (! prop.propagate(s.value, s.trail, s.decided, queue))
            return std::nullopt;
        return s;
    }

    auto EdgeSolver::run(State & state, uint64_t budget, bool stop_at_first, vector<vector<Element>> & out,
        uint64_t & nodes) const -> bool
    {
        Propagator prop{*_nerve, _member, _relation};
        auto m = _nerve->edges().size();
        vector<std::size_t> queue;

        // returns true to stop
        auto rec = [&](auto & self, std::size_t from) -> bool {
            auto e = from;
            while (e < m && state.value[e] != unassigned)
                ++e;
            if (e == m) {
                if (! _filter || _filter(state.value)) {
                    out.push_back(state.value);
                    return stop_at_first;
                }
                return false;
            }
            for (auto x : _domains[e]) {
                if (++nodes > budget) {
                    state.frontier = m - state.decided;
                    return true;
                }
                auto mark = state.trail.size();
                queue.clear();
                if (prop.assign(state.value, state.trail, state.decided, queue, e, x) &&
                    prop.propagate(state.value, state.trail, state.decided, queue))
                    if (self(self, e + 1))
                        return true;
                while (state.trail.size() > mark) {
                    state.value[state.trail.back()] = unassigned;
                    state.trail.pop_back();
                    --state.decided;
                }
            }
            return false;
        };
        rec(rec, 0);
        return ! state.frontier.has_value();
    }

    auto EdgeSolver::search(const SearchOptions & options, bool stop_at_first, SearchStats & stats) const
        -> vector<vector<Element>>
    {
        auto fail = [&](const State & s) {
            throw ResourceError("node budget " + std::to_string(options.node_budget) + " exhausted with " +
                std::to_string(*s.frontier) + " of " + std::to_string(_nerve->edges().size()) +
                " edges undecided");
        };

        auto base = initial_state();
        if (! base)
            return {};

        auto m = _nerve->edges().size();
        std::size_t split = 0;
        while (split < m && base->value[split] != unassigned)
            ++split;

        auto sequential = [&](State s, uint64_t budget, uint64_t & nodes) {
            vector<vector<Element>> out;
            if (! run(s, budget, stop_at_first, out, nodes))
                fail(s);
            return out;
        };

        if (options.jobs <= 1 || split == m || _domains[split].size() < 2) {
            uint64_t nodes = 0;
            auto out = sequential(*base, options.node_budget, nodes);
            stats.nodes += nodes;
            stats.solutions += out.size();
            return out;
        }

        // One branch per value of the first undecided edge; each is the
        // subtree the sequential search would visit for that value.
        struct Outcome
        {
            vector<vector<Element>> solutions;
            uint64_t nodes = 0;
            bool exhausted = false;
        };
        auto & values = _domains[split];
        std::function<Outcome(std::size_t)> body = [&](std::size_t b) {
            Outcome o;
            o.nodes = 1;
            auto s = *base;
            Propagator prop{*_nerve, _member, _relation};
            vector<std::size_t> queue;
            if (prop.assign(s.value, s.trail, s.decided, queue, split, values[b]) &&
                prop.propagate(s.value, s.trail, s.decided, queue))
                o.exhausted = ! run(s, options.node_budget, stop_at_first, o.solutions, o.nodes);
            return o;
        };
        std::function<bool(const Outcome &)> found = [](const Outcome & o) { return ! o.solutions.empty(); };
        auto results = run_branches<Outcome>(values.size(), options.jobs, stop_at_first, body, found);

        vector<vector<Element>> out;
        uint64_t total = 0;
        for (std::size_t b = 0; b < results.size(); ++b) {
            if (! results[b])
                break;
            auto & o = *results[b];
            if (o.exhausted || total + o.nodes > options.node_budget) {
                // replay this branch with what the sequential search would have had left
                auto s = *base;
                uint64_t nodes = total;
                Propagator prop{*_nerve, _member, _relation};
                vector<std::size_t> queue;
                if (++nodes > options.node_budget) {
                    s.frontier = m - s.decided;
                    fail(s);
                }
                prop.assign(s.value, s.trail, s.decided, queue, split, values[b]);
                prop.propagate(s.value, s.trail, s.decided, queue);
                vector<vector<Element>> ignored;
                run(s, options.node_budget, stop_at_first, ignored, nodes);
                fail(s);
            }
            total += o.nodes;
            for (auto & sol : o.solutions)
                out.push_back(std::move(sol));
            if (stop_at_first && ! out.empty())
                break;
        }
        stats.nodes += total;
        stats.solutions += out.size();
        return out;
    }

    auto EdgeSolver::enumerate(const SearchOptions & options, SearchStats & stats) const -> vector<vector<Element>>
    {
        return search(options, false, stats);
    }

    auto EdgeSolver::first(const SearchOptions & options, SearchStats & stats) const -> optional<vector<Element>>
    {
        auto out = search(options, true, stats);
        if (out.empty())
            return std::nullopt;
        return std::move(out.front());
    }
}
