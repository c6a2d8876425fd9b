#pragma once

#include <cocycle/group.hh>
#include <cocycle/nerve.hh>

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace cocycle
{
    struct SearchOptions
    {
        std::uint64_t node_budget = 10'000'000;
        unsigned jobs = 1;
    };

    struct SearchStats
    {
        std::uint64_t nodes = 0;
        std::uint64_t solutions = 0;

        auto operator+=(const SearchStats & o) -> SearchStats &
        {
            nodes += o.nodes;
            solutions += o.solutions;
            return *this;
        }
    };

    // Budget from COCYCLE_BUDGET if set and valid, else the default.
    auto default_node_budget() -> std::uint64_t;

    // A ternary relation on the three edges ij, jk, ik (slots 0, 1, 2) of each
    // triangle. force receives the other two slot values in slot order.
    struct TriangleRelation
    {
        static constexpr Element unforced = ~Element(0) - 1;
        static constexpr Element conflict = ~Element(0);

        std::function<Element(std::size_t triangle, int missing, Element a, Element b)> force;
        std::function<bool(std::size_t triangle, Element ij, Element jk, Element ik)> holds;
    };

    // Backtracking over edge values with per-edge domains. Any triangle with
    // two decided edges propagates to the third. Branches on the lowest
    // undecided edge with ascending values, so solutions come out in
    // lexicographic order and the first one is the minimum.
    class EdgeSolver
    {
    public:
        EdgeSolver(NervePtr nerve, std::size_t value_count, std::vector<std::vector<Element>> domains,
            TriangleRelation relation);

        // Extra check on complete assignments.
        auto set_filter(std::function<bool(const std::vector<Element> &)> filter) -> void;

        auto enumerate(const SearchOptions & options, SearchStats & stats) const -> std::vector<std::vector<Element>>;
        auto first(const SearchOptions & options, SearchStats & stats) const -> std::optional<std::vector<Element>>;

    private:
        struct State;
        struct Branch;

        auto initial_state() const -> std::optional<State>;
        auto run(State & state, std::uint64_t budget, bool stop_at_first, std::vector<std::vector<Element>> & out,
            std::uint64_t & nodes) const -> bool;
        auto search(const SearchOptions & options, bool stop_at_first, SearchStats & stats) const
            -> std::vector<std::vector<Element>>;

        NervePtr _nerve;
        std::size_t _value_count;
        std::vector<std::vector<Element>> _domains;
        std::vector<std::vector<char>> _member;
        TriangleRelation _relation;
        std::function<bool(const std::vector<Element> &)> _filter;
    };

    // Runs body(b) for b in [0, count) on up to jobs threads and returns the
    // results in branch order. With stop_at_first, branches above the lowest
    // one whose result satisfies success may be skipped (left empty).
    // Exceptions are rethrown for the lowest failing branch not above the
    // winner.
    template <typename Result>
    auto run_branches(std::size_t count, unsigned jobs, bool stop_at_first,
        const std::function<Result(std::size_t)> & body, const std::function<bool(const Result &)> & success)
        -> std::vector<std::optional<Result>>
    {
        std::vector<std::optional<Result>> results(count);
        std::vector<std::exception_ptr> errors(count);
        std::atomic<std::size_t> next{0}, winner{count};

        auto work = [&]() {
            while (true) {
                auto b = next.fetch_add(1);
                if (b >= count)
                    return;
                if (stop_at_first && b > winner.load())
                    continue;
                try {
                    results[b] = body(b);
                    if (stop_at_first && success(*results[b])) {
                        auto w = winner.load();
                        while (b < w && ! winner.compare_exchange_weak(w, b))
                            ;
                    }
                }
                catch (...) {
                    errors[b] = std::current_exception();
                }
            }
        };

        auto threads = std::max(1u, std::min<unsigned>(jobs, unsigned(count)));
        if (threads == 1)
            work();
        else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back(work);
            for (auto & t : pool)
                t.join();
        }

        auto last = stop_at_first ? std::min(winner.load(), count - 1) : count - 1;
        for (std::size_t b = 0; count > 0 && b <= last; ++b)
            if (errors[b])
                std::rethrow_exception(errors[b]);
        if (stop_at_first)
            for (auto b = last + 1; b < count; ++b)
                results[b].reset();
        return results;
    }
}
