#pragma once

#include <cocycle/error.hh>
#include <cocycle/group.hh>
#include <cocycle/h1.hh>
#include <cocycle/obstruction.hh>

#include "oracles.hh"

#include <random>

namespace property
{
    using cocycle::Element;

    struct MutantSweep
    {
        std::size_t tried = 0, invalid = 0, rejected_by_check = 0, rejected_by_make = 0, disagreements = 0;
    };

    // Mutates the built-in modules until `want` invalid ones have been seen.
    inline auto mutant_sweep(std::size_t want, unsigned seed) -> MutantSweep
    {
        std::vector<cocycle::CrossedModulePtr> sources;
        for (auto & name : cocycle::builtin_extension_names())
            sources.push_back(cocycle::builtin_extension(name));
        for (auto g : {"S3", "Z4", "Z2xZ2"})
            sources.push_back(cocycle::automorphism_module(*cocycle::automorphism_group(cocycle::builtin_group(g))));

        std::mt19937 rng(seed);
        MutantSweep r;
        while (r.invalid < want && r.tried < 100 * want) {
            auto & xm = *sources[r.tried++ % sources.size()];
            auto m = oracle::mutate(xm, rng);
            auto valid = oracle::is_crossed_module(*m.g, *m.n, m.i, m.alpha);
            auto accepted = ! cocycle::crossed_module_violation(*m.g, *m.n, m.i, m.alpha);
            if (valid != accepted)
                ++r.disagreements;
            if (valid)
                continue;
            ++r.invalid;
            r.rejected_by_check += ! accepted;
            try {
                cocycle::CrossedModule::make(cocycle::GroupMorphism::make(m.g, m.n, m.i),
                    cocycle::GroupAction::make(m.n, m.g, m.alpha));
            }
            catch (const cocycle::Error &) {
                ++r.rejected_by_make;
            }
        }
        return r;
    }

    struct PerturbationSweep
    {
        std::size_t checked = 0, functoriality_failures = 0, delta_failures = 0;
    };

    // Random coboundary perturbations of every Q-class and N-class:
    // p_*(u . v) = p_*(u) . p(v), p_* preserves classes, delta is a class function.
    inline auto perturbation_sweep(const cocycle::NervePtr & k, const cocycle::ExtensionData & ext,
        std::size_t trials, unsigned seed) -> PerturbationSweep
    {
        using namespace cocycle;
        std::mt19937 rng(seed);
        auto gauge = [&](std::size_t order) {
            std::uniform_int_distribution<Element> pick(0, Element(order - 1));
            std::vector<Element> v(k->vertex_count());
            for (auto & x : v)
                x = pick(rng);
            return v;
        };
        auto ns = h1_classes(k, ext.n()).representatives;
        auto qs = h1_classes(k, ext.q).representatives;
        std::vector<AbelianClass> deltas;
        for (auto & q : qs)
            deltas.push_back(delta(q, ext));

        PerturbationSweep r;
        for (std::size_t t = 0; t < trials; ++t) {
            ++r.checked;
            auto & n = ns[t % ns.size()];
            auto v = gauge(ext.n()->order());
            std::vector<Element> pv;
            for (auto x : v)
                pv.push_back(ext.p(x));
            auto moved = coboundary_transform(n, v);
            auto pushed = pushforward(ext.p, moved);
            if (! (pushed == coboundary_transform(pushforward(ext.p, n), pv)) ||
                ! cohomologous(pushed, pushforward(ext.p, n)))
                ++r.functoriality_failures;

            auto c = t % qs.size();
            auto q = coboundary_transform(qs[c], gauge(ext.q->order()));
            if (! (delta(q, ext) == deltas[c]))
                ++r.delta_failures;
        }
        return r;
    }
}
