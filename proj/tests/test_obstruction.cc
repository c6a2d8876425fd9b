#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cocycle/error.hh>
#include <cocycle/obstruction.hh>
#include <cocycle/run.hh>

#include "oracles.hh"

#include <map>
#include <random>

using namespace cocycle;

namespace
{
    // Is c (mod m, on triangles) the coboundary of some edge cochain? By enumeration.
    auto is_two_coboundary(const Nerve & k, const std::vector<std::int64_t> & c, std::int64_t m) -> bool
    {
        auto d1 = oracle::coboundary_mod(k, 1, m);
        std::vector<std::int64_t> f(k.edges().size(), 0);
        while (true) {
            bool equal = true;
            for (std::size_t r = 0; r < d1.size() && equal; ++r) {
                std::int64_t s = 0;
                for (std::size_t e = 0; e < f.size(); ++e)
                    s += d1[r][e] * f[e];
                equal = ((s % m) + m) % m == c[r];
            }
            if (equal)
                return true;
            std::size_t pos = 0;
            while (pos < f.size() && ++f[pos] == m)
                f[pos++] = 0;
            if (pos == f.size())
                return false;
        }
    }

    // Bockstein of a Z2 cocycle for 0 -> Z2 -> Z4 -> Z2 -> 0, using the lift 0, 1.
    auto bockstein(const Nerve & k, const std::vector<std::int64_t> & q) -> std::vector<std::int64_t>
    {
        std::vector<std::int64_t> c;
        for (auto & t : k.triangles()) {
            auto a = q[k.edge_index(t[0], t[1])], b = q[k.edge_index(t[1], t[2])], d = q[k.edge_index(t[0], t[2])];
            c.push_back(((a + b - d) / 2 % 2 + 2) % 2);
        }
        return c;
    }

    // Preimage class counts over every Q-class, sorted, from Hom(pi_1, -) / conjugation.
    auto preimage_profile(const std::string & complex, const ExtensionData & ext) -> std::vector<std::size_t>
    {
        auto pres = oracle::fundamental_group(complex);
        std::map<std::vector<Element>, std::size_t> hits;
        for (auto & qc : oracle::hom_classes(pres, *ext.q))
            hits[qc] = 0;
        for (auto & nc : oracle::hom_classes(pres, *ext.n())) {
            std::vector<Element> image;
            for (auto x : nc)
                image.push_back(ext.p(x));
            ++hits[oracle::canonical_tuple(*ext.q, image)];
        }
        std::vector<std::size_t> profile;
        for (auto & [key, count] : hits)
            profile.push_back(count);
        std::sort(profile.begin(), profile.end());
        return profile;
    }
}

TEST_CASE("delta of the Z2 -> Z4 extension is the Bockstein")
{
    auto ext = ExtensionData::from_crossed_module(builtin_extension("Z2->Z4"));
    for (auto complex : {"circle3", "rp2_6", "torus7", "disk3"}) {
        INFO("complex: ", complex);
        auto k = builtin_complex(complex);
        for (auto & q : h1_classes(k, ext.q).representatives) {
            std::vector<std::int64_t> values(q.values.begin(), q.values.end());
            auto expected_trivial = is_two_coboundary(*k, bockstein(*k, values), 2);
            CHECK(delta(q, ext).trivial() == expected_trivial);
        }
    }
}

TEST_CASE("delta on the projective plane")
{
    auto ext = ExtensionData::from_crossed_module(builtin_extension("Z2->Z4"));
    auto k = builtin_complex("rp2_6");
    auto qs = h1_classes(k, ext.q);
    REQUIRE(qs.count() == 2);
    CHECK(delta(qs.representatives[0], ext).trivial());
    CHECK(! delta(qs.representatives[1], ext).trivial());
    CHECK(find_lifts(qs.representatives[1], ext).lifts.empty());
    CHECK(find_lifts(qs.representatives[0], ext).lifts.size() == 2);
}

TEST_CASE("lift counts per Q-class match Hom(pi_1, N) / conjugation")
{
    for (auto & complex : builtin_complex_names())
        for (auto & name : builtin_extension_names()) {
            INFO("complex: ", complex);
            INFO("name: ", name);
            auto k = builtin_complex(complex);
            auto ext = ExtensionData::from_crossed_module(builtin_extension(name));
            std::vector<std::size_t> profile;
            for (auto & q : h1_classes(k, ext.q).representatives) {
                auto lifts = find_lifts(q, ext);
                for (auto & n : lifts.lifts) {
                    CHECK(is_cocycle(n));
                    CHECK(cohomologous(pushforward(ext.p, n), q));
                }
                profile.push_back(lifts.lifts.size());
            }
            std::sort(profile.begin(), profile.end());
            CHECK(profile == preimage_profile(complex, ext));
        }
}

TEST_CASE("cocycle granularity lists gauge-fixed lifts")
{
    auto ext = ExtensionData::from_crossed_module(builtin_extension("Z2->Z2xZ2"));
    auto k = builtin_complex("circle3");
    for (auto & q : h1_classes(k, ext.q).representatives) {
        auto classes = find_lifts(q, ext, Granularity::classes).lifts;
        auto cocycles = find_lifts(q, ext, Granularity::cocycles).lifts;
        CHECK(cocycles.size() >= classes.size());
        CHECK(std::is_sorted(cocycles.begin(), cocycles.end(),
            [](const OneCochain & a, const OneCochain & b) { return a.values < b.values; }));
        for (auto & n : cocycles)
            CHECK(cohomologous(pushforward(ext.p, n), q));
    }
}

TEST_CASE("exactness of the long sequence")
{
    for (auto & complex : builtin_complex_names())
        for (auto & name : builtin_extension_names()) {
            INFO("complex: ", complex);
            INFO("name: ", name);
            auto k = builtin_complex(complex);
            auto ext = ExtensionData::from_crossed_module(builtin_extension(name));
            auto r = check_exactness(k, ext);
            CHECK(r.passed());
            CHECK(r.central == ext.central);
            CHECK(r.composite_trivial);
            CHECK(r.image_in_kernel);
            CHECK(r.q_classes == oracle::hom_class_count(complex, *ext.q));
            CHECK(r.n_classes == oracle::hom_class_count(complex, *ext.n()));
            CHECK(r.g_classes == oracle::hom_class_count(complex, *ext.g()));
            CHECK(r.image_classes.size() ==
                oracle::image_class_count(complex, *ext.n(), *ext.q, ext.p.images()));
            if (ext.central) {
                CHECK(r.exact() == true);
                CHECK(r.image_classes == r.kernel_classes);
            }
            else
                CHECK(! r.exact());
        }
}

TEST_CASE("the square commutes up to equivalence")
{
    for (auto [complex, name] : {std::pair{"circle3", "Z3->S3"}, {"torus7", "Z2->Z4"}, {"rp2_6", "Z2->Q8"}}) {
        INFO("complex: ", complex);
        INFO("name: ", name);
        auto ext = ExtensionData::from_crossed_module(builtin_extension(name));
        auto r = check_square(builtin_complex(complex), ext);
        CHECK(r.checked == oracle::hom_count(complex, *ext.n()));
        CHECK(r.failures == 0);
    }
    auto ext = ExtensionData::from_crossed_module(builtin_extension("Z3->S3"));
    auto all = check_square(builtin_complex("circle3"), ext, {}, true);
    CHECK(all.all_cocycles);
    CHECK(all.checked == oracle::hom_count("circle3", *ext.n()) * 36);
    CHECK(all.failures == 0);
}

TEST_CASE("gerbe collapse agrees with lift existence")
{
    for (auto [complex, name] : {std::pair{"rp2_6", "Z2->Z4"}, {"torus7", "Z2->Z4"}, {"circle3", "Z3->S3"},
             {"rp2_6", "Z2->Q8"}}) {
        INFO("complex: ", complex);
        INFO("name: ", name);
        auto k = builtin_complex(complex);
        auto ext = ExtensionData::from_crossed_module(builtin_extension(name));
        for (auto & q : h1_classes(k, ext.q).representatives) {
            auto r = gerbe_class(q, ext);
            CHECK(is_cocycle_pair(r.pair));
            CHECK(r.agrees);
            CHECK(r.collapsed == r.lifts_exist);
            CHECK(r.lambda.has_value() == r.collapsed);
        }
    }
}

TEST_CASE("the split extension has two lifts of the generator")
{
    auto ext = ExtensionData::from_crossed_module(builtin_extension("Z2->Z2xZ2"));
    auto k = builtin_complex("circle3");
    auto qs = h1_classes(k, ext.q);
    REQUIRE(qs.count() == 2);
    for (auto & q : qs.representatives) {
        auto report = obstruction_report(q, ext);
        CHECK(report.lifts.size() == 2);
        CHECK(report.flags.at("duality_breaking"));
        CHECK(report.flags.at("delta_trivial"));
        CHECK(report.flags.at("lift_exists"));
        CHECK(report.flags.at("consistent"));
        CHECK(! report.flags.at("gauge_breaking"));
        CHECK(report.gauge.groups.size() == 1);
    }
}

TEST_CASE("gauge classes separate lifts with different Aut(G) images")
{
    auto ext = ExtensionData::from_crossed_module(builtin_extension("Z3->S3"));
    auto k = builtin_complex("circle3");
    for (auto & q : h1_classes(k, ext.q).representatives) {
        auto g = classify_gauge_lifts(q, ext);
        std::size_t members = 0;
        for (auto & group : g.groups)
            members += group.lifts.size();
        CHECK(members == g.lifts.size());
        CHECK(g.duality_breaking == (g.lifts.size() >= 2));
        CHECK(g.gauge_breaking == (g.groups.size() >= 2));
    }
}

TEST_CASE("realization of G'-valued classes")
{
    for (auto [complex, name] : {std::pair{"sphere2_tet", "Z2->Z4"}, {"rp2_6", "Z2->Z4"}, {"torus7", "Z2->Z4"}}) {
        INFO("complex: ", complex);
        INFO("name: ", name);
        auto k = builtin_complex(complex);
        auto ext = ExtensionData::from_crossed_module(builtin_extension(name));
        std::vector<AbelianClass> reachable;
        for (auto & q : h1_classes(k, ext.q).representatives)
            reachable.push_back(pi_n_star(nu(q, ext), ext));

        SearchStats stats;
        for (auto & g2 : abelian_two_classes(k, ext.ab.g_prime, {}, stats)) {
            auto target = abelian_class(g2);
            auto u = solve_coboundary_realization(g2, ext, {}, stats);
            bool expected = std::find(reachable.begin(), reachable.end(), target) != reachable.end();
            CHECK(u.has_value() == expected);
            if (u) {
                CocyclePair b = trivial_pair(k, ext.xm);
                b.u = *u;
                auto & n = *ext.n();
                for (std::size_t t = 0; t < k->triangles().size(); ++t) {
                    auto & f = k->triangle_faces(t);
                    auto defect = n.mul(n.mul(u->values[f.ij], u->values[f.jk]), n.inv(u->values[f.ik]));
                    for (Element x = 0; x < ext.g()->order(); ++x)
                        if (ext.xm->i()(x) == defect)
                            b.g.values[t] = x;
                }
                CHECK(is_cocycle_pair(b));
                CHECK(pi_n_star(b, ext) == target);
            }
        }
    }
    auto ext = ExtensionData::from_crossed_module(builtin_extension("Z2->Z4"));
    auto k = builtin_complex("rp2_6");
    SearchStats stats;
    CHECK_THROWS_AS(solve_coboundary_realization(TwoCochain::trivial(k, ext.n()), ext, {}, stats), UsageError);
}
