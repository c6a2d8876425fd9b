#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cocycle/error.hh>
#include <cocycle/group.hh>

#include "oracles.hh"

using namespace cocycle;

TEST_CASE("built-in groups have the expected orders and shapes")
{
    struct Expect
    {
        const char * name;
        std::size_t order;
        bool abelian, cyclic;
        std::size_t center;
    };
    for (auto e : {Expect{"Z1", 1, true, true, 1}, Expect{"Z2", 2, true, true, 2}, Expect{"Z3", 3, true, true, 3},
             Expect{"Z4", 4, true, true, 4}, Expect{"Z6", 6, true, true, 6}, Expect{"Z2xZ2", 4, true, false, 4},
             Expect{"S3", 6, false, false, 1}, Expect{"Q8", 8, false, false, 2}, Expect{"D4", 8, false, false, 2}}) {
        CAPTURE(e.name);
        auto g = builtin_group(e.name);
        CHECK(g->order() == e.order);
        CHECK(g->is_abelian() == e.abelian);
        CHECK(g->is_cyclic() == e.cyclic);
        CHECK(center(*g).size() == e.center);
        CHECK(g->name(FiniteGroup::identity) == "e");
    }
    CHECK_THROWS_AS(builtin_group("Z7"), UsageError);
}

TEST_CASE("Q8 and D4 are told apart by their involutions")
{
    auto count_involutions = [](const FiniteGroup & g) {
        std::size_t n = 0;
        for (Element x = 1; x < g.order(); ++x)
            n += g.element_order(x) == 2;
        return n;
    };
    CHECK(count_involutions(*builtin_group("Q8")) == 1);
    CHECK(count_involutions(*builtin_group("D4")) == 5);
}

TEST_CASE("closure of permutation generators")
{
    auto s3 = group_from_generators(3, {{1, 2, 0}, {1, 0, 2}});
    CHECK(s3->order() == 6);
    CHECK(! s3->is_abelian());

    auto s5 = [](std::size_t cap) { return group_from_generators(5, {{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}}, cap); };
    CHECK(s5(512)->order() == 120);
    CHECK_THROWS_AS(s5(100), SizeError);
    CHECK_THROWS_AS(group_from_generators(3, {{0, 0, 1}}), StructureError);

    auto trivial = group_from_generators(4, {});
    CHECK(trivial->order() == 1);
}

TEST_CASE("permutation product composes right to left")
{
    Permutation p{1, 2, 0}, q{1, 0, 2};
    auto pq = compose_permutations(p, q);
    for (Element x = 0; x < 3; ++x)
        CHECK(pq[x] == p[q[x]]);
}

TEST_CASE("tables are validated")
{
    CHECK_NOTHROW(FiniteGroup::from_table(2, {0, 1, 1, 0}));
    CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1, 1}), StructureError);
    CHECK_THROWS_AS(FiniteGroup::from_table(2, {1, 0, 0, 1}), StructureError);
    CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1}), StructureError);
    CHECK_THROWS_AS(FiniteGroup::from_table(2, {0, 1, 1, 0}, {"e", "e"}), StructureError);

    // a Latin square with identity that is not associative
    std::vector<Element> loop{0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0};
    CHECK_THROWS_AS(FiniteGroup::from_table(5, loop), StructureError);
}

TEST_CASE("element lookup by name and index")
{
    auto z4 = builtin_group("Z4");
    CHECK(z4->find("e") == Element(0));
    CHECK(z4->find("#3") == Element(3));
    CHECK(! z4->find("#4"));
    CHECK(! z4->find("nope"));
    CHECK_THROWS_AS(z4->element("nope"), UsageError);
}

TEST_CASE("morphisms from generator images")
{
    auto z2 = builtin_group("Z2"), z4 = builtin_group("Z4"), z3 = builtin_group("Z3");
    auto a2 = z4->mul(z4->element("a"), z4->element("a"));
    auto i = GroupMorphism::from_images(z2, z4, {{z2->element("a"), a2}});
    CHECK(i.is_injective());
    CHECK(! i.is_surjective());
    CHECK(i.image_set().size() == 2);

    CHECK_THROWS_AS(GroupMorphism::from_images(z2, z4, {{z2->element("a"), z4->element("a")}}), StructureError);
    CHECK_THROWS_AS(GroupMorphism::from_images(z2, z3, {{z2->element("a"), z3->element("a")}}), StructureError);
    CHECK_THROWS_AS(GroupMorphism::from_images(z4, z2, {}), StructureError);

    auto p = GroupMorphism::from_images(z4, z2, {{z4->element("a"), z2->element("a")}});
    CHECK(p.kernel().size() == 2);
    CHECK(compose(p, i).image_set().size() == 1);
}

TEST_CASE("quotients list cosets by least element")
{
    auto z4 = builtin_group("Z4");
    auto a2 = z4->mul(z4->element("a"), z4->element("a"));
    auto q = quotient(z4, Subset{0, a2});
    CHECK(q.q->order() == 2);
    CHECK(q.section[0] == 0);
    for (Element y = 0; y < q.q->order(); ++y)
        CHECK(q.p(q.section[y]) == y);
    CHECK_THROWS_AS(quotient(builtin_group("S3"), Subset{0, 1}), StructureError);
}

TEST_CASE("automorphism group orders")
{
    for (auto [name, order] : {std::pair{"Z1", 1}, {"Z2", 1}, {"Z3", 2}, {"Z4", 2}, {"Z6", 2}, {"Z2xZ2", 6},
             {"S3", 6}, {"Q8", 24}, {"D4", 8}}) {
        INFO("name: ", name);
        auto aut = automorphism_group(builtin_group(name));
        CHECK(aut->aut->order() == std::size_t(order));
        CHECK(*aut->action.target() == *builtin_group(name));
        auto xm = automorphism_module(*aut);
        CHECK(oracle::is_crossed_module(*xm->g(), *xm->n(), xm->i().images(), xm->alpha().permutations()));
    }
    CHECK_THROWS_AS(automorphism_group(builtin_group("Q8"), 4), SizeError);
}

TEST_CASE("built-in extensions are crossed modules with injective i")
{
    for (auto & name : builtin_extension_names()) {
        INFO("name: ", name);
        auto xm = builtin_extension(name);
        CHECK(xm->i().is_injective());
        CHECK(oracle::is_crossed_module(*xm->g(), *xm->n(), xm->i().images(), xm->alpha().permutations()));
        CHECK(! crossed_module_violation(*xm->g(), *xm->n(), xm->i().images(), xm->alpha().permutations()));
        auto ext = ExtensionData::from_crossed_module(xm);
        CHECK(ext.q->order() * ext.g()->order() == ext.n()->order());
    }
    CHECK(ExtensionData::from_crossed_module(builtin_extension("Z2->Z4")).central);
    CHECK(ExtensionData::from_crossed_module(builtin_extension("Z2->Q8")).central);
    CHECK(! ExtensionData::from_crossed_module(builtin_extension("Z3->S3")).central);
    CHECK_THROWS_AS(builtin_extension("Z3->Z9"), UsageError);
}

TEST_CASE("conjugation action needs a normal image")
{
    auto s3 = builtin_group("S3"), z2 = builtin_group("Z2");
    Element involution = 0;
    for (Element x = 1; x < s3->order(); ++x)
        if (s3->element_order(x) == 2)
            involution = x;
    auto i = GroupMorphism::from_images(z2, s3, {{1, involution}});
    CHECK_THROWS_AS(GroupAction::conjugation(i), StructureError);
    CHECK_THROWS_AS(CrossedModule::make(i, GroupAction::trivial(s3, z2)), StructureError);
}

TEST_CASE("abelianization data")
{
    struct Expect
    {
        const char * name;
        std::size_t ng, n_prime, g_prime;
    };
    for (auto e : {Expect{"Z2->Z4", 1, 4, 2}, Expect{"Z3->S3", 3, 2, 1}, Expect{"Z2->Q8", 1, 8, 2},
             Expect{"Z2->Z2xZ2", 1, 4, 2}}) {
        CAPTURE(e.name);
        auto xm = builtin_extension(e.name);
        auto ab = abelianization_data(*xm);
        CHECK(ab.ng.size() == e.ng);
        CHECK(ab.n_prime->order() == e.n_prime);
        CHECK(ab.g_prime->order() == e.g_prime);
        CHECK(ab.g_prime->is_abelian());
        for (Element x = 0; x < xm->g()->order(); ++x)
            CHECK(ab.pi_n(xm->i()(x)) == ab.i_prime(ab.pi_g(x)));
    }
}

TEST_CASE("sections other than the least coset element")
{
    auto ext = ExtensionData::from_crossed_module(builtin_extension("Z2->Z4"));
    auto z4 = ext.n();
    auto a = z4->element("a");
    auto a3 = z4->mul(a, z4->mul(a, a));
    auto other = ext.with_section({0, a3});
    CHECK(other.section[1] == a3);
    CHECK_THROWS_AS(ext.with_section({0, 0}), PreconditionError);
    CHECK_THROWS_AS(ext.with_section({a, a}), PreconditionError);
}
