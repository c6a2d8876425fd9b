#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cocycle/abelian.hh>
#include <cocycle/error.hh>
#include <cocycle/h1.hh>
#include <cocycle/smith.hh>

#include "oracles.hh"

#include <random>

using namespace cocycle;

TEST_CASE("Smith normal form: P A Q = D with a divisibility chain")
{
    std::mt19937 rng(1);
    std::uniform_int_distribution<int> entry(-3, 3), dim(1, 7);
    for (int trial = 0; trial < 300; ++trial) {
        auto rows = std::size_t(dim(rng)), cols = std::size_t(dim(rng));
        IntMatrix a(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                a(r, c) = entry(rng);
        auto s = smith_normal_form(a);
        auto d = multiply(multiply(s.p, a), s.q);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                CHECK(d(r, c) == (r == c && r < s.diagonal.size() ? s.diagonal[r] : 0));
        for (std::size_t k = 0; k + 1 < s.rank(); ++k)
            CHECK(s.diagonal[k + 1] % s.diagonal[k] == 0);
        for (std::size_t k = 0; k < s.rank(); ++k)
            CHECK(s.diagonal[k] > 0);
    }
}

TEST_CASE("checked arithmetic refuses to overflow")
{
    CHECK(checked_mul(1 << 20, 1 << 20) == std::int64_t(1) << 40);
    CHECK_THROWS(checked_mul(std::int64_t(1) << 40, std::int64_t(1) << 40));
    CHECK_THROWS(checked_add(std::numeric_limits<std::int64_t>::max(), 1));
}

TEST_CASE("coefficient parsing")
{
    CHECK(parse_coefficients("Z")->modulus == 0);
    CHECK(parse_coefficients("Z_4")->modulus == 4);
    CHECK(parse_coefficients("Z12")->modulus == 12);
    CHECK(parse_coefficients("Z_1")->modulus == 1);
    CHECK(! parse_coefficients("Z_0"));
    CHECK(! parse_coefficients("Q"));
    CHECK(! parse_coefficients("Z_"));
    CHECK(Coefficients{5}.name() == "Z_5");
    CHECK(Coefficients{0}.name() == "Z");
}

TEST_CASE("coboundary squares to zero on every built-in complex")
{
    for (auto & name : builtin_complex_names()) {
        auto k = builtin_complex(name);
        for (int d = 0; d + 1 <= 3; ++d)
            CHECK(multiply(coboundary_matrix(*k, d + 1), coboundary_matrix(*k, d)).is_zero());
        CHECK_NOTHROW(AbelianComplexData::build(k));
    }
}

TEST_CASE("integral cohomology of the built-in complexes")
{
    using V = std::vector<std::int64_t>;
    auto h = [](const char * k, int d) { return abelian_cohomology(builtin_complex(k), {0}, d).invariant_factors; };
    CHECK(h("circle3", 0) == V{0});
    CHECK(h("circle3", 1) == V{0});
    CHECK(h("sphere2_tet", 1) == V{});
    CHECK(h("sphere2_tet", 2) == V{0});
    CHECK(h("torus7", 1) == V{0, 0});
    CHECK(h("torus7", 2) == V{0});
    CHECK(h("rp2_6", 1) == V{});
    CHECK(h("rp2_6", 2) == V{2});
    CHECK(h("sphere3_pent", 2) == V{});
    CHECK(h("sphere3_pent", 3) == V{0});
    CHECK(h("disk3", 2) == V{});
    CHECK(! abelian_cohomology(builtin_complex("sphere2_tet"), {0}, 2).count);
}

TEST_CASE("mod-p cohomology agrees with Gaussian elimination over F_p")
{
    for (auto & name : builtin_complex_names())
        for (std::int64_t p : {2, 3, 5, 7})
            for (int d = 0; d <= 3; ++d) {
                INFO("name: ", name);
                CAPTURE(p);
                CAPTURE(d);
                auto k = builtin_complex(name);
                auto h = abelian_cohomology(k, {p}, d);
                auto betti = oracle::betti_mod_prime(*k, d, p);
                CHECK(h.invariant_factors == std::vector<std::int64_t>(betti, p));
                CHECK(h.count == count_pow(std::uint64_t(p), betti));
            }
}

TEST_CASE("Z_m cohomology against brute-force counting on small complexes")
{
    for (auto name : {"circle3", "sphere2_tet", "disk3"})
        for (std::int64_t m : {2, 3, 4, 6})
            for (int d = 0; d <= 2; ++d) {
                INFO("name: ", name);
                CAPTURE(m);
                CAPTURE(d);
                auto k = builtin_complex(name);
                CHECK(abelian_cohomology(k, {m}, d).count == oracle::brute_force_count(*k, d, m));
            }
    auto rp2 = builtin_complex("rp2_6");
    CHECK(abelian_cohomology(rp2, {4}, 1).count == 2);
    CHECK(abelian_cohomology(rp2, {4}, 2).count == 2);
    CHECK(abelian_cohomology(rp2, {3}, 2).count == 1);
}

TEST_CASE("invariant factor normalization")
{
    using V = std::vector<std::int64_t>;
    CHECK(normalize_invariant_factors({2, 3}) == V{6});
    CHECK(normalize_invariant_factors({4, 2, 0}) == V{2, 4, 0});
    CHECK(normalize_invariant_factors({1, 1}) == V{});
    CHECK(normalize_invariant_factors({6, 4}) == V{2, 12});
}

TEST_CASE("class coordinates separate classes")
{
    auto k = builtin_complex("torus7");
    auto data = AbelianComplexData::build(k);
    // a cocycle plus any coboundary has the same coordinates
    auto d0 = coboundary_matrix(*k, 0);
    std::mt19937 rng(2);
    std::uniform_int_distribution<std::int64_t> pick(0, 2);
    auto z = std::vector<std::int64_t>(k->edges().size(), 0);
    auto base = class_coordinates(data, 1, 3, z);
    CHECK(base.trivial());
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::int64_t> f(k->vertex_count());
        for (auto & x : f)
            x = pick(rng);
        std::vector<std::int64_t> b(k->edges().size(), 0);
        for (std::size_t r = 0; r < d0.rows(); ++r)
            for (std::size_t c = 0; c < d0.cols(); ++c)
                b[r] = ((b[r] + d0(r, c) * f[c]) % 3 + 3) % 3;
        CHECK(class_coordinates(data, 1, 3, b).trivial());
    }
    std::vector<std::int64_t> broken(k->edges().size(), 0);
    broken[0] = 1;
    CHECK_THROWS_AS(class_coordinates(data, 1, 3, broken), PreconditionError);
}

TEST_CASE("classes of group-valued cocycles")
{
    auto k = builtin_complex("torus7");
    auto v4 = builtin_group("Z2xZ2");
    auto dec = decompose_abelian(v4);
    CHECK(dec.factors == std::vector<std::int64_t>{2, 2});
    auto z6 = decompose_abelian(builtin_group("Z6"));
    CHECK(z6.factors == std::vector<std::int64_t>{6});
    CHECK_THROWS(decompose_abelian(builtin_group("S3")));

    // the 16 classes of H^1(T^2, Z2 x Z2) get 16 distinct class values
    auto classes = h1_classes(k, v4);
    CHECK(classes.count() == 16);
    std::vector<AbelianClass> seen;
    for (auto & c : classes.representatives) {
        auto cls = abelian_class(c);
        CHECK(cls.cohomology == std::vector<std::vector<std::int64_t>>{{2, 2}, {2, 2}});
        CHECK(cls.trivial() == (c == OneCochain::trivial(k, v4)));
        CHECK(std::find(seen.begin(), seen.end(), cls) == seen.end());
        seen.push_back(cls);
    }
}
