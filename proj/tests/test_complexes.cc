#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cocycle/error.hh>
#include <cocycle/nerve.hh>

#include <set>

using namespace cocycle;

TEST_CASE("built-in complexes: simplex counts and Euler characteristic")
{
    struct Expect
    {
        const char * name;
        std::size_t v, e, t, tet;
        long chi;
    };
    for (auto x : {Expect{"circle3", 3, 3, 0, 0, 0}, Expect{"sphere2_tet", 4, 6, 4, 0, 2},
             Expect{"torus7", 7, 21, 14, 0, 0}, Expect{"rp2_6", 6, 15, 10, 0, 1},
             Expect{"sphere3_pent", 5, 10, 10, 5, 0}, Expect{"disk3", 3, 3, 1, 0, 1}}) {
        CAPTURE(x.name);
        auto k = builtin_complex(x.name);
        CHECK(k->vertex_count() == x.v);
        CHECK(k->edges().size() == x.e);
        CHECK(k->triangles().size() == x.t);
        CHECK(k->tetrahedra().size() == x.tet);
        CHECK(k->euler_characteristic() == x.chi);
        CHECK(k->name() == x.name);
    }
    CHECK_THROWS_AS(builtin_complex("klein"), UsageError);
}

TEST_CASE("simplices are increasing and listed in lexicographic order")
{
    for (auto & name : builtin_complex_names()) {
        INFO("name: ", name);
        auto k = builtin_complex(name);
        CHECK(std::is_sorted(k->edges().begin(), k->edges().end()));
        CHECK(std::is_sorted(k->triangles().begin(), k->triangles().end()));
        CHECK(std::is_sorted(k->tetrahedra().begin(), k->tetrahedra().end()));
        for (auto & t : k->triangles())
            CHECK((t[0] < t[1] && t[1] < t[2]));
    }
}

TEST_CASE("face lookups agree with the simplex lists")
{
    for (auto & name : builtin_complex_names()) {
        INFO("name: ", name);
        auto k = builtin_complex(name);
        for (std::size_t e = 0; e < k->edges().size(); ++e)
            CHECK(k->edge_index(k->edges()[e][0], k->edges()[e][1]) == e);
        for (std::size_t t = 0; t < k->triangles().size(); ++t) {
            auto [i, j, l] = k->triangles()[t];
            auto & f = k->triangle_faces(t);
            CHECK(f.ij == k->edge_index(i, j));
            CHECK(f.jk == k->edge_index(j, l));
            CHECK(f.ik == k->edge_index(i, l));
            CHECK(k->triangle_index(k->triangles()[t]) == t);
            for (auto e : {f.ij, f.jk, f.ik}) {
                auto & list = k->triangles_of_edge(e);
                CHECK(std::find(list.begin(), list.end(), t) != list.end());
            }
        }
        for (std::size_t t = 0; t < k->tetrahedra().size(); ++t) {
            auto [i, j, l, m] = k->tetrahedra()[t];
            auto & f = k->tetrahedron_faces(t);
            CHECK(f.ijk == k->triangle_index({i, j, l}));
            CHECK(f.ikl == k->triangle_index({i, l, m}));
            CHECK(f.jkl == k->triangle_index({j, l, m}));
            CHECK(f.ijl == k->triangle_index({i, j, m}));
            CHECK(f.edge_ij == k->edge_index(i, j));
        }
        CHECK(k->edge_index(0, 0) == Nerve::npos);
    }
}

TEST_CASE("the torus and projective plane are closed surfaces")
{
    for (auto name : {"sphere2_tet", "torus7", "rp2_6"}) {
        INFO("name: ", name);
        auto k = builtin_complex(name);
        for (std::size_t e = 0; e < k->edges().size(); ++e)
            CHECK(k->triangles_of_edge(e).size() == 2);
    }
}

TEST_CASE("build_complex closes faces and validates input")
{
    auto k = build_complex({{0, 1, 2, 3}});
    CHECK(k->edges().size() == 6);
    CHECK(k->triangles().size() == 4);
    CHECK(k->tetrahedra().size() == 1);
    CHECK(k->euler_characteristic() == 1);

    auto shuffled = build_complex({{2, 0, 1}});
    CHECK(*shuffled == *build_complex({{0, 1, 2}}));

    CHECK_THROWS_AS(build_complex({{0, 1, 2, 3, 4}}), DimensionError);
    CHECK_THROWS_AS(build_complex({{0, 2}}), StructureError);
    CHECK_THROWS_AS(build_complex({{0, 0, 1}}), StructureError);
    CHECK_THROWS_AS(build_complex({{}}), StructureError);
    CHECK_THROWS_AS(build_complex({}), StructureError);
}

TEST_CASE("facets are the maximal simplices")
{
    auto k = build_complex({{0, 1, 2}, {2, 3}, {0, 1}});
    auto f = k->facets();
    CHECK(f == std::vector<std::vector<Vertex>>{{0, 1, 2}, {2, 3}});
    for (auto & name : builtin_complex_names()) {
        auto b = builtin_complex(name);
        CHECK(*build_complex(b->facets()) == *b);
    }
}

TEST_CASE("spanning trees")
{
    for (auto & name : builtin_complex_names()) {
        INFO("name: ", name);
        auto k = builtin_complex(name);
        for (Vertex root = 0; root < k->vertex_count(); ++root) {
            auto tree = spanning_tree(*k, root);
            CHECK(tree.root == root);
            CHECK(tree.parent[root] == root);
            CHECK(tree.tree_edge_count() == k->vertex_count() - 1);
            CHECK(tree.order.size() == k->vertex_count());
            // every vertex reaches the root along parents
            for (Vertex v = 0; v < k->vertex_count(); ++v) {
                auto w = v;
                for (std::size_t steps = 0; steps < k->vertex_count() && w != root; ++steps) {
                    auto parent = tree.parent[w];
                    CHECK(tree.in_tree[k->edge_index(std::min(w, parent), std::max(w, parent))]);
                    w = parent;
                }
                CHECK(w == root);
            }
        }
    }
    CHECK_THROWS_AS(spanning_tree(*build_complex({{0, 1}, {2, 3}})), ConnectivityError);
}
