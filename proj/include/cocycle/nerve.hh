#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cocycle
{
    using Vertex = std::uint32_t;
    using Edge = std::array<Vertex, 2>;
    using Triangle = std::array<Vertex, 3>;
    using Tetrahedron = std::array<Vertex, 4>;

    // Faces of a triangle i<j<k as edge indices.
    struct TriangleFaces
    {
        std::size_t ij, jk, ik;
    };

    // Faces of a tetrahedron i<j<k<l as triangle indices, plus the edge ij
    // whose value acts in the tetrahedral relation.
    struct TetrahedronFaces
    {
        std::size_t ijk, ikl, jkl, ijl;
        std::size_t edge_ij;
    };

    // A finite simplicial complex up to dimension 3 with totally ordered
    // vertices, standing in for the nerve of a good cover. All simplices are
    // strictly increasing tuples, listed in lexicographic order.
    class Nerve
    {
    public:
        auto vertex_count() const -> std::size_t { return _vertex_count; }
        auto edges() const -> const std::vector<Edge> & { return _edges; }
        auto triangles() const -> const std::vector<Triangle> & { return _triangles; }
        auto tetrahedra() const -> const std::vector<Tetrahedron> & { return _tetrahedra; }
        auto name() const -> const std::string & { return _name; }

        auto simplex_count(int dim) const -> std::size_t;
        auto euler_characteristic() const -> long;

        // Index of edge (i,j), i<j, or npos.
        auto edge_index(Vertex i, Vertex j) const -> std::size_t;
        auto triangle_index(const Triangle & t) const -> std::size_t;

        auto triangle_faces(std::size_t t) const -> const TriangleFaces & { return _triangle_faces[t]; }
        auto tetrahedron_faces(std::size_t t) const -> const TetrahedronFaces & { return _tetrahedron_faces[t]; }

        // Triangles having the given edge as a face.
        auto triangles_of_edge(std::size_t e) const -> const std::vector<std::size_t> & { return _edge_triangles[e]; }

        // Simplices that are not faces of any other simplex.
        auto facets() const -> std::vector<std::vector<Vertex>>;

        friend auto operator==(const Nerve & a, const Nerve & b) -> bool
        {
            return a._vertex_count == b._vertex_count && a._edges == b._edges && a._triangles == b._triangles &&
                a._tetrahedra == b._tetrahedra;
        }

        static constexpr std::size_t npos = ~std::size_t(0);

    private:
        friend auto build_complex(const std::vector<std::vector<Vertex>> & facets, std::string name)
            -> std::shared_ptr<const Nerve>;

        std::size_t _vertex_count = 0;
        std::vector<Edge> _edges;
        std::vector<Triangle> _triangles;
        std::vector<Tetrahedron> _tetrahedra;
        std::string _name;
        std::vector<std::size_t> _edge_lookup;
        std::vector<TriangleFaces> _triangle_faces;
        std::vector<TetrahedronFaces> _tetrahedron_faces;
        std::vector<std::vector<std::size_t>> _edge_triangles;
    };

    using NervePtr = std::shared_ptr<const Nerve>;

    // Face closure of the given facets. Tuples are sorted; vertex indices must
    // be dense from 0 and no tuple may exceed four vertices.
    auto build_complex(const std::vector<std::vector<Vertex>> & facets, std::string name = {}) -> NervePtr;

    // circle3, sphere2_tet, torus7, rp2_6, sphere3_pent, disk3.
    auto builtin_complex(std::string_view name) -> NervePtr;
    auto builtin_complex_names() -> const std::vector<std::string> &;

    struct SpanningTree
    {
        Vertex root = 0;
        // parent[root] == root.
        std::vector<Vertex> parent;
        // Per edge index: true when the edge belongs to the tree.
        std::vector<char> in_tree;
        // Vertices in BFS discovery order.
        std::vector<Vertex> order;

        auto tree_edge_count() const -> std::size_t;
    };

    // BFS tree from root over neighbours in increasing order. Throws
    // ConnectivityError when some vertex is unreachable.
    auto spanning_tree(const Nerve & k, Vertex root = 0) -> SpanningTree;
}
