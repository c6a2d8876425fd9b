#include <cocycle/error.hh>
#include <cocycle/nerve.hh>

#include <algorithm>
#include <deque>
#include <set>

using std::string;
using std::string_view;
using std::vector;

namespace cocycle
{
    auto Nerve::simplex_count(int dim) const -> std::size_t
    {
        switch (dim) {
        case 0: return _vertex_count;
        case 1: return _edges.size();
        case 2: return _triangles.size();
        case 3: return _tetrahedra.size();
        default: return 0;
        }
    }

    auto Nerve::euler_characteristic() const -> long
    {
        return long(_vertex_count) - long(_edges.size()) + long(_triangles.size()) - long(_tetrahedra.size());
    }

    auto Nerve::edge_index(Vertex i, Vertex j) const -> std::size_t
    {
        if (i >= _vertex_count || j >= _vertex_count)
            return npos;
        return _edge_lookup[i * _vertex_count + j];
    }

    auto Nerve::triangle_index(const Triangle & t) const -> std::size_t
    {
        auto it = std::lower_bound(_triangles.begin(), _triangles.end(), t);
        if (it == _triangles.end() || *it != t)
            return npos;
        return std::size_t(it - _triangles.begin());
    }

    auto Nerve::facets() const -> vector<vector<Vertex>>
    {
        std::set<vector<Vertex>> covered;
        auto cover = [&](const vector<Vertex> & s) {
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                auto f = s;
                f.erase(f.begin() + long(drop));
                covered.insert(f);
            }
        };
        vector<vector<Vertex>> all;
        for (auto & t : _tetrahedra)
            all.push_back({t.begin(), t.end()});
        for (auto & t : _triangles)
            all.push_back({t.begin(), t.end()});
        for (auto & e : _edges)
            all.push_back({e.begin(), e.end()});
        for (Vertex v = 0; v < _vertex_count; ++v)
            all.push_back({v});
        for (auto & s : all)
            if (s.size() > 1)
                cover(s);

        vector<vector<Vertex>> result;
        for (auto & s : all)
            if (! covered.contains(s))
                result.push_back(s);
        std::sort(result.begin(), result.end());
        return result;
    }

    auto build_complex(const vector<vector<Vertex>> & facets, string name) -> NervePtr
    {
        std::set<vector<Vertex>> simplices;
        Vertex max_vertex = 0;
        bool any = false;
        for (auto f : facets) {
            if (f.empty())
                throw StructureError("empty facet");
            if (f.size() > 4)
                throw DimensionError("facet with " + std::to_string(f.size()) +
                    " vertices; simplices are limited to tetrahedra");
            std::sort(f.begin(), f.end());
            if (std::adjacent_find(f.begin(), f.end()) != f.end())
                throw StructureError("facet repeats a vertex");
            max_vertex = std::max(max_vertex, f.back());
            any = true;
            // every nonempty subset is a face
            for (unsigned mask = 1; mask < (1u << f.size()); ++mask) {
                vector<Vertex> face;
                for (std::size_t k = 0; k < f.size(); ++k)
                    if (mask & (1u << k))
                        face.push_back(f[k]);
                simplices.insert(face);
            }
        }
        if (! any)
            throw StructureError("complex has no facets");

        auto result = std::make_shared<Nerve>();
        auto & k = *result;
        k._vertex_count = max_vertex + 1;
        k._name = std::move(name);
        vector<char> present(k._vertex_count, 0);
        for (auto & s : simplices) {
            switch (s.size()) {
            case 1: present[s[0]] = 1; break;
            case 2: k._edges.push_back({s[0], s[1]}); break;
            case 3: k._triangles.push_back({s[0], s[1], s[2]}); break;
            case 4: k._tetrahedra.push_back({s[0], s[1], s[2], s[3]}); break;
            }
        }
        for (Vertex v = 0; v < k._vertex_count; ++v)
            if (! present[v])
                throw StructureError("vertex indices are not dense: " + std::to_string(v) + " is missing");

        auto n = k._vertex_count;
        k._edge_lookup.assign(n * n, Nerve::npos);
        for (std::size_t e = 0; e < k._edges.size(); ++e)
            k._edge_lookup[k._edges[e][0] * n + k._edges[e][1]] = e;

        k._edge_triangles.assign(k._edges.size(), {});
        for (std::size_t t = 0; t < k._triangles.size(); ++t) {
            auto [i, j, l] = k._triangles[t];
            TriangleFaces f{k.edge_index(i, j), k.edge_index(j, l), k.edge_index(i, l)};
            k._triangle_faces.push_back(f);
            k._edge_triangles[f.ij].push_back(t);
            k._edge_triangles[f.jk].push_back(t);
            k._edge_triangles[f.ik].push_back(t);
        }
        for (auto & t : k._tetrahedra) {
            auto [i, j, l, m] = t;
            k._tetrahedron_faces.push_back({k.triangle_index({i, j, l}), k.triangle_index({i, l, m}),
                k.triangle_index({j, l, m}), k.triangle_index({i, j, m}), k.edge_index(i, j)});
        }
        return result;
    }

    namespace
    {
        auto all_subsets(Vertex n, std::size_t size) -> vector<vector<Vertex>>
        {
            vector<vector<Vertex>> result;
            vector<Vertex> current;
            auto rec = [&](auto & self, Vertex start) -> void {
                if (current.size() == size) {
                    result.push_back(current);
                    return;
                }
                for (Vertex v = start; v < n; ++v) {
                    current.push_back(v);
                    self(self, v + 1);
                    current.pop_back();
                }
            };
            rec(rec, 0);
            return result;
        }

        auto torus7_facets() -> vector<vector<Vertex>>
        {
            vector<vector<Vertex>> f;
            for (Vertex i = 0; i < 7; ++i) {
                f.push_back({i, (i + 1) % 7, (i + 3) % 7});
                f.push_back({i, (i + 2) % 7, (i + 3) % 7});
            }
            return f;
        }
    }

    auto builtin_complex(string_view name) -> NervePtr
    {
        if (name == "circle3")
            return build_complex({{0, 1}, {1, 2}, {0, 2}}, "circle3");
        if (name == "sphere2_tet")
            return build_complex(all_subsets(4, 3), "sphere2_tet");
        if (name == "torus7")
            return build_complex(torus7_facets(), "torus7");
        if (name == "rp2_6")
            return build_complex({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1}, {1, 2, 4}, {2, 3, 5},
                                     {3, 4, 1}, {4, 5, 2}, {5, 1, 3}},
                "rp2_6");
        if (name == "sphere3_pent")
            return build_complex(all_subsets(5, 4), "sphere3_pent");
        if (name == "disk3")
            return build_complex({{0, 1, 2}}, "disk3");
        throw UsageError("unknown built-in complex '" + string(name) + "'");
    }

    auto builtin_complex_names() -> const vector<string> &
    {
        static const vector<string> names{"circle3", "sphere2_tet", "torus7", "rp2_6", "sphere3_pent", "disk3"};
        return names;
    }

    auto SpanningTree::tree_edge_count() const -> std::size_t
    {
        return std::size_t(std::count(in_tree.begin(), in_tree.end(), 1));
    }

    auto spanning_tree(const Nerve & k, Vertex root) -> SpanningTree
    {
        auto n = k.vertex_count();
        if (root >= n)
            throw UsageError("spanning tree root out of range");
        vector<vector<Vertex>> adjacent(n);
        for (auto [i, j] : k.edges()) {
            adjacent[i].push_back(j);
            adjacent[j].push_back(i);
        }
        for (auto & a : adjacent)
            std::sort(a.begin(), a.end());

        SpanningTree tree;
        tree.root = root;
        tree.parent.assign(n, root);
        tree.in_tree.assign(k.edges().size(), 0);
        vector<char> seen(n, 0);
        seen[root] = 1;
        tree.order.push_back(root);
        for (std::size_t head = 0; head < tree.order.size(); ++head) {
            auto v = tree.order[head];
            for (auto w : adjacent[v]) {
                if (seen[w])
                    continue;
                seen[w] = 1;
                tree.parent[w] = v;
                tree.in_tree[k.edge_index(std::min(v, w), std::max(v, w))] = 1;
                tree.order.push_back(w);
            }
        }
        if (tree.order.size() != n)
            throw ConnectivityError("complex is disconnected: " + std::to_string(n - tree.order.size()) +
                " vertices unreachable from " + std::to_string(root));
        return tree;
    }
}
