#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cocycle
{
    // Index of an element in a FiniteGroup's element list. The identity is always 0.
    using Element = std::uint32_t;

    // A permutation of 0..degree-1 as an image vector.
    using Permutation = std::vector<std::uint32_t>;

    // Sorted list of element indices.
    using Subset = std::vector<Element>;

    struct GroupLimits
    {
        std::size_t order_cap = 512;
        std::size_t aut_cap = 64;
    };

    class FiniteGroup
    {
    public:
        static constexpr Element identity = 0;

        // Validates closure, identity at index 0, the Latin-square property
        // and associativity on all triples.
        static auto from_table(std::size_t order, std::vector<Element> table, std::vector<std::string> names = {})
            -> FiniteGroup;

        auto order() const -> std::size_t { return _order; }
        auto mul(Element a, Element b) const -> Element { return _table[a * _order + b]; }
        auto inv(Element a) const -> Element { return _inverse[a]; }
        auto conj(Element u, Element x) const -> Element { return mul(mul(u, x), inv(u)); }
        auto commutator(Element a, Element b) const -> Element { return mul(mul(a, b), mul(inv(a), inv(b))); }
        auto power(Element a, std::size_t k) const -> Element;
        auto element_order(Element a) const -> std::size_t;

        auto name(Element a) const -> const std::string & { return _names[a]; }
        auto names() const -> const std::vector<std::string> & { return _names; }

        // Looks up an element by name, or by index written as "#k".
        auto find(std::string_view name) const -> std::optional<Element>;
        auto element(std::string_view name) const -> Element;

        auto is_abelian() const -> bool;
        auto is_cyclic() const -> bool;

        // Deterministic generating set: scan elements in index order and keep
        // each one not already in the subgroup generated so far.
        auto generators() const -> const std::vector<Element> & { return _generators; }

        auto table() const -> const std::vector<Element> & { return _table; }

        friend auto operator==(const FiniteGroup &, const FiniteGroup &) -> bool = default;

    private:
        FiniteGroup() = default;

        std::size_t _order = 0;
        std::vector<Element> _table;
        std::vector<Element> _inverse;
        std::vector<std::string> _names;
        std::vector<Element> _generators;
    };

    using GroupPtr = std::shared_ptr<const FiniteGroup>;

    auto compose_permutations(const Permutation & outer, const Permutation & inner) -> Permutation;

    // BFS closure of the generators under composition, (p*q)(x) = p(q(x)).
    // Element names are BFS words in the letters a, b, c, ...
    auto group_from_generators(std::size_t degree, const std::vector<Permutation> & generators,
        std::size_t order_cap = GroupLimits{}.order_cap) -> GroupPtr;

    auto builtin_group(std::string_view name) -> GroupPtr;
    auto builtin_group_names() -> const std::vector<std::string> &;

    auto generated_subgroup(const FiniteGroup & g, const std::vector<Element> & generators) -> Subset;
    auto is_subgroup(const FiniteGroup & g, const Subset & subset) -> bool;
    auto is_normal_subgroup(const FiniteGroup & g, const Subset & subset) -> bool;
    auto normal_closure(const FiniteGroup & g, const std::vector<Element> & seeds) -> Subset;
    auto center(const FiniteGroup & g) -> Subset;

    class GroupMorphism
    {
    public:
        GroupMorphism() = default;

        static auto make(GroupPtr domain, GroupPtr codomain, std::vector<Element> image) -> GroupMorphism;

        // Extends prescribed images of a generating set along BFS words, then
        // validates the result as a homomorphism.
        static auto from_images(GroupPtr domain, GroupPtr codomain,
            const std::vector<std::pair<Element, Element>> & prescribed) -> GroupMorphism;

        static auto identity(GroupPtr g) -> GroupMorphism;

        auto operator()(Element x) const -> Element { return _image[x]; }
        auto domain() const -> const GroupPtr & { return _domain; }
        auto codomain() const -> const GroupPtr & { return _codomain; }
        auto images() const -> const std::vector<Element> & { return _image; }

        auto is_injective() const -> bool;
        auto is_surjective() const -> bool;
        auto kernel() const -> Subset;
        auto image_set() const -> Subset;

        friend auto operator==(const GroupMorphism & a, const GroupMorphism & b) -> bool;

    private:
        GroupPtr _domain, _codomain;
        std::vector<Element> _image;
    };

    // outer after inner.
    auto compose(const GroupMorphism & outer, const GroupMorphism & inner) -> GroupMorphism;

    // Returns the first failed homomorphism axiom, if any.
    auto homomorphism_violation(const FiniteGroup & domain, const FiniteGroup & codomain,
        const std::vector<Element> & image) -> std::optional<std::string>;

    class GroupAction
    {
    public:
        GroupAction() = default;

        static auto make(GroupPtr actor, GroupPtr target, std::vector<Permutation> perms) -> GroupAction;
        static auto trivial(GroupPtr actor, GroupPtr target) -> GroupAction;

        // u acts on G by x -> i^-1(u i(x) u^-1). Requires i injective with normal image.
        static auto conjugation(const GroupMorphism & i) -> GroupAction;

        auto apply(Element u, Element x) const -> Element { return _perms[u][x]; }
        auto permutation(Element u) const -> const Permutation & { return _perms[u]; }
        auto actor() const -> const GroupPtr & { return _actor; }
        auto target() const -> const GroupPtr & { return _target; }
        auto permutations() const -> const std::vector<Permutation> & { return _perms; }

        friend auto operator==(const GroupAction & a, const GroupAction & b) -> bool;

    private:
        GroupPtr _actor, _target;
        std::vector<Permutation> _perms;
    };

    auto action_violation(const FiniteGroup & actor, const FiniteGroup & target,
        const std::vector<Permutation> & perms) -> std::optional<std::string>;

    // Checks i is a homomorphism, alpha an action by automorphisms, then
    // equivariance i(alpha_u(x)) = u i(x) u^-1 and Peiffer alpha_{i(x)}(y) = x y x^-1
    // on every pair. Returns a description of the first violation.
    auto crossed_module_violation(const FiniteGroup & g, const FiniteGroup & n, const std::vector<Element> & i,
        const std::vector<Permutation> & alpha) -> std::optional<std::string>;

    class CrossedModule
    {
    public:
        static auto make(GroupMorphism i, GroupAction alpha) -> CrossedModule;

        auto g() const -> const GroupPtr & { return _i.domain(); }
        auto n() const -> const GroupPtr & { return _i.codomain(); }
        auto i() const -> const GroupMorphism & { return _i; }
        auto alpha() const -> const GroupAction & { return _alpha; }

        friend auto operator==(const CrossedModule &, const CrossedModule &) -> bool = default;

    private:
        CrossedModule(GroupMorphism i, GroupAction alpha) : _i(std::move(i)), _alpha(std::move(alpha)) {}

        GroupMorphism _i;
        GroupAction _alpha;
    };

    using CrossedModulePtr = std::shared_ptr<const CrossedModule>;

    // The subgroup as a group in its own right (elements in parent index order,
    // names inherited) together with its inclusion.
    auto subgroup_group(const GroupPtr & parent, const Subset & subset) -> std::pair<GroupPtr, GroupMorphism>;

    // A normal subgroup G of N with inclusion and conjugation action.
    auto normal_subgroup_module(const GroupPtr & n, const Subset & subset) -> CrossedModulePtr;

    struct Quotient
    {
        GroupPtr q;
        GroupMorphism p;
        std::vector<Element> section;
    };

    // Cosets are ordered by their minimal element index, which is also the
    // section value and the coset's name.
    auto quotient(const GroupPtr & n, const Subset & normal_subgroup) -> Quotient;

    struct AutomorphismGroup
    {
        GroupPtr aut;
        GroupAction action;
        std::map<Permutation, Element> index;

        auto element_of(const Permutation & automorphism) const -> Element;
    };

    using AutomorphismGroupPtr = std::shared_ptr<const AutomorphismGroup>;

    // Aut(G) with multiplication (f*g)(x) = f(g(x)); elements sorted by their
    // permutation, so the identity comes first.
    auto automorphism_group(const GroupPtr & g, std::size_t cap = GroupLimits{}.aut_cap) -> AutomorphismGroupPtr;

    // G -> Aut G with i the inner automorphism map and alpha the identity.
    auto automorphism_module(const AutomorphismGroup & aut) -> CrossedModulePtr;

    // alpha : N -> Aut G as a morphism.
    auto action_morphism(const CrossedModule & xm, const AutomorphismGroup & aut) -> GroupMorphism;

    // N_G: normal closure in N of the mixed commutators i(x) u i(x)^-1 u^-1.
    auto commutator_closure(const CrossedModule & xm) -> Subset;

    struct Abelianization
    {
        Subset ng;
        GroupPtr n_prime;
        GroupMorphism pi_n;
        GroupPtr g_prime;
        GroupMorphism pi_g;
        GroupMorphism i_prime;
    };

    auto abelianization_data(const CrossedModule & xm) -> Abelianization;

    struct ExtensionData
    {
        CrossedModulePtr xm;
        GroupPtr q;
        GroupMorphism p;
        std::vector<Element> section;
        Abelianization ab;
        bool central = false;

        auto g() const -> const GroupPtr & { return xm->g(); }
        auto n() const -> const GroupPtr & { return xm->n(); }

        // Requires i injective (its image is then normal by equivariance).
        static auto from_crossed_module(CrossedModulePtr xm) -> ExtensionData;

        // Same extension with a different set-theoretic section of p.
        auto with_section(std::vector<Element> section) const -> ExtensionData;
    };

    // Normal-subgroup extensions by name: Z2->Z4, Z3->S3, Z2->Z2xZ2, Z2->Q8, Z2->D4.
    auto builtin_extension(std::string_view name) -> CrossedModulePtr;
    auto builtin_extension_names() -> const std::vector<std::string> &;
}
