#include <cocycle/abelian.hh>
#include <cocycle/error.hh>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

using std::int64_t;
using std::optional;
using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace cocycle
{
    auto Coefficients::name() const -> string
    {
        return modulus == 0 ? "Z" : "Z_" + std::to_string(modulus);
    }

    auto parse_coefficients(const string & text) -> optional<Coefficients>
    {
        if (text == "Z")
            return Coefficients{0};
        if (text.size() < 2 || text[0] != 'Z')
            return std::nullopt;
        auto digits = text.substr(text[1] == '_' ? 2 : 1);
        if (digits.empty() || digits.size() > 9 || ! std::all_of(digits.begin(), digits.end(), ::isdigit))
            return std::nullopt;
        auto m = std::stoll(digits);
        if (m < 1)
            return std::nullopt;
        return Coefficients{m};
    }

    namespace
    {
        auto simplices(const Nerve & k, int degree) -> vector<vector<Vertex>>
        {
            vector<vector<Vertex>> result;
            switch (degree) {
            case 0:
                for (Vertex v = 0; v < k.vertex_count(); ++v)
                    result.push_back({v});
                break;
            case 1:
                for (auto & e : k.edges())
                    result.push_back({e.begin(), e.end()});
                break;
            case 2:
                for (auto & t : k.triangles())
                    result.push_back({t.begin(), t.end()});
                break;
            case 3:
                for (auto & t : k.tetrahedra())
                    result.push_back({t.begin(), t.end()});
                break;
            default:
                break;
            }
            return result;
        }

        auto face_index(const Nerve & k, const vector<Vertex> & face) -> size_t
        {
            switch (face.size()) {
            case 1: return face[0];
            case 2: return k.edge_index(face[0], face[1]);
            case 3: return k.triangle_index({face[0], face[1], face[2]});
            default: throw std::logic_error("face of unsupported dimension");
            }
        }

        auto mod(int64_t x, int64_t m) -> int64_t
        {
            if (m == 0)
                return x;
            auto r = x % m;
            return r < 0 ? r + m : r;
        }
    }

    auto coboundary_matrix(const Nerve & k, int degree) -> IntMatrix
    {
        if (degree < -1 || degree > 3)
            throw UsageError("coboundary degree out of range");
        auto sources = degree < 0 ? 0 : k.simplex_count(degree);
        auto targets = simplices(k, degree + 1);
        IntMatrix d(targets.size(), sources);
        if (degree < 0)
            return d;
        for (size_t r = 0; r < targets.size(); ++r)
            for (size_t drop = 0; drop < targets[r].size(); ++drop) {
                auto face = targets[r];
                face.erase(face.begin() + long(drop));
                d(r, face_index(k, face)) = (drop % 2 == 0) ? 1 : -1;
            }
        return d;
    }

    auto AbelianComplexData::build(NervePtr nerve) -> AbelianComplexData
    {
        AbelianComplexData data;
        for (int n = -1; n <= 3; ++n)
            data.d.push_back(coboundary_matrix(*nerve, n));
        for (size_t n = 0; n + 1 < data.d.size(); ++n)
            if (! multiply(data.d[n + 1], data.d[n]).is_zero())
                throw std::logic_error("coboundary squared is not zero");
        for (auto & m : data.d)
            data.smith.push_back(smith_normal_form(m));
        data.nerve = std::move(nerve);
        return data;
    }

    auto normalize_invariant_factors(const vector<int64_t> & orders) -> vector<int64_t>
    {
        std::map<int64_t, vector<int64_t>> by_prime;
        size_t free = 0;
        for (auto o : orders) {
            if (o == 0) {
                ++free;
                continue;
            }
            auto x = o;
            for (int64_t p = 2; p * p <= x; ++p)
                if (x % p == 0) {
                    int64_t q = 1;
                    while (x % p == 0) {
                        x /= p;
                        q *= p;
                    }
                    by_prime[p].push_back(q);
                }
            if (x > 1)
                by_prime[x].push_back(x);
        }
        size_t length = 0;
        for (auto & [p, powers] : by_prime) {
            std::sort(powers.rbegin(), powers.rend());
            length = std::max(length, powers.size());
        }
        vector<int64_t> result(length, 1);
        for (auto & [p, powers] : by_prime)
            for (size_t k = 0; k < powers.size(); ++k)
                result[length - 1 - k] = checked_mul(result[length - 1 - k], powers[k]);
        result.insert(result.end(), free, 0);
        return result;
    }

    namespace
    {
        auto image_size(const SmithForm & s, int64_t m) -> uint64_t
        {
            uint64_t r = 1;
            for (auto sigma : s.diagonal)
                r = count_mul(r, uint64_t(m / std::gcd(sigma, m)));
            return r;
        }

        auto cohomology_factors(const AbelianComplexData & data, int64_t m, int degree) -> vector<int64_t>
        {
            auto & in = data.smith_out_of(degree - 1);
            auto & out = data.smith_out_of(degree);
            auto cochains = data.nerve->simplex_count(degree);
            auto free = cochains - in.rank() - out.rank();

            vector<int64_t> orders;
            if (m == 0) {
                orders.assign(free, 0);
                for (auto t : in.diagonal)
                    if (t > 1)
                        orders.push_back(t);
            }
            else {
                orders.assign(free, m);
                for (auto t : in.diagonal)
                    orders.push_back(std::gcd(t, m));
                for (auto t : out.diagonal)
                    orders.push_back(std::gcd(t, m));
            }
            orders.erase(std::remove(orders.begin(), orders.end(), 1), orders.end());
            return normalize_invariant_factors(orders);
        }
    }

    auto abelian_cohomology(const NervePtr & k, Coefficients coeff, int degree) -> AbelianCohomology
    {
        if (degree < 0 || degree > 3)
            throw UsageError("abelian cohomology degree must be 0..3");
        if (coeff.modulus < 0)
            throw UsageError("negative coefficient modulus");
        auto data = AbelianComplexData::build(k);
        AbelianCohomology result;
        result.coefficients = coeff;
        result.degree = degree;
        result.invariant_factors = cohomology_factors(data, coeff.modulus, degree);

        auto infinite = std::find(result.invariant_factors.begin(), result.invariant_factors.end(), 0) !=
            result.invariant_factors.end();
        if (! infinite) {
            uint64_t count = 1;
            for (auto f : result.invariant_factors)
                count = count_mul(count, uint64_t(f));
            result.count = count;

            if (coeff.modulus > 0) {
                // |ker d_n| / |im d_{n-1}| counted directly over Z_m
                try {
                    auto m = coeff.modulus;
                    auto all = count_pow(uint64_t(m), k->simplex_count(degree));
                    auto kernel = all / image_size(data.smith_out_of(degree), m);
                    auto image = image_size(data.smith_out_of(degree - 1), m);
                    if (kernel % image != 0 || kernel / image != count)
                        throw std::logic_error("abelian cohomology count cross-check failed");
                }
                catch (const SizeError &) {
                }
            }
        }
        return result;
    }

    auto ClassCoordinates::trivial() const -> bool
    {
        return std::all_of(values.begin(), values.end(), [](int64_t x) { return x == 0; });
    }

    auto class_coordinates(const AbelianComplexData & data, int degree, int64_t m, const vector<int64_t> & z)
        -> ClassCoordinates
    {
        if (z.size() != data.nerve->simplex_count(degree))
            throw UsageError("cochain has the wrong length");
        for (auto x : multiply(data.out_of(degree), z))
            if (mod(x, m) != 0)
                throw PreconditionError("abelian cochain is not a cocycle");

        auto & s = data.smith_out_of(degree - 1);
        auto c = multiply(s.p, z);
        ClassCoordinates result;
        for (size_t i = 0; i < c.size(); ++i) {
            auto modulus = i < s.rank() ? (m == 0 ? s.diagonal[i] : std::gcd(s.diagonal[i], m)) : m;
            if (modulus == 1)
                continue;
            result.moduli.push_back(modulus);
            result.values.push_back(mod(c[i], modulus));
        }
        return result;
    }

    auto decompose_abelian(const GroupPtr & gp) -> AbelianDecomposition
    {
        auto & g = *gp;
        if (! g.is_abelian())
            throw PreconditionError("decomposition of a nonabelian group");
        auto & gens = g.generators();
        auto r = gens.size();

        vector<vector<int64_t>> word(g.order());
        vector<char> seen(g.order(), 0);
        vector<Element> queue{FiniteGroup::identity};
        word[0].assign(r, 0);
        seen[0] = 1;
        for (size_t head = 0; head < queue.size(); ++head) {
            auto a = queue[head];
            for (size_t s = 0; s < r; ++s) {
                auto b = g.mul(a, gens[s]);
                if (! seen[b]) {
                    seen[b] = 1;
                    word[b] = word[a];
                    ++word[b][s];
                    queue.push_back(b);
                }
            }
        }

        IntMatrix rel(g.order() * r, r);
        for (Element a = 0; a < g.order(); ++a)
            for (size_t s = 0; s < r; ++s) {
                auto b = g.mul(a, gens[s]);
                for (size_t t = 0; t < r; ++t)
                    rel(a * r + s, t) = word[a][t] + (t == s ? 1 : 0) - word[b][t];
            }
        auto snf = smith_normal_form(rel);
        if (snf.rank() != r)
            throw std::logic_error("finite abelian group with a free relation module");

        AbelianDecomposition dec;
        dec.group = gp;
        vector<size_t> kept;
        for (size_t k = 0; k < r; ++k)
            if (snf.diagonal[k] > 1) {
                kept.push_back(k);
                dec.factors.push_back(snf.diagonal[k]);
            }
        for (Element a = 0; a < g.order(); ++a) {
            vector<int64_t> coords;
            for (auto k : kept) {
                int64_t x = 0;
                for (size_t t = 0; t < r; ++t)
                    x = checked_add(x, checked_mul(word[a][t], snf.q(t, k)));
                coords.push_back(mod(x, snf.diagonal[k]));
            }
            dec.coordinates.push_back(std::move(coords));
        }
        return dec;
    }

    auto AbelianClass::trivial() const -> bool
    {
        return std::all_of(blocks.begin(), blocks.end(), [](const ClassCoordinates & b) { return b.trivial(); });
    }

    auto abelian_class(const AbelianComplexData & data, int degree, const AbelianDecomposition & dec,
        const vector<Element> & values) -> AbelianClass
    {
        AbelianClass result;
        result.degree = degree;
        result.coefficient_factors = dec.factors;
        for (size_t k = 0; k < dec.factors.size(); ++k) {
            vector<int64_t> z;
            for (auto x : values)
                z.push_back(dec.coordinates[x][k]);
            result.blocks.push_back(class_coordinates(data, degree, dec.factors[k], z));
            result.cohomology.push_back(cohomology_factors(data, dec.factors[k], degree));
        }
        return result;
    }

    auto abelian_class(const OneCochain & c) -> AbelianClass
    {
        return abelian_class(AbelianComplexData::build(c.nerve), 1, decompose_abelian(c.group), c.values);
    }

    auto abelian_class(const TwoCochain & c) -> AbelianClass
    {
        return abelian_class(AbelianComplexData::build(c.nerve), 2, decompose_abelian(c.group), c.values);
    }
}
