#include <cocycle/config.hh>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <map>
#include <set>
#include <sstream>

using std::optional;
using std::pair;
using std::size_t;
using std::string;
using std::vector;

namespace cocycle
{
    ConfigError::ConfigError(string code, size_t line, size_t column, const string & message) :
        Error(std::to_string(line) + ":" + std::to_string(column) + ": " + code + ": " + message),
        _code(std::move(code)),
        _line(line),
        _column(column),
        _message(message)
    {
    }

    namespace
    {
        enum class TokenKind
        {
            word,
            string,
            punct,
            end
        };

        struct Token
        {
            TokenKind kind;
            string text;
            size_t line, column;
        };

        auto one_of(const char * set, char c) -> bool
        {
            return c != '\0' && std::strchr(set, c);
        }

        auto is_word_char(char c) -> bool
        {
            return std::isalnum(static_cast<unsigned char>(c)) || one_of("_->^*#.+'", c);
        }

        auto lex(const string & text) -> vector<Token>
        {
            vector<Token> tokens;
            size_t line = 1, column = 1, pos = 0;
            auto advance = [&]() {
                if (text[pos] == '\n') {
                    ++line;
                    column = 1;
                }
                else
                    ++column;
                ++pos;
            };

            while (pos < text.size()) {
                char c = text[pos];
                if (c == '#' && ! (pos + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[pos + 1])))) {
                    while (pos < text.size() && text[pos] != '\n')
                        advance();
                    continue;
                }
                if (std::isspace(static_cast<unsigned char>(c))) {
                    advance();
                    continue;
                }
                Token t{TokenKind::word, "", line, column};
                if (c == '"') {
                    t.kind = TokenKind::string;
                    advance();
                    while (true) {
                        if (pos >= text.size() || text[pos] == '\n')
                            throw ConfigError("E-SYNTAX", t.line, t.column, "unterminated string");
                        if (text[pos] == '"')
                            break;
                        if (text[pos] == '\\') {
                            advance();
                            if (pos >= text.size() || (text[pos] != '"' && text[pos] != '\\'))
                                throw ConfigError("E-SYNTAX", line, column, "bad escape in string");
                        }
                        t.text += text[pos];
                        advance();
                    }
                    advance();
                }
                else if (one_of("{}[](),;=:", c)) {
                    t.kind = TokenKind::punct;
                    t.text = string(1, c);
                    advance();
                }
                else if (is_word_char(c)) {
                    while (pos < text.size() && is_word_char(text[pos])) {
                        t.text += text[pos];
                        advance();
                    }
                }
                else
                    throw ConfigError("E-SYNTAX", line, column, string("unexpected character '") + c + "'");
                tokens.push_back(std::move(t));
            }
            tokens.push_back(Token{TokenKind::end, "", line, column});
            return tokens;
        }

        auto contains(const vector<string> & names, const string & name) -> bool
        {
            return std::find(names.begin(), names.end(), name) != names.end();
        }

        auto quote(const string & s) -> string
        {
            string r = "\"";
            for (auto c : s) {
                if (c == '"' || c == '\\')
                    r += '\\';
                r += c;
            }
            return r + "\"";
        }

        // Group-valued maps given on some elements, closed along products.
        auto close_action(const GroupPtr & actor, const GroupPtr & target,
            const vector<pair<Element, Permutation>> & prescribed) -> vector<Permutation>
        {
            vector<optional<Permutation>> perms(actor->order());
            Permutation id(target->order());
            for (Element x = 0; x < target->order(); ++x)
                id[x] = x;
            perms[FiniteGroup::identity] = id;
            vector<Element> seeds;
            for (auto & [u, p] : prescribed) {
                if (perms[u] && *perms[u] != p)
                    throw StructureError("conflicting action of " + actor->name(u));
                perms[u] = p;
                seeds.push_back(u);
            }
            vector<Element> queue{FiniteGroup::identity};
            vector<char> seen(actor->order(), 0);
            seen[FiniteGroup::identity] = 1;
            for (size_t head = 0; head < queue.size(); ++head) {
                auto w = queue[head];
                for (auto s : seeds) {
                    auto ws = actor->mul(w, s);
                    auto p = compose_permutations(*perms[w], *perms[s]);
                    if (! seen[ws]) {
                        seen[ws] = 1;
                        queue.push_back(ws);
                    }
                    if (! perms[ws])
                        perms[ws] = p;
                    else if (*perms[ws] != p)
                        throw StructureError("action does not extend to a homomorphism (conflict at " +
                            actor->name(ws) + ")");
                }
            }
            vector<Permutation> result;
            for (Element u = 0; u < actor->order(); ++u) {
                if (! perms[u])
                    throw StructureError("action is not given on a generating set (missing " + actor->name(u) + ")");
                result.push_back(*perms[u]);
            }
            return result;
        }

        class Parser
        {
        public:
            Parser(const string & text, const Budgets & defaults) : _tokens(lex(text))
            {
                _config.budgets = defaults;
            }

            auto parse() -> JobConfig
            {
                header();
                while (peek().kind != TokenKind::end)
                    statement();
                for (auto & t : _config.tasks) {
                    try {
                        validate_task(_config, t);
                    }
                    catch (const ConfigError & e) {
                        throw ConfigError(e.code(), t.line, 1, e.message());
                    }
                }
                return std::move(_config);
            }

        private:
            vector<Token> _tokens;
            size_t _pos = 0;
            JobConfig _config;
            std::map<string, MorphismDef> _morphisms;

            auto peek(size_t ahead = 0) const -> const Token &
            {
                return _tokens[std::min(_pos + ahead, _tokens.size() - 1)];
            }

            auto next() -> const Token &
            {
                auto & t = peek();
                if (t.kind != TokenKind::end)
                    ++_pos;
                return t;
            }

            [[noreturn]] auto fail(const string & code, const Token & at, const string & message) const -> void
            {
                throw ConfigError(code, at.line, at.column, message);
            }

            auto describe(const Token & t) const -> string
            {
                switch (t.kind) {
                case TokenKind::end: return "end of input";
                case TokenKind::string: return "string " + quote(t.text);
                default: return "'" + t.text + "'";
                }
            }

            auto at_punct(const string & p) const -> bool
            {
                return peek().kind == TokenKind::punct && peek().text == p;
            }

            auto at_word(const string & w) const -> bool
            {
                return peek().kind == TokenKind::word && peek().text == w;
            }

            auto expect_punct(const string & p) -> const Token &
            {
                if (! at_punct(p))
                    fail("E-SYNTAX", peek(), "expected '" + p + "', found " + describe(peek()));
                return next();
            }

            auto expect_keyword(const string & w) -> const Token &
            {
                if (! at_word(w))
                    fail("E-SYNTAX", peek(), "expected '" + w + "', found " + describe(peek()));
                return next();
            }

            auto word() -> const Token &
            {
                if (peek().kind != TokenKind::word)
                    fail("E-SYNTAX", peek(), "expected a name, found " + describe(peek()));
                return next();
            }

            // A word or quoted string naming an element.
            auto element_text() -> const Token &
            {
                if (peek().kind != TokenKind::word && peek().kind != TokenKind::string)
                    fail("E-SYNTAX", peek(), "expected an element name, found " + describe(peek()));
                return next();
            }

            auto number() -> std::uint64_t
            {
                auto & t = word();
                std::uint64_t v = 0;
                auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
                if (ec != std::errc{} || end != t.text.data() + t.text.size())
                    fail("E-SYNTAX", t, "expected a non-negative integer, found " + describe(t));
                return v;
            }

            auto skip_separators() -> void
            {
                while (at_punct(";") || at_punct(","))
                    next();
            }

            auto header() -> void
            {
                auto & t = peek();
                if (! at_word("cocycle-config"))
                    fail("E-HEADER", t, "missing 'cocycle-config v1' header");
                next();
                auto & v = peek();
                if (v.kind != TokenKind::word || v.line != t.line)
                    fail("E-HEADER", v, "missing config version");
                if (v.text != "v1")
                    fail("E-HEADER", v, "unsupported config version '" + v.text + "'");
                next();
            }

            auto element(const GroupPtr & g, const Token & t) const -> Element
            {
                if (auto x = g->find(t.text))
                    return *x;
                fail("E-NAME", t, "no element named " + quote(t.text));
            }

            auto group(const Token & t) const -> GroupPtr
            {
                if (auto d = _config.find_group(t.text))
                    return d->group;
                if (contains(builtin_group_names(), t.text))
                    return builtin_group(t.text);
                fail("E-NAME", t, "unknown group '" + t.text + "'");
            }

            auto complex(const Token & t) const -> NervePtr
            {
                if (auto d = _config.find_complex(t.text))
                    return d->nerve;
                if (contains(builtin_complex_names(), t.text))
                    return builtin_complex(t.text);
                fail("E-NAME", t, "unknown complex '" + t.text + "'");
            }

            auto check_new(const Token & name, bool taken) const -> void
            {
                if (taken)
                    fail("E-DUP", name, "'" + name.text + "' is already defined");
            }

            auto check_order(const Token & at, const GroupPtr & g) const -> void
            {
                if (g->order() > _config.budgets.order)
                    fail("E-SIZE", at,
                        "group of order " + std::to_string(g->order()) + " exceeds order cap " +
                            std::to_string(_config.budgets.order));
            }

            auto statement() -> void
            {
                auto & t = peek();
                if (t.kind != TokenKind::word)
                    fail("E-SYNTAX", t, "expected a statement, found " + describe(t));
                if (t.text == "group")
                    group_statement();
                else if (t.text == "complex")
                    complex_statement();
                else if (t.text == "morphism")
                    morphism_statement();
                else if (t.text == "crossed")
                    crossed_statement();
                else if (t.text == "cochain")
                    cochain_statement();
                else if (t.text == "budget")
                    budget_statement();
                else if (t.text == "default")
                    default_statement();
                else if (t.text == "output")
                    output_statement();
                else if (t.text == "task")
                    task_statement();
                else
                    fail("E-SYNTAX", t, "unknown statement '" + t.text + "'");
            }

            auto group_statement() -> void
            {
                next();
                auto & name = word();
                check_new(name, _config.find_group(name.text));
                auto & kind = word();
                GroupPtr g;
                if (kind.text == "builtin") {
                    auto & b = word();
                    if (! contains(builtin_group_names(), b.text))
                        fail("E-BUILTIN", b, "unknown built-in group '" + b.text + "'");
                    g = builtin_group(b.text);
                }
                else if (kind.text == "perm")
                    g = perm_group(kind);
                else if (kind.text == "table")
                    g = table_group(kind);
                else
                    fail("E-SYNTAX", kind, "expected 'perm', 'table' or 'builtin', found " + describe(kind));
                check_order(name, g);
                _config.groups.push_back(GroupDef{name.text, g});
            }

            auto perm_group(const Token & at) -> GroupPtr
            {
                auto degree = number();
                if (degree == 0 || degree > 64)
                    fail("E-GROUP", at, "permutation degree must be between 1 and 64");
                expect_punct("{");
                vector<Permutation> generators;
                while (! at_punct("}")) {
                    Permutation p(degree);
                    for (Element x = 0; x < degree; ++x)
                        p[x] = x;
                    if (! at_punct("("))
                        fail("E-SYNTAX", peek(), "expected a cycle, found " + describe(peek()));
                    while (at_punct("(")) {
                        auto & open = next();
                        vector<Element> cycle;
                        while (! at_punct(")")) {
                            auto & pt = peek();
                            auto x = number();
                            if (x >= degree)
                                fail("E-GROUP", pt, "point " + std::to_string(x) + " out of range for degree " +
                                    std::to_string(degree));
                            if (std::find(cycle.begin(), cycle.end(), Element(x)) != cycle.end())
                                fail("E-GROUP", pt, "point repeated in a cycle");
                            cycle.push_back(Element(x));
                            if (at_punct(","))
                                next();
                        }
                        next();
                        if (cycle.empty())
                            fail("E-SYNTAX", open, "empty cycle");
                        Permutation c(degree);
                        for (Element x = 0; x < degree; ++x)
                            c[x] = x;
                        for (size_t k = 0; k < cycle.size(); ++k)
                            c[cycle[k]] = cycle[(k + 1) % cycle.size()];
                        p = compose_permutations(p, c);
                    }
                    generators.push_back(std::move(p));
                    skip_separators();
                }
                expect_punct("}");
                try {
                    return group_from_generators(degree, generators, _config.budgets.order);
                }
                catch (const SizeError & e) {
                    fail("E-SIZE", at, e.what());
                }
                catch (const Error & e) {
                    fail("E-GROUP", at, e.what());
                }
            }

            auto table_group(const Token & at) -> GroupPtr
            {
                expect_punct("{");
                vector<string> names;
                vector<vector<Token>> rows;
                bool have_rows = false;
                while (! at_punct("}")) {
                    auto & key = word();
                    expect_punct("=");
                    expect_punct("[");
                    if (key.text == "names") {
                        while (! at_punct("]")) {
                            names.push_back(element_text().text);
                            skip_separators();
                        }
                    }
                    else if (key.text == "rows") {
                        have_rows = true;
                        while (! at_punct("]")) {
                            expect_punct("[");
                            rows.emplace_back();
                            while (! at_punct("]")) {
                                rows.back().push_back(element_text());
                                skip_separators();
                            }
                            next();
                            skip_separators();
                        }
                    }
                    else
                        fail("E-SYNTAX", key, "expected 'names' or 'rows', found " + describe(key));
                    next();
                    skip_separators();
                }
                expect_punct("}");
                if (! have_rows || rows.empty())
                    fail("E-GROUP", at, "table group without rows");
                auto order = rows.size();
                if (order > _config.budgets.order)
                    fail("E-SIZE", at,
                        "group of order " + std::to_string(order) + " exceeds order cap " +
                            std::to_string(_config.budgets.order));
                vector<Element> table;
                for (auto & row : rows) {
                    if (row.size() != order)
                        fail("E-GROUP", row.empty() ? at : row.front(), "table row has the wrong length");
                    for (auto & cell : row) {
                        auto found = std::find(names.begin(), names.end(), cell.text);
                        if (cell.kind == TokenKind::string || found != names.end()) {
                            if (found == names.end())
                                fail("E-NAME", cell, "no element named " + quote(cell.text));
                            table.push_back(Element(found - names.begin()));
                            continue;
                        }
                        std::uint64_t v = 0;
                        auto [end, ec] = std::from_chars(cell.text.data(), cell.text.data() + cell.text.size(), v);
                        if (ec != std::errc{} || end != cell.text.data() + cell.text.size())
                            fail("E-NAME", cell, "no element named " + quote(cell.text));
                        if (v >= order)
                            fail("E-GROUP", cell, "table entry out of range");
                        table.push_back(Element(v));
                    }
                }
                try {
                    return std::make_shared<const FiniteGroup>(FiniteGroup::from_table(order, table, names));
                }
                catch (const Error & e) {
                    fail("E-GROUP", at, e.what());
                }
            }

            auto complex_statement() -> void
            {
                next();
                auto & name = word();
                check_new(name, _config.find_complex(name.text));
                NervePtr k;
                if (at_word("builtin")) {
                    next();
                    auto & b = word();
                    if (! contains(builtin_complex_names(), b.text))
                        fail("E-BUILTIN", b, "unknown built-in complex '" + b.text + "'");
                    k = builtin_complex(b.text);
                }
                else {
                    expect_punct("{");
                    expect_keyword("facets");
                    expect_punct("=");
                    expect_punct("[");
                    vector<vector<Vertex>> facets;
                    while (! at_punct("]")) {
                        auto & open = expect_punct("(");
                        vector<Vertex> f;
                        while (! at_punct(")")) {
                            auto & pt = peek();
                            auto v = number();
                            if (v > 100000)
                                fail("E-COMPLEX", pt, "vertex index too large");
                            f.push_back(Vertex(v));
                            if (at_punct(","))
                                next();
                        }
                        next();
                        if (f.size() > 4)
                            fail("E-DIM", open,
                                "facet with " + std::to_string(f.size()) + " vertices; dimension is capped at 3");
                        facets.push_back(std::move(f));
                        skip_separators();
                    }
                    next();
                    skip_separators();
                    expect_punct("}");
                    try {
                        k = build_complex(facets, name.text);
                    }
                    catch (const DimensionError & e) {
                        fail("E-DIM", name, e.what());
                    }
                    catch (const Error & e) {
                        fail("E-COMPLEX", name, e.what());
                    }
                }
                try {
                    spanning_tree(*k);
                }
                catch (const ConnectivityError & e) {
                    fail("E-COMPLEX", name, e.what());
                }
                _config.complexes.push_back(ComplexDef{name.text, k});
            }

            // { "x" = "y"; ... } as element pairs.
            auto element_map(const GroupPtr & from, const GroupPtr & to) -> vector<pair<Element, Element>>
            {
                expect_punct("{");
                vector<pair<Element, Element>> pairs;
                while (! at_punct("}")) {
                    auto & x = element_text();
                    expect_punct("=");
                    auto & y = element_text();
                    pairs.emplace_back(element(from, x), element(to, y));
                    skip_separators();
                }
                next();
                return pairs;
            }

            auto morphism_body(const Token & at, const GroupPtr & from, const GroupPtr & to) -> GroupMorphism
            {
                auto pairs = element_map(from, to);
                try {
                    return GroupMorphism::from_images(from, to, pairs);
                }
                catch (const Error & e) {
                    fail("E-HOM", at, e.what());
                }
            }

            auto morphism_statement() -> void
            {
                next();
                auto & name = word();
                check_new(name, _morphisms.count(name.text));
                expect_punct(":");
                auto & dom = word();
                expect_keyword("->");
                auto & cod = word();
                auto from = group(dom), to = group(cod);
                auto f = morphism_body(name, from, to);
                MorphismDef def{name.text, dom.text, cod.text, f};
                _morphisms.emplace(name.text, def);
                _config.morphisms.push_back(std::move(def));
            }

            auto crossed_statement() -> void
            {
                next();
                auto & name = word();
                check_new(name, _config.find_crossed(name.text));
                CrossedDef def;
                def.name = name.text;
                if (at_word("builtin")) {
                    next();
                    auto & b = word();
                    if (! contains(builtin_extension_names(), b.text))
                        fail("E-BUILTIN", b, "unknown built-in extension '" + b.text + "'");
                    def.kind = CrossedDef::Kind::builtin;
                    def.builtin = b.text;
                    def.xm = builtin_extension(b.text);
                }
                else if (at_punct("=")) {
                    next();
                    expect_keyword("aut");
                    auto & gt = word();
                    auto g = group(gt);
                    def.kind = CrossedDef::Kind::automorphisms;
                    def.g = gt.text;
                    try {
                        def.xm = automorphism_module(*automorphism_group(g, _config.budgets.aut));
                    }
                    catch (const SizeError & e) {
                        fail("E-SIZE", gt, e.what());
                    }
                }
                else {
                    expect_punct(":");
                    auto & gt = word();
                    expect_keyword("->");
                    auto & nt = word();
                    auto g = group(gt), n = group(nt);
                    def.kind = CrossedDef::Kind::explicit_maps;
                    def.g = gt.text;
                    def.n = nt.text;
                    def.xm = crossed_body(name, g, n);
                }
                _config.crossed.push_back(std::move(def));
            }

            auto crossed_body(const Token & at, const GroupPtr & g, const GroupPtr & n) -> CrossedModulePtr
            {
                expect_punct("{");
                optional<GroupMorphism> i;
                optional<Token> action_at;
                enum class ActionKind { conjugation, trivial, explicit_maps } action = ActionKind::conjugation;
                vector<pair<Element, Permutation>> prescribed;
                while (! at_punct("}")) {
                    auto & key = word();
                    expect_punct("=");
                    if (key.text == "i") {
                        if (peek().kind == TokenKind::word) {
                            auto & ref = next();
                            auto m = _morphisms.find(ref.text);
                            if (m == _morphisms.end())
                                fail("E-NAME", ref, "unknown morphism '" + ref.text + "'");
                            if (! (*m->second.morphism.domain() == *g) || ! (*m->second.morphism.codomain() == *n))
                                fail("E-HOM", ref, "morphism '" + ref.text + "' has the wrong domain or codomain");
                            i = m->second.morphism;
                        }
                        else
                            i = morphism_body(key, g, n);
                    }
                    else if (key.text == "action") {
                        action_at = key;
                        if (at_word("conjugation")) {
                            next();
                            action = ActionKind::conjugation;
                        }
                        else if (at_word("trivial")) {
                            next();
                            action = ActionKind::trivial;
                        }
                        else {
                            action = ActionKind::explicit_maps;
                            expect_punct("{");
                            while (! at_punct("}")) {
                                auto & u = element_text();
                                expect_punct("=");
                                auto images = morphism_body(u, g, g);
                                if (! images.is_injective())
                                    fail("E-XMOD", u, "action of " + quote(u.text) + " is not an automorphism");
                                prescribed.emplace_back(element(n, u), images.images());
                                skip_separators();
                            }
                            next();
                        }
                    }
                    else
                        fail("E-SYNTAX", key, "expected 'i' or 'action', found " + describe(key));
                    skip_separators();
                }
                next();
                if (! i)
                    fail("E-XMOD", at, "crossed module without a morphism i");
                try {
                    GroupAction alpha;
                    switch (action) {
                    case ActionKind::conjugation: alpha = GroupAction::conjugation(*i); break;
                    case ActionKind::trivial: alpha = GroupAction::trivial(n, g); break;
                    case ActionKind::explicit_maps:
                        alpha = GroupAction::make(n, g, close_action(n, g, prescribed));
                        break;
                    }
                    return std::make_shared<const CrossedModule>(CrossedModule::make(*i, alpha));
                }
                catch (const Error & e) {
                    fail("E-XMOD", action_at ? *action_at : at, e.what());
                }
            }

            auto cochain_statement() -> void
            {
                next();
                auto & name = word();
                check_new(name, _config.find_cochain(name.text));
                expect_keyword("on");
                auto & kt = word();
                expect_keyword("over");
                auto & gt = word();
                auto k = complex(kt);
                auto g = group(gt);
                CochainDef def{name.text, kt.text, gt.text, 0, {}};
                if (at_word("degree")) {
                    next();
                    auto & dt = peek();
                    auto d = number();
                    if (d != 1 && d != 2)
                        fail("E-SYNTAX", dt, "cochain degree must be 1 or 2");
                    def.degree = int(d);
                }
                expect_punct("{");
                vector<pair<size_t, Element>> entries;
                while (! at_punct("}")) {
                    auto & kind = word();
                    int degree = 0;
                    if (kind.text == "edge")
                        degree = 1;
                    else if (kind.text == "triangle")
                        degree = 2;
                    else
                        fail("E-SYNTAX", kind, "expected 'edge' or 'triangle', found " + describe(kind));
                    if (def.degree != 0 && def.degree != degree)
                        fail("E-SYNTAX", kind, "cochain mixes edges and triangles");
                    def.degree = degree;
                    expect_punct("(");
                    vector<std::uint64_t> vs;
                    while (! at_punct(")")) {
                        vs.push_back(number());
                        if (at_punct(","))
                            next();
                    }
                    next();
                    expect_punct("=");
                    auto & value = element_text();
                    auto x = element(g, value);
                    if (vs.size() != size_t(degree + 1))
                        fail("E-SYNTAX", kind, kind.text + " needs " + std::to_string(degree + 1) + " vertices");
                    for (auto v : vs)
                        if (v >= k->vertex_count())
                            fail("E-COMPLEX", kind, "vertex " + std::to_string(v) + " is not in the complex");
                    if (degree == 1) {
                        auto e = k->edge_index(Vertex(std::min(vs[0], vs[1])), Vertex(std::max(vs[0], vs[1])));
                        if (vs[0] == vs[1] || e == Nerve::npos)
                            fail("E-COMPLEX", kind, "no such edge in complex '" + kt.text + "'");
                        entries.emplace_back(e, vs[0] < vs[1] ? x : g->inv(x));
                    }
                    else {
                        if (! (vs[0] < vs[1] && vs[1] < vs[2]))
                            fail("E-COMPLEX", kind, "triangle vertices must be increasing");
                        auto t = k->triangle_index(Triangle{Vertex(vs[0]), Vertex(vs[1]), Vertex(vs[2])});
                        if (t == Nerve::npos)
                            fail("E-COMPLEX", kind, "no such triangle in complex '" + kt.text + "'");
                        entries.emplace_back(t, x);
                    }
                    skip_separators();
                }
                next();
                if (def.degree == 0)
                    def.degree = 1;
                def.values.assign(def.degree == 1 ? k->edges().size() : k->triangles().size(), FiniteGroup::identity);
                std::set<size_t> seen;
                for (auto & [index, x] : entries) {
                    if (! seen.insert(index).second)
                        fail("E-DUP", name, "cochain '" + name.text + "' assigns a simplex twice");
                    def.values[index] = x;
                }
                _config.cochains.push_back(std::move(def));
            }

            auto budget_statement() -> void
            {
                next();
                auto & key = word();
                expect_punct("=");
                auto & vt = peek();
                auto v = number();
                if (v == 0)
                    fail("E-SYNTAX", vt, "budget must be positive");
                if (key.text == "nodes")
                    _config.budgets.nodes = v;
                else if (key.text == "order")
                    _config.budgets.order = v;
                else if (key.text == "aut")
                    _config.budgets.aut = v;
                else
                    fail("E-SYNTAX", key, "expected 'nodes', 'order' or 'aut', found " + describe(key));
            }

            auto default_statement() -> void
            {
                next();
                auto & key = word();
                auto & value = word();
                if (key.text == "complex") {
                    complex(value);
                    _config.default_complex = value.text;
                }
                else if (key.text == "crossed") {
                    if (! _config.find_crossed(value.text) && ! contains(builtin_extension_names(), value.text))
                        fail("E-NAME", value, "unknown crossed module '" + value.text + "'");
                    _config.default_crossed = value.text;
                }
                else
                    fail("E-SYNTAX", key, "expected 'complex' or 'crossed', found " + describe(key));
            }

            auto output_statement() -> void
            {
                next();
                auto & value = word();
                if (value.text != "json" && value.text != "table")
                    fail("E-SYNTAX", value, "output must be 'json' or 'table'");
                _config.output = value.text;
            }

            auto task_statement() -> void
            {
                auto & kw = next();
                auto line = kw.line;
                if (peek().kind != TokenKind::word || peek().line != line)
                    fail("E-TASK", peek(), "task without a command");
                TaskDef task;
                task.command = next().text;
                task.line = line;
                while (peek().kind != TokenKind::end && peek().line == line) {
                    auto & a = next();
                    if (a.kind == TokenKind::punct)
                        fail("E-SYNTAX", a, "unexpected '" + a.text + "' in task");
                    task.args.push_back(a.text);
                }
                if (! contains(task_commands(), task.command))
                    fail("E-TASK", kw, "unknown task '" + task.command + "'");
                _config.tasks.push_back(std::move(task));
            }
        };

        auto cochain_line(const JobConfig & config, const CochainDef & c) -> string
        {
            auto g = config.find_group(c.group) ? config.find_group(c.group)->group : builtin_group(c.group);
            auto k = config.find_complex(c.complex) ? config.find_complex(c.complex)->nerve
                                                     : builtin_complex(c.complex);
            std::ostringstream out;
            out << "cochain " << c.name << " on " << c.complex << " over " << c.group << " degree " << c.degree
                << " {";
            bool first = true;
            for (size_t s = 0; s < c.values.size(); ++s) {
                if (c.values[s] == FiniteGroup::identity)
                    continue;
                out << (first ? " " : "; ");
                first = false;
                if (c.degree == 1) {
                    auto & e = k->edges()[s];
                    out << "edge (" << e[0] << ", " << e[1] << ")";
                }
                else {
                    auto & t = k->triangles()[s];
                    out << "triangle (" << t[0] << ", " << t[1] << ", " << t[2] << ")";
                }
                out << " = " << quote(g->name(c.values[s]));
            }
            out << " }\n";
            return out.str();
        }

        auto map_text(const GroupMorphism & f) -> string
        {
            string r = "{";
            for (Element x = 0; x < f.domain()->order(); ++x)
                r += (x ? "; " : " ") + quote(f.domain()->name(x)) + " = " + quote(f.codomain()->name(f(x)));
            return r + " }";
        }
    }

    auto JobConfig::find_group(const string & name) const -> const GroupDef *
    {
        for (auto & d : groups)
            if (d.name == name)
                return &d;
        return nullptr;
    }

    auto JobConfig::find_complex(const string & name) const -> const ComplexDef *
    {
        for (auto & d : complexes)
            if (d.name == name)
                return &d;
        return nullptr;
    }

    auto JobConfig::find_crossed(const string & name) const -> const CrossedDef *
    {
        for (auto & d : crossed)
            if (d.name == name)
                return &d;
        return nullptr;
    }

    auto JobConfig::find_cochain(const string & name) const -> const CochainDef *
    {
        for (auto & d : cochains)
            if (d.name == name)
                return &d;
        return nullptr;
    }

    auto parse_config(const string & text, const Budgets & defaults) -> JobConfig
    {
        return Parser(text, defaults).parse();
    }

    auto serialize_config(const JobConfig & config) -> string
    {
        std::ostringstream out;
        out << "cocycle-config v1\n";
        out << "budget nodes = " << config.budgets.nodes << "\n";
        out << "budget order = " << config.budgets.order << "\n";
        out << "budget aut = " << config.budgets.aut << "\n";

        for (auto & d : config.groups) {
            auto & g = *d.group;
            out << "group " << d.name << " table {\n  names = [";
            for (Element x = 0; x < g.order(); ++x)
                out << (x ? ", " : "") << quote(g.name(x));
            out << "];\n  rows = [";
            for (Element a = 0; a < g.order(); ++a) {
                out << (a ? ",\n    [" : "[");
                for (Element b = 0; b < g.order(); ++b)
                    out << (b ? ", " : "") << g.mul(a, b);
                out << "]";
            }
            out << "]\n}\n";
        }

        for (auto & d : config.complexes) {
            out << "complex " << d.name << " { facets = [";
            bool first = true;
            for (auto & f : d.nerve->facets()) {
                out << (first ? "(" : ", (");
                first = false;
                for (size_t v = 0; v < f.size(); ++v)
                    out << (v ? ", " : "") << f[v];
                out << ")";
            }
            out << "] }\n";
        }

        for (auto & d : config.morphisms)
            out << "morphism " << d.name << " : " << d.domain << " -> " << d.codomain << " " << map_text(d.morphism)
                << "\n";

        for (auto & d : config.crossed) {
            out << "crossed " << d.name;
            switch (d.kind) {
            case CrossedDef::Kind::builtin: out << " builtin " << d.builtin << "\n"; break;
            case CrossedDef::Kind::automorphisms: out << " = aut " << d.g << "\n"; break;
            case CrossedDef::Kind::explicit_maps: {
                auto & xm = *d.xm;
                out << " : " << d.g << " -> " << d.n << " {\n  i = " << map_text(xm.i()) << ";\n  action = {";
                for (Element u = 0; u < xm.n()->order(); ++u) {
                    out << "\n    " << quote(xm.n()->name(u)) << " = {";
                    for (Element x = 0; x < xm.g()->order(); ++x)
                        out << (x ? "; " : " ") << quote(xm.g()->name(x)) << " = "
                            << quote(xm.g()->name(xm.alpha().apply(u, x)));
                    out << " }";
                }
                out << "\n  }\n}\n";
                break;
            }
            }
        }

        for (auto & c : config.cochains)
            out << cochain_line(config, c);

        if (config.default_complex)
            out << "default complex " << *config.default_complex << "\n";
        if (config.default_crossed)
            out << "default crossed " << *config.default_crossed << "\n";
        out << "output " << config.output << "\n";
        for (auto & t : config.tasks) {
            out << "task " << t.command;
            for (auto & a : t.args) {
                bool plain = ! a.empty() && std::all_of(a.begin(), a.end(), is_word_char);
                out << " " << (plain ? a : quote(a));
            }
            out << "\n";
        }
        return out.str();
    }

    auto task_commands() -> const vector<string> &
    {
        static const vector<string> commands{"h1", "abelian", "h2nab", "nu", "delta", "lift", "exactness", "square",
            "gerbe", "gauge-classes", "realize"};
        return commands;
    }

    namespace
    {
        [[noreturn]] auto task_error(const string & code, const string & message) -> void
        {
            throw ConfigError(code, 0, 0, message);
        }

        auto lookup_complex(const JobConfig & config, const string & name) -> NervePtr
        {
            if (auto d = config.find_complex(name))
                return d->nerve;
            if (contains(builtin_complex_names(), name))
                return builtin_complex(name);
            return nullptr;
        }

        auto lookup_crossed(const JobConfig & config, const string & name) -> CrossedModulePtr
        {
            if (auto d = config.find_crossed(name))
                return d->xm;
            if (contains(builtin_extension_names(), name))
                return builtin_extension(name);
            return nullptr;
        }

        auto parse_index(const string & s) -> optional<size_t>
        {
            size_t v = 0;
            auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || end != s.data() + s.size())
                return std::nullopt;
            return v;
        }
    }

    auto resolve_task(const JobConfig & config, const TaskDef & task) -> ResolvedTask
    {
        ResolvedTask r;
        r.command = task.command;
        if (! contains(task_commands(), task.command))
            task_error("E-TASK", "unknown task '" + task.command + "'");
        auto & args = task.args;
        size_t pos = 0;
        auto usage = [&](const string & what) { task_error("E-TASK", "task " + task.command + ": " + what); };

        if (pos < args.size() && lookup_complex(config, args[pos])) {
            r.complex_name = args[pos];
            r.complex = lookup_complex(config, args[pos++]);
        }
        else if (config.default_complex) {
            r.complex_name = *config.default_complex;
            r.complex = lookup_complex(config, r.complex_name);
        }
        if (! r.complex) {
            if (pos < args.size())
                task_error("E-NAME", "task " + task.command + ": unknown complex '" + args[pos] + "'");
            usage("no complex given and no default complex");
        }

        if (task.command == "h1") {
            if (pos >= args.size())
                usage("expected a group");
            r.group_name = args[pos++];
            if (auto d = config.find_group(r.group_name))
                r.group = d->group;
            else if (contains(builtin_group_names(), r.group_name))
                r.group = builtin_group(r.group_name);
            else
                task_error("E-NAME", "task h1: unknown group '" + r.group_name + "'");
        }
        else if (task.command == "abelian") {
            if (pos + 2 > args.size())
                usage("expected coefficients and a degree");
            auto coeff = parse_coefficients(args[pos]);
            if (! coeff)
                usage("bad coefficients '" + args[pos] + "'");
            r.coefficients = *coeff;
            auto degree = parse_index(args[pos + 1]);
            if (! degree || *degree > 3)
                usage("degree must be 0, 1, 2 or 3");
            r.degree = int(*degree);
            pos += 2;
        }
        else {
            if (pos < args.size() && lookup_crossed(config, args[pos])) {
                r.crossed_name = args[pos];
                r.xm = lookup_crossed(config, args[pos++]);
            }
            else if (config.default_crossed) {
                r.crossed_name = *config.default_crossed;
                r.xm = lookup_crossed(config, r.crossed_name);
            }
            if (! r.xm)
                usage("no crossed module given and no default crossed module");
            if (task.command != "h2nab" && ! r.xm->i().is_injective())
                usage("crossed module '" + r.crossed_name + "' is not an extension (i is not injective)");

            bool takes_target = task.command != "h2nab" && task.command != "exactness" && task.command != "square";
            if (task.command == "square" && pos < args.size()) {
                if (args[pos] == "all")
                    r.all_cocycles = true;
                else if (args[pos] != "gauge-fixed")
                    usage("expected 'all' or 'gauge-fixed', found '" + args[pos] + "'");
                ++pos;
            }
            auto granularity_word = [&](size_t at) {
                return args[at] == "cocycle" || (args[at] == "class" && (at + 1 >= args.size() || ! parse_index(args[at + 1])));
            };
            if (takes_target && pos < args.size() && ! granularity_word(pos)) {
                auto & a = args[pos];
                if (a == "all")
                    r.target.kind = ClassSpec::Kind::all;
                else if (a == "trivial")
                    r.target.kind = ClassSpec::Kind::trivial;
                else if (a == "generator")
                    r.target.kind = ClassSpec::Kind::generator;
                else if (a == "class") {
                    r.target.kind = ClassSpec::Kind::index;
                    r.target.index = *parse_index(args[++pos]);
                }
                else if (auto c = config.find_cochain(a)) {
                    r.target.kind = ClassSpec::Kind::cochain;
                    r.target.cochain = a;
                    int want = task.command == "realize" ? 2 : 1;
                    if (c->degree != want)
                        usage("cochain '" + a + "' has degree " + std::to_string(c->degree) + ", expected " +
                            std::to_string(want));
                    if (! (*lookup_complex(config, c->complex) == *r.complex))
                        usage("cochain '" + a + "' lives on a different complex");
                }
                else
                    task_error("E-NAME", "task " + task.command + ": unknown class or cochain '" + a + "'");
                ++pos;
            }
            if ((task.command == "lift" || task.command == "gauge-classes") && pos < args.size()) {
                if (args[pos] == "cocycle")
                    r.granularity = Granularity::cocycles;
                else if (args[pos] != "class")
                    usage("expected 'class' or 'cocycle', found '" + args[pos] + "'");
                ++pos;
            }
        }
        if (pos < args.size())
            usage("unexpected argument '" + args[pos] + "'");
        return r;
    }

    auto validate_task(const JobConfig & config, const TaskDef & task) -> void
    {
        resolve_task(config, task);
    }
}
