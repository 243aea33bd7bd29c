#include <goodness/multipartite.hpp>
#include <goodness/errors.hpp>

#include <algorithm>
#include <charconv>
#include <numeric>

namespace goodness
{
    MultipartiteSpec::MultipartiteSpec(std::vector<std::size_t> parts) :
        _parts(std::move(parts))
    {
        if (_parts.empty())
            throw InputError("a multipartite spec needs at least one part");
        for (auto p : _parts)
            if (p == 0)
                throw InputError("part sizes must be positive");
        std::sort(_parts.begin(), _parts.end());
    }

    auto MultipartiteSpec::parse(std::string_view text) -> MultipartiteSpec
    {
        auto trimmed = text;
        while (! trimmed.empty() && trimmed.front() == ' ')
            trimmed.remove_prefix(1);
        while (! trimmed.empty() && trimmed.back() == ' ')
            trimmed.remove_suffix(1);

        auto number = [&] (std::string_view s) {
            std::size_t value = 0;
            auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
            if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
                throw InputError("cannot parse part size '" + std::string(s) + "' in '" + std::string(text) + "'");
            return value;
        };

        auto list = [&] (std::string_view s) {
            std::vector<std::size_t> parts;
            while (true) {
                auto comma = s.find(',');
                parts.push_back(number(s.substr(0, comma)));
                if (comma == std::string_view::npos)
                    break;
                s.remove_prefix(comma + 1);
            }
            return MultipartiteSpec(std::move(parts));
        };

        if (trimmed.starts_with("K_{") && trimmed.ends_with("}"))
            return list(trimmed.substr(3, trimmed.size() - 4));
        if (trimmed.starts_with("K_") || trimmed.starts_with("K")) {
            auto rest = trimmed.substr(trimmed.starts_with("K_") ? 2 : 1);
            if (rest.find(',') != std::string_view::npos)
                return list(rest);
            auto k = number(rest);
            if (k == 0)
                throw InputError("K_0 is not a valid target");
            return MultipartiteSpec(std::vector<std::size_t>(k, 1));
        }
        return list(trimmed);
    }

    auto MultipartiteSpec::order() const -> std::size_t
    {
        return std::accumulate(_parts.begin(), _parts.end(), std::size_t{0});
    }

    auto MultipartiteSpec::avg_part() const -> Rational
    {
        return Rational(static_cast<long long>(order()), static_cast<long long>(chi()));
    }

    auto MultipartiteSpec::avg_part_ceil() const -> std::size_t
    {
        return (order() + chi() - 1) / chi();
    }

    auto MultipartiteSpec::goodness_bound(std::size_t n) const -> std::size_t
    {
        return (chi() - 1) * (n - 1) + sigma();
    }

    auto MultipartiteSpec::to_string() const -> std::string
    {
        std::string out = "K_{";
        for (std::size_t i = 0; i < _parts.size(); ++i) {
            if (i)
                out += ',';
            out += std::to_string(_parts[i]);
        }
        return out + "}";
    }

    auto to_json(const MultipartiteSpec & spec) -> nlohmann::json
    {
        return {{"parts", spec.parts()}};
    }

    auto spec_from_json(const nlohmann::json & j) -> MultipartiteSpec
    {
        if (! j.is_object() || ! j.contains("parts") || ! j["parts"].is_array())
            throw InputError("spec JSON needs an array field \"parts\"");
        std::vector<std::size_t> parts;
        for (auto & p : j["parts"]) {
            if (! p.is_number_unsigned())
                throw InputError("part sizes must be positive integers");
            parts.push_back(p.get<std::size_t>());
        }
        return MultipartiteSpec(std::move(parts));
    }

    auto sub_join(const MultipartiteSpec & spec, const std::vector<std::size_t> & part_indices) -> MultipartiteSpec
    {
        if (part_indices.empty())
            throw InputError("sub_join needs a non-empty selection of parts");
        std::vector<bool> seen(spec.chi(), false);
        std::vector<std::size_t> parts;
        for (auto i : part_indices) {
            if (i >= spec.chi())
                throw InputError("part index " + std::to_string(i) + " out of range for " + spec.to_string());
            if (seen[i])
                throw InputError("part index " + std::to_string(i) + " selected twice");
            seen[i] = true;
            parts.push_back(spec.part(i));
        }
        return MultipartiteSpec(std::move(parts));
    }

    auto smallest_parts(const MultipartiteSpec & spec, std::size_t t) -> MultipartiteSpec
    {
        if (t == 0 || t > spec.chi())
            throw InputError("cannot take " + std::to_string(t) + " smallest parts of " + spec.to_string());
        std::vector<std::size_t> idx(t);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        return sub_join(spec, idx);
    }

    auto verify_embedding(const Graph & g, const MultipartiteSpec & spec, const Embedding & e) -> bool
    {
        if (e.classes.size() != spec.chi())
            return false;
        VertexSet used(g.order());
        for (std::size_t i = 0; i < e.classes.size(); ++i) {
            auto & c = e.classes[i];
            if (c.universe() != g.order() || c.count() != spec.part(i) || c.intersects(used))
                return false;
            used |= c;
        }
        for (std::size_t i = 0; i < e.classes.size(); ++i)
            for (auto v : e.classes[i])
                for (std::size_t j = 0; j < e.classes.size(); ++j)
                    if (i != j && g.neighbours(v).intersects(e.classes[j]))
                        return false;
        return true;
    }

    auto to_json(const Embedding & e) -> nlohmann::json
    {
        auto out = nlohmann::json::array();
        for (auto & c : e.classes)
            out.push_back(c.to_vector());
        return out;
    }

    namespace
    {
        class ContainmentSolver
        {
            public:
                ContainmentSolver(const Graph & g, const MultipartiteSpec & spec, Budget & budget, const VertexSet & within) :
                    _g(g), _budget(budget), _within(within)
                {
                    for (std::size_t i = spec.chi(); i-- > 0;) {
                        _sizes.push_back(spec.part(i));
                        _spec_index.push_back(i);
                    }
                    _rest.assign(_sizes.size() + 1, 0);
                    for (std::size_t i = _sizes.size(); i-- > 0;)
                        _rest[i] = _rest[i + 1] + _sizes[i];

                    // prev_twin[v]: nearest smaller u with N(u) - v = N(v) - u inside `within`
                    _prev_twin.assign(g.order(), g.order());
                    auto ids = within.to_vector();
                    for (std::size_t a = 0; a < ids.size(); ++a)
                        for (std::size_t b = a; b-- > 0;) {
                            auto u = ids[b], v = ids[a];
                            if (g.neighbours(u).intersection_count(within) != g.neighbours(v).intersection_count(within))
                                continue;
                            auto nu = g.neighbours(u) & within, nv = g.neighbours(v) & within;
                            nu.erase(v);
                            nv.erase(u);
                            if (nu == nv) {
                                _prev_twin[v] = u;
                                break;
                            }
                        }

                    _classes.assign(_sizes.size(), VertexSet(g.order()));
                    _used = VertexSet(g.order());
                }

                auto solve() -> SearchStatus
                {
                    if (_within.count() < _rest[0])
                        return SearchStatus::none_found;
                    if (start_class(0, _within))
                        return SearchStatus::found;
                    return _exhausted ? SearchStatus::budget_exhausted : SearchStatus::none_found;
                }

                auto embedding() const -> Embedding
                {
                    Embedding e;
                    e.classes.assign(_sizes.size(), VertexSet(_g.order()));
                    for (std::size_t c = 0; c < _sizes.size(); ++c)
                        e.classes[_spec_index[c]] = _classes[c];
                    return e;
                }

            private:
                auto start_class(std::size_t c, const VertexSet & pool) -> bool
                {
                    if (c == _sizes.size())
                        return true;
                    if (pool.count() < _rest[c])
                        return false;
                    if (_sizes.size() - c >= 2 && ! enough_independent(pool, _sizes.size() - c))
                        return false;
                    Vertex floor = 0;
                    if (c > 0 && _sizes[c - 1] == _sizes[c])
                        floor = _classes[c - 1].first() + 1;
                    return extend(c, pool, pool, floor);
                }

                // pool: candidates for this class; future: pool minus the class
                // and its neighbourhood, i.e. what later classes may use.
                auto extend(std::size_t c, const VertexSet & pool, const VertexSet & future, Vertex from) -> bool
                {
                    if (! _budget.spend()) {
                        _exhausted = true;
                        return false;
                    }
                    auto & cls = _classes[c];
                    auto need = _sizes[c] - cls.count();
                    if (need == 0)
                        return start_class(c + 1, future);

                    auto v = from == 0 ? pool.first() : pool.next_after(from - 1);
                    for (; v < pool.universe(); v = pool.next_after(v)) {
                        std::size_t above = 0;
                        for (auto w = pool.next_after(v); w < pool.universe() && above + 1 < need; w = pool.next_after(w))
                            ++above;
                        if (above + 1 < need)
                            break;
                        auto twin = _prev_twin[v];
                        if (twin != _g.order() && ! _used.contains(twin))
                            continue;

                        auto next_future = future - _g.neighbours(v);
                        next_future.erase(v);
                        if (next_future.count() < _rest[c + 1])
                            continue;

                        cls.insert(v);
                        _used.insert(v);
                        if (extend(c, pool, next_future, v + 1))
                            return true;
                        cls.erase(v);
                        _used.erase(v);
                        if (_exhausted)
                            return false;
                    }
                    return false;
                }

                // Later classes are pairwise non-adjacent, so pool must hold an
                // independent set of size `classes`; a greedy clique cover bounds it.
                auto enough_independent(const VertexSet & pool, std::size_t classes) const -> bool
                {
                    if (pool.count() > 256)
                        return true;
                    auto left = pool;
                    std::size_t cliques = 0;
                    while (! left.empty()) {
                        if (++cliques >= classes)
                            return true;
                        auto v = left.first();
                        auto candidates = _g.neighbours(v) & left;
                        left.erase(v);
                        while (! candidates.empty()) {
                            auto w = candidates.first();
                            left.erase(w);
                            candidates &= _g.neighbours(w);
                        }
                    }
                    return cliques >= classes;
                }

                const Graph & _g;
                Budget & _budget;
                VertexSet _within;
                std::vector<std::size_t> _sizes, _spec_index, _rest;
                std::vector<Vertex> _prev_twin;
                std::vector<VertexSet> _classes;
                VertexSet _used;
                bool _exhausted = false;
        };
    }

    auto complement_contains(const Graph & g, const MultipartiteSpec & spec, Budget budget,
            const std::optional<VertexSet> & within) -> ContainmentSearch
    {
        auto scope = within ? *within : g.vertices();
        g.check_set(scope);
        ContainmentSolver solver(g, spec, budget, scope);
        ContainmentSearch result;
        result.status = solver.solve();
        result.nodes = budget.used;
        if (result.status == SearchStatus::found) {
            result.embedding = solver.embedding();
            if (! verify_embedding(g, spec, *result.embedding))
                throw InternalError("complement_contains produced an invalid embedding");
        }
        return result;
    }

    auto burr_graph(std::size_t n, const MultipartiteSpec & spec) -> Graph
    {
        if (n < 3)
            throw PreconditionError("cycle length must be at least 3");
        if (n < spec.sigma())
            throw PreconditionError("burr_graph needs n >= sigma(H)");
        auto k = spec.chi();
        auto big = n - 1, small = spec.sigma() - 1;
        Graph g((k - 1) * big + small);
        Vertex base = 0;
        auto clique = [&] (std::size_t size) {
            for (Vertex i = 0; i < size; ++i)
                for (Vertex j = i + 1; j < size; ++j)
                    g.add_edge(base + i, base + j);
            base += static_cast<Vertex>(size);
        };
        for (std::size_t i = 0; i + 1 < k; ++i)
            clique(big);
        clique(small);
        return g;
    }

    auto cliques_lower_bound_graph(std::size_t m, std::size_t k, Rational eps) -> CliquesConstruction
    {
        if (k < 2)
            throw PreconditionError("cliques construction needs k >= 2");
        if (! (eps > Rational(0) && eps <= Rational(1, 4)))
            throw PreconditionError("cliques construction needs 0 < eps <= 1/4");
        auto mk = Rational(static_cast<long long>(m * k));
        auto n_exact = (Rational(1) - eps) * mk;
        auto small_exact = eps * mk / Rational(static_cast<long long>(k - 1));
        if (n_exact.denominator() != 1)
            throw InputError("(1 - eps) m k is not an integer");
        if (small_exact.denominator() != 1)
            throw InputError("eps m k / (k - 1) is not an integer");
        auto n = static_cast<std::size_t>(n_exact.numerator());
        auto small = static_cast<std::size_t>(small_exact.numerator());
        if (n < 3 || small == 0)
            throw InputError("cliques construction degenerates for these parameters");

        std::vector<std::size_t> parts(k - 1, small);
        parts.push_back(n);
        CliquesConstruction out{Graph(k * (n - 1)), MultipartiteSpec(std::move(parts)), n};
        for (std::size_t c = 0; c < k; ++c) {
            auto base = static_cast<Vertex>(c * (n - 1));
            for (Vertex i = 0; i + 1 < n; ++i)
                for (Vertex j = i + 1; j + 1 < n; ++j)
                    out.graph.add_edge(base + i, base + j);
        }
        return out;
    }
}
