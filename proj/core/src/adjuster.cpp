#include <goodness/adjuster.hpp>
#include <goodness/graph_io.hpp>
#include <goodness/navigation.hpp>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace goodness
{
    namespace
    {
        using PositionMap = std::unordered_map<Vertex, std::size_t>;

        auto positions(const std::vector<Vertex> & seq) -> PositionMap
        {
            PositionMap pos;
            for (std::size_t i = 0; i < seq.size(); ++i)
                pos.emplace(seq[i], i);
            return pos;
        }

        /// seq[from], seq[from+1], ..., seq[to] cyclically.
        auto walk_forward(const std::vector<Vertex> & seq, std::size_t from, std::size_t to) -> std::vector<Vertex>
        {
            std::vector<Vertex> out;
            auto len = seq.size();
            for (std::size_t i = from;; i = (i + 1) % len) {
                out.push_back(seq[i]);
                if (i == to)
                    break;
            }
            return out;
        }

        auto walk_backward(const std::vector<Vertex> & seq, std::size_t from, std::size_t to) -> std::vector<Vertex>
        {
            std::vector<Vertex> out;
            auto len = seq.size();
            for (std::size_t i = from;; i = (i + len - 1) % len) {
                out.push_back(seq[i]);
                if (i == to)
                    break;
            }
            return out;
        }

        /// Appends `tail` to `out`, skipping its first `skip_front` and last `skip_back` entries.
        void append(std::vector<Vertex> & out, const std::vector<Vertex> & tail, std::size_t skip_front, std::size_t skip_back = 0)
        {
            if (tail.size() <= skip_front + skip_back)
                return;
            out.insert(out.end(), tail.begin() + static_cast<std::ptrdiff_t>(skip_front),
                    tail.end() - static_cast<std::ptrdiff_t>(skip_back));
        }

        auto reversed(std::vector<Vertex> v) -> std::vector<Vertex>
        {
            std::reverse(v.begin(), v.end());
            return v;
        }

        enum class Spot
        {
            marked,         // v_i or w_i
            interior,       // inside one arc of a short cycle
            connector,      // on a connector path or the loop
        };

        struct Location
        {
            Spot spot = Spot::connector;
            std::size_t cycle = 0;
            bool on_short = false;
            std::size_t index = 0;  // index in the arc, listed from v
        };

        auto locate(const Adjuster & adj) -> std::unordered_map<Vertex, Location>
        {
            std::unordered_map<Vertex, Location> where;
            if (adj.loop) {
                for (auto v : adj.loop->vertices)
                    where[v] = Location{};
                return where;
            }
            for (std::size_t i = 0; i < adj.r(); ++i) {
                auto & c = adj.cycles[i];
                for (bool long_side : {false, true}) {
                    auto arc = c.side(long_side);
                    for (std::size_t j = 1; j + 1 < arc.size(); ++j)
                        where[arc[j]] = Location{Spot::interior, i, ! long_side, j};
                }
                where[c.v] = Location{Spot::marked, i, false, 0};
                where[c.w] = Location{Spot::marked, i, false, 0};
            }
            for (auto & p : adj.paths)
                for (std::size_t j = 1; j + 1 < p.vertices.size(); ++j)
                    where[p.vertices[j]] = Location{};
            return where;
        }

        /// The subpath from the last vertex of `from` before the first later vertex of `to`.
        auto trim_between(const Path & p, const VertexSet & from, const VertexSet & to) -> std::optional<Path>
        {
            for (int pass = 0; pass < 2; ++pass) {
                auto seq = pass == 0 ? p.vertices : reversed(p.vertices);
                std::ptrdiff_t last = -1;
                for (std::size_t i = 0; i < seq.size(); ++i) {
                    if (from.contains(seq[i]))
                        last = static_cast<std::ptrdiff_t>(i);
                    else if (to.contains(seq[i]) && last >= 0)
                        return Path{std::vector<Vertex>(seq.begin() + last, seq.begin() + static_cast<std::ptrdiff_t>(i) + 1)};
                }
            }
            return std::nullopt;
        }

        void require_disjoint_paths(const std::vector<Path> & paths, const char * who)
        {
            std::unordered_map<Vertex, std::size_t> seen;
            for (auto & p : paths)
                for (auto v : p.vertices)
                    if (++seen[v] > 1)
                        throw PreconditionError(std::string(who) + ": paths are not vertex-disjoint");
        }
    }

    auto ShortCycle::side(bool long_side) const -> std::vector<Vertex>
    {
        auto & c = cycle.vertices;
        auto len = c.size();
        auto pv = std::find(c.begin(), c.end(), v) - c.begin();
        auto pw = std::find(c.begin(), c.end(), w) - c.begin();
        if (len < 3 || len % 2 == 0 || static_cast<std::size_t>(pv) == len || static_cast<std::size_t>(pw) == len)
            throw PreconditionError("short cycle: marked vertices not on an odd cycle");
        auto half = (len - 1) / 2;
        auto want = long_side ? half + 1 : half;
        auto forward = (static_cast<std::size_t>(pw) + len - static_cast<std::size_t>(pv)) % len;
        if (forward == want)
            return walk_forward(c, static_cast<std::size_t>(pv), static_cast<std::size_t>(pw));
        if (len - forward == want)
            return walk_backward(c, static_cast<std::size_t>(pv), static_cast<std::size_t>(pw));
        throw PreconditionError("short cycle: marked vertices are not almost antipodal");
    }

    auto Adjuster::from_cycle(Cycle c, std::size_t cap) -> Adjuster
    {
        Adjuster a;
        a.loop = std::move(c);
        a.cycle_cap = cap;
        return a;
    }

    auto Adjuster::length() const -> std::size_t
    {
        if (loop)
            return loop->length();
        std::size_t total = 0;
        for (auto & c : cycles)
            total += (c.cycle.length() + 1) / 2;
        for (auto & p : paths)
            total += p.length();
        return total;
    }

    auto Adjuster::vertex_set(std::size_t universe) const -> VertexSet
    {
        VertexSet s(universe);
        auto add = [&](const std::vector<Vertex> & vs) {
            for (auto v : vs)
                if (v < universe)
                    s.insert(v);
        };
        if (loop)
            add(loop->vertices);
        for (auto & c : cycles)
            add(c.cycle.vertices);
        for (auto & p : paths)
            add(p.vertices);
        return s;
    }

    auto to_json(const Adjuster & a) -> nlohmann::json
    {
        nlohmann::json j{{"cycle_cap", a.cycle_cap}, {"r", a.r()}, {"length", a.length()}};
        j["cycles"] = nlohmann::json::array();
        for (auto & c : a.cycles)
            j["cycles"].push_back({{"vertices", c.cycle.vertices}, {"v", c.v}, {"w", c.w}});
        j["paths"] = nlohmann::json::array();
        for (auto & p : a.paths)
            j["paths"].push_back(p.vertices);
        if (a.loop)
            j["loop"] = a.loop->vertices;
        return j;
    }

    auto adjuster_from_json(const nlohmann::json & j) -> Adjuster
    {
        try {
            Adjuster a;
            a.cycle_cap = j.value("cycle_cap", std::size_t{0});
            if (j.contains("loop"))
                a.loop = Cycle{j.at("loop").get<std::vector<Vertex>>()};
            for (auto & c : j.value("cycles", nlohmann::json::array()))
                a.cycles.push_back(ShortCycle{Cycle{c.at("vertices").get<std::vector<Vertex>>()}, c.at("v").get<Vertex>(),
                        c.at("w").get<Vertex>()});
            for (auto & p : j.value("paths", nlohmann::json::array()))
                a.paths.push_back(Path{p.get<std::vector<Vertex>>()});
            return a;
        }
        catch (const nlohmann::json::exception & e) {
            throw InputError(std::string("malformed adjuster JSON: ") + e.what());
        }
    }

    auto validate(const Graph & g, const Adjuster & adj) -> ViolationReport
    {
        ViolationReport report;
        auto bad = [&](std::string s) { report.violations.push_back(std::move(s)); };
        auto in_range = [&](const std::vector<Vertex> & vs) {
            return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return v < g.order(); });
        };

        if (adj.loop) {
            if (! adj.cycles.empty() || ! adj.paths.empty())
                bad("a loop adjuster carries no short cycles or paths");
            if (! in_range(adj.loop->vertices) || ! is_cycle_in(g, *adj.loop))
                bad("loop is not a cycle of the host");
            else if (adj.loop->length() < 3)
                bad("loop shorter than 3");
            return report;
        }
        if (adj.cycles.empty()) {
            bad("adjuster with r = 0 must be a loop");
            return report;
        }
        auto r = adj.r();
        if (adj.paths.size() != r)
            bad("expected " + std::to_string(r) + " connector paths, got " + std::to_string(adj.paths.size()));

        std::unordered_map<Vertex, std::size_t> owner;
        for (std::size_t i = 0; i < r; ++i) {
            auto & c = adj.cycles[i];
            auto name = "short cycle " + std::to_string(i);
            if (! in_range(c.cycle.vertices) || ! is_cycle_in(g, c.cycle)) {
                bad(name + " is not a cycle of the host");
                continue;
            }
            if (c.cycle.length() % 2 == 0)
                bad(name + " has even length " + std::to_string(c.cycle.length()));
            if (adj.cycle_cap && c.cycle.length() > adj.cycle_cap)
                bad(name + " exceeds the cycle cap");
            auto & vs = c.cycle.vertices;
            auto pv = std::find(vs.begin(), vs.end(), c.v), pw = std::find(vs.begin(), vs.end(), c.w);
            if (pv == vs.end() || pw == vs.end() || c.v == c.w)
                bad(name + ": marked vertices missing or equal");
            else {
                auto len = vs.size();
                auto f = static_cast<std::size_t>((pw - pv + static_cast<std::ptrdiff_t>(len)) % static_cast<std::ptrdiff_t>(len));
                if (std::min(f, len - f) != (len - 1) / 2)
                    bad(name + ": marked vertices are not almost antipodal");
            }
            for (auto v : vs)
                if (! owner.emplace(v, i).second)
                    bad("short cycles " + std::to_string(owner[v]) + " and " + std::to_string(i) + " share vertex " + std::to_string(v));
        }
        for (std::size_t i = 0; i < adj.paths.size() && i < r; ++i) {
            auto & p = adj.paths[i];
            auto name = "connector path " + std::to_string(i);
            if (p.vertices.size() < 2 || ! in_range(p.vertices) || ! is_path_in(g, p)) {
                bad(name + " is not a path of the host with length >= 1");
                continue;
            }
            if (p.front() != adj.cycles[i].w || p.back() != adj.cycles[(i + 1) % r].v)
                bad(name + " does not run from w_" + std::to_string(i) + " to v_" + std::to_string((i + 1) % r));
            for (std::size_t j = 1; j + 1 < p.vertices.size(); ++j)
                if (! owner.emplace(p.vertices[j], r + i).second)
                    bad(name + " reuses vertex " + std::to_string(p.vertices[j]));
        }
        if (report.ok() && adj.length() < r + 3)
            bad("shortest route has fewer than 3 vertices");
        return report;
    }

    auto realize_route(const Adjuster & adj, const std::vector<bool> & short_side) -> Cycle
    {
        if (adj.loop)
            return *adj.loop;
        if (short_side.size() != adj.r())
            throw InputError("realize_route: one side choice per short cycle required");
        Cycle c;
        for (std::size_t i = 0; i < adj.r(); ++i) {
            append(c.vertices, adj.cycles[i].side(! short_side[i]), 0);
            append(c.vertices, adj.paths.at(i).vertices, 1, 1);
        }
        return c;
    }

    auto routes(const Adjuster & adj) -> std::vector<Route>
    {
        auto r = adj.r();
        if (r > 20)
            throw SizeError("routes: refusing to enumerate 2^r routes for r > 20");
        std::vector<Route> out;
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << r); ++mask) {
            Route route;
            for (std::size_t i = 0; i < r; ++i)
                route.short_side.push_back((mask >> i) & 1U);
            route.cycle = realize_route(adj, route.short_side);
            out.push_back(std::move(route));
        }
        return out;
    }

    auto route_of_length(const Adjuster & adj, std::size_t target) -> Cycle
    {
        auto l = adj.length();
        if (target > l || target + adj.r() < l)
            throw PreconditionError("route_of_length: target " + std::to_string(target) + " outside ["
                    + std::to_string(l - adj.r()) + ", " + std::to_string(l) + "]");
        std::vector<bool> choice(adj.r(), false);
        for (std::size_t i = 0; i < l - target; ++i)
            choice[i] = true;
        return realize_route(adj, choice);
    }

    auto reattach_short_cycles(const Cycle & cycle, const std::vector<ShortCycle> & candidates, std::size_t cap)
        -> Adjuster
    {
        auto & z = cycle.vertices;
        auto len = z.size();
        auto pos = positions(z);

        struct Attached
        {
            std::size_t entry_pos;
            std::size_t exit_pos;
            ShortCycle gadget;
        };
        std::vector<Attached> kept;

        for (auto & c : candidates) {
            if (! pos.count(c.v) || ! pos.count(c.w))
                continue;
            for (bool long_side : {false, true}) {
                auto arc = c.side(long_side);
                auto other = c.side(! long_side);
                bool inner_free = true;
                for (std::size_t j = 1; j + 1 < other.size(); ++j)
                    if (pos.count(other[j]))
                        inner_free = false;
                if (! inner_free)
                    continue;
                bool fwd = true, bwd = true;
                for (std::size_t j = 0; j < arc.size(); ++j) {
                    auto it = pos.find(arc[j]);
                    if (it == pos.end()) {
                        fwd = bwd = false;
                        break;
                    }
                    auto p0 = pos[arc[0]];
                    if (it->second != (p0 + j) % len)
                        fwd = false;
                    if (it->second != (p0 + len - j % len) % len)
                        bwd = false;
                }
                if (fwd)
                    kept.push_back({pos[c.v], pos[c.w], ShortCycle{c.cycle, c.v, c.w}});
                else if (bwd)
                    kept.push_back({pos[c.w], pos[c.v], ShortCycle{c.cycle, c.w, c.v}});
                if (fwd || bwd)
                    break;
            }
        }
        if (kept.empty())
            return Adjuster::from_cycle(cycle, cap);

        std::sort(kept.begin(), kept.end(), [](auto & a, auto & b) { return a.entry_pos < b.entry_pos; });
        Adjuster adj;
        adj.cycle_cap = cap;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            adj.cycles.push_back(kept[i].gadget);
            auto & next = kept[(i + 1) % kept.size()];
            adj.paths.push_back(Path{walk_forward(z, kept[i].exit_pos, next.entry_pos)});
        }
        return adj;
    }

    auto shortcut_path(const Graph & g, const Path & p) -> Path
    {
        if (p.vertices.size() < 3)
            return p;
        auto within = as_set(g.order(), p.vertices);
        auto best = shortest_path_within(g, p.front(), p.back(), within);
        if (! best)
            throw InputError("shortcut_path: not a path of the graph");
        return *best;
    }

    namespace
    {
        struct BoundCheck
        {
            double r_low, l_low, l_high;
        };
    }

    auto merge_adjusters(const Graph & g, const Adjuster & f1, const Adjuster & f2, const std::vector<Path> & paths,
            MergeStats * stats) -> Adjuster
    {
        if (paths.size() < 17)
            throw PreconditionError("merge_adjusters: at least 17 disjoint paths required, got " + std::to_string(paths.size()));
        auto n = g.order();
        auto v1 = f1.vertex_set(n), v2 = f2.vertex_set(n);
        if (v1.intersects(v2))
            throw PreconditionError("merge_adjusters: adjusters are not vertex-disjoint");
        for (auto & p : paths)
            if (! is_path_in(g, p))
                throw PreconditionError("merge_adjusters: a joining path is not a path of the host");
        require_disjoint_paths(paths, "merge_adjusters");

        std::vector<Path> trimmed;
        for (auto & p : paths) {
            auto t = trim_between(p, v1, v2);
            if (! t)
                throw PreconditionError("merge_adjusters: a path does not join the two adjusters");
            trimmed.push_back(std::move(*t));
        }
        auto s = trimmed.size();
        std::size_t longest = 0;
        for (auto & p : trimmed)
            longest = std::max(longest, p.length());

        auto loc1 = locate(f1), loc2 = locate(f2);
        auto label = [](const Location & l) { return l.spot == Spot::interior && l.on_short ? '-' : '+'; };
        const char * names[] = {"++", "+-", "-+", "--"};
        std::vector<std::size_t> members[4];
        for (std::size_t i = 0; i < s; ++i) {
            auto a = label(loc1.at(trimmed[i].front())), b = label(loc2.at(trimmed[i].back()));
            members[(a == '-' ? 2 : 0) + (b == '-' ? 1 : 0)].push_back(i);
        }
        std::size_t cls = 0;
        for (std::size_t c = 1; c < 4; ++c)
            if (members[c].size() > members[cls].size())
                cls = c;
        auto & chosen = members[cls];

        auto covering_route = [&](const Adjuster & f, const std::unordered_map<Vertex, Location> & loc, bool first) {
            std::vector<bool> choice(f.r(), false);
            for (auto i : chosen) {
                auto & l = loc.at(first ? trimmed[i].front() : trimmed[i].back());
                if (l.spot == Spot::interior && l.on_short)
                    choice[l.cycle] = true;
            }
            return realize_route(f, choice).vertices;
        };
        auto r1 = covering_route(f1, loc1, true);
        auto r2 = covering_route(f2, loc2, false);
        auto pos1 = positions(r1);
        auto pos2 = positions(r2);

        std::sort(chosen.begin(), chosen.end(), [&](auto a, auto b) {
            return pos1.at(trimmed[a].front()) < pos1.at(trimmed[b].front());
        });
        std::vector<long long> ys;
        for (auto i : chosen)
            ys.push_back(static_cast<long long>(pos2.at(trimmed[i].back())));
        auto t = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(chosen.size() - 1)))) + 1;
        while ((t - 1) * (t - 1) + 1 > chosen.size())
            --t;
        auto idx = monotone_subsequence(ys, t);
        if (ys[idx[0]] < ys[idx[1]]) {
            std::reverse(r2.begin(), r2.end());
            pos2 = positions(r2);
        }
        std::vector<Path> mono;
        for (auto i : idx)
            mono.push_back(trimmed[chosen[i]]);

        auto cap = std::max(f1.cycle_cap, f2.cycle_cap);
        auto candidates = f1.cycles;
        candidates.insert(candidates.end(), f2.cycles.begin(), f2.cycles.end());

        auto rs = static_cast<double>(f1.r() + f2.r());
        auto ls = static_cast<double>(f1.length() + f2.length());
        auto shrink = 1.0 - 4.0 / std::sqrt(static_cast<double>(s));
        BoundCheck bounds{rs * shrink - 4, ls * shrink, ls + 2.0 * static_cast<double>(longest)};

        nlohmann::json tried = nlohmann::json::array();
        for (std::size_t i = 0; i < t; ++i) {
            auto j = (i + 1) % t;
            auto & pi = mono[i].vertices;
            auto & pj = mono[j].vertices;
            std::vector<Vertex> z = pi;
            append(z, walk_forward(r2, pos2.at(pi.back()), pos2.at(pj.back())), 1);
            append(z, reversed(pj), 1);
            append(z, walk_forward(r1, pos1.at(pj.front()), pos1.at(pi.front())), 1, 1);
            Cycle cycle{z};
            if (! is_cycle_in(g, cycle))
                throw InternalError("merge_adjusters: spliced walk is not a cycle");
            auto merged = reattach_short_cycles(cycle, candidates, cap);
            auto r = static_cast<double>(merged.r()), l = static_cast<double>(merged.length());
            tried.push_back({{"pair", i}, {"r", merged.r()}, {"length", merged.length()}});
            if (r >= bounds.r_low - 1e-9 && l >= bounds.l_low - 1e-9 && l <= bounds.l_high + 1e-9 && r <= rs) {
                if (stats) {
                    stats->s = s;
                    stats->t = t;
                    stats->longest_path = longest;
                    stats->pair = i;
                    stats->label_class = names[cls];
                    stats->trace = {{"s", s}, {"t", t}, {"class", names[cls]}, {"class_size", chosen.size()},
                        {"pair", i}, {"tried", tried}, {"r_low", bounds.r_low}, {"l_low", bounds.l_low}, {"l_high", bounds.l_high}};
                }
                return merged;
            }
        }
        throw InternalError("merge_adjusters: no consecutive pair meets the loss bounds");
    }

    namespace
    {
        /// An x1-x2 path inside f of length >= l(f) - m1 - m2 - 1.
        auto inner_path(const Graph & g, const Adjuster & f, Vertex x1, Vertex x2, std::size_t m1, std::size_t m2,
                nlohmann::json & trace) -> std::vector<Vertex>
        {
            auto loc = locate(f);
            auto l1 = loc.at(x1), l2 = loc.at(x2);

            if (l1.spot == Spot::interior && l2.spot == Spot::interior && l1.cycle == l2.cycle && l1.on_short != l2.on_short) {
                auto j = l1.cycle;
                auto & c = f.cycles[j];
                auto a = c.side(! l1.on_short);   // x1's arc, v..w
                auto b = c.side(! l2.on_short);   // x2's arc, v..w
                // rest: w_j -> ... -> v_j through everything else on long sides
                std::vector<Vertex> rest;
                for (std::size_t step = 0; step < f.r(); ++step) {
                    auto i = (j + step) % f.r();
                    if (step > 0)
                        append(rest, f.cycles[i].side(true), 1);
                    append(rest, f.paths[i].vertices, step == 0 ? 0 : 1);
                }
                std::vector<Vertex> opt1(a.begin() + static_cast<std::ptrdiff_t>(l1.index), a.end());
                append(opt1, rest, 1, 1);
                append(opt1, std::vector<Vertex>(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(l2.index) + 1), 0);
                std::vector<Vertex> opt2 = reversed(std::vector<Vertex>(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(l1.index) + 1));
                append(opt2, reversed(rest), 1, 1);
                append(opt2, reversed(std::vector<Vertex>(b.begin() + static_cast<std::ptrdiff_t>(l2.index), b.end())), 0);
                trace.push_back({{"case", "opposite_sides"}, {"lengths", {opt1.size() - 1, opt2.size() - 1}}});

                // The two options have lengths summing to 2 l(f) - 1, so the longer
                // one may overshoot l(f). Keep the lengths in [l - m1 - m2 - 1, l].
                auto l = f.length();
                auto lo = l > m1 + m2 + 1 ? l - m1 - m2 - 1 : 0;
                auto & longer = opt1.size() >= opt2.size() ? opt1 : opt2;
                auto & shorter = opt1.size() >= opt2.size() ? opt2 : opt1;
                if (longer.size() - 1 <= l)
                    return longer;
                if (shorter.size() - 1 >= lo)
                    return shorter;
                // Skip E..E+m1+m2-2 vertices right after x1 through a chord; the
                // first m1 and the m2 vertices after the skip cannot be edgeless.
                auto excess = longer.size() - 1 - l;
                for (std::size_t i = 0; i < m1; ++i)
                    for (auto skip = excess; skip + 2 <= excess + m1 + m2; ++skip) {
                        auto j = i + skip + 1;
                        if (j < longer.size() && g.adjacent(longer[i], longer[j])) {
                            std::vector<Vertex> out(longer.begin(), longer.begin() + static_cast<std::ptrdiff_t>(i) + 1);
                            out.insert(out.end(), longer.begin() + static_cast<std::ptrdiff_t>(j), longer.end());
                            trace.push_back({{"case", "opposite_sides_chord"}, {"from", i}, {"skip", skip}});
                            return out;
                        }
                    }
                if (m1 + excess + m2 <= longer.size()) {
                    Embedding e;
                    e.classes.assign(2, g.empty_set());
                    for (std::size_t i = 0; i < m1; ++i)
                        e.classes[0].insert(longer[i]);
                    for (std::size_t i = 0; i < m2; ++i)
                        e.classes[1].insert(longer[m1 + excess + i]);
                    MultipartiteSpec k2({m1, m2});
                    if (m1 > m2)
                        std::swap(e.classes[0], e.classes[1]);
                    if (! verify_embedding(g, k2, e))
                        throw InternalError("merge_efficient: chord windows do not form a complement embedding");
                    throw SearchFailure(FailureReport{"merge_efficient",
                            "no chord across the overshoot: the complement contains " + k2.to_string(),
                            nlohmann::json::array({{{"counterexample", to_json(e)}}})});
                }
                trace.push_back({{"case", "opposite_sides_overshoot"}, {"excess", excess}});
                return longer;
            }

            std::vector<bool> choice(f.r(), false);
            for (auto & l : {l1, l2})
                if (l.spot == Spot::interior && l.on_short)
                    choice[l.cycle] = true;
            auto route = realize_route(f, choice).vertices;
            auto pos = positions(route);
            auto len = route.size();
            auto p1 = pos.at(x1), p2 = pos.at(x2);
            auto d = (p2 + len - p1) % len;
            auto near = std::max(m1, m2);
            if (std::min(d, len - d) <= near) {
                auto fwd = walk_forward(route, p1, p2), bwd = walk_backward(route, p1, p2);
                trace.push_back({{"case", "close_endpoints"}, {"distance", std::min(d, len - d)}});
                return fwd.size() >= bwd.size() ? fwd : bwd;
            }

            // z2 = route[p2 - a], z1 = route[p1 - b]; path length len + 1 - a - b.
            std::optional<std::pair<std::size_t, std::size_t>> best;
            for (std::size_t sum = 2; sum <= m1 + m2 && ! best; ++sum)
                for (std::size_t a = 1; a <= m2 && ! best; ++a) {
                    if (sum <= a || sum - a > m1)
                        continue;
                    auto b = sum - a;
                    if (g.adjacent(route[(p2 + len - a) % len], route[(p1 + len - b) % len]))
                        best = {a, b};
                }
            if (! best) {
                Embedding e;
                e.classes.assign(2, g.empty_set());
                for (std::size_t b = 1; b <= m1; ++b)
                    e.classes[0].insert(route[(p1 + len - b) % len]);
                for (std::size_t a = 1; a <= m2; ++a)
                    e.classes[1].insert(route[(p2 + len - a) % len]);
                MultipartiteSpec k2({m1, m2});
                if (m1 > m2)
                    std::swap(e.classes[0], e.classes[1]);
                if (! verify_embedding(g, k2, e))
                    throw InternalError("merge_efficient: window sets do not form a complement embedding");
                throw SearchFailure(FailureReport{"merge_efficient",
                        "no edge between the pre-endpoint windows: the complement contains " + k2.to_string(),
                        nlohmann::json::array({{{"counterexample", to_json(e)}}})});
            }
            auto [a, b] = *best;
            auto out = walk_forward(route, p1, (p2 + len - a) % len);
            append(out, walk_backward(route, (p1 + len - b) % len, p2), 0);
            trace.push_back({{"case", "shortcut_edge"}, {"a", a}, {"b", b}});
            return out;
        }
    }

    auto merge_efficient(const Graph & g, const Adjuster & f1, const Adjuster & f2, const Path & p1, const Path & p2,
            std::size_t m1, std::size_t m2, const EfficientMergeOptions & options, nlohmann::json * trace) -> Adjuster
    {
        if (m1 == 0 || m2 == 0)
            throw InputError("merge_efficient: m1 and m2 must be positive");
        auto n = g.order();
        auto v1 = f1.vertex_set(n), v2 = f2.vertex_set(n);
        if (v1.intersects(v2))
            throw PreconditionError("merge_efficient: adjusters are not vertex-disjoint");
        if (! is_path_in(g, p1) || ! is_path_in(g, p2))
            throw PreconditionError("merge_efficient: joining paths must be host paths");
        require_disjoint_paths({p1, p2}, "merge_efficient");

        nlohmann::json local = nlohmann::json::array();
        if (options.check_freeness) {
            MultipartiteSpec k2({m1, m2});
            for (auto * vs : {&v1, &v2}) {
                auto budget = Budget::nodes(options.budget_nodes);
                auto res = complement_contains(g, k2, budget, *vs);
                if (res.status == SearchStatus::found)
                    throw PreconditionError("merge_efficient: complement of an adjuster contains " + k2.to_string());
                local.push_back({{"freeness", to_string(res.status)}});
            }
        }

        auto q1 = trim_between(p1, v1, v2), q2 = trim_between(p2, v1, v2);
        if (! q1 || ! q2)
            throw PreconditionError("merge_efficient: a path does not join the two adjusters");
        auto x1 = q1->front(), x2 = q2->front(), y1 = q1->back(), y2 = q2->back();

        auto in1 = inner_path(g, f1, x1, x2, m1, m2, local);
        auto in2 = inner_path(g, f2, y1, y2, m1, m2, local);

        std::vector<Vertex> z = in1;                 // x1 .. x2
        append(z, q2->vertices, 1);                  // .. y2
        append(z, reversed(in2), 1);                 // .. y1
        append(z, reversed(q1->vertices), 1, 1);     // .. (x1)
        Cycle cycle{z};
        if (! is_cycle_in(g, cycle))
            throw InternalError("merge_efficient: spliced walk is not a cycle");

        auto candidates = f1.cycles;
        candidates.insert(candidates.end(), f2.cycles.begin(), f2.cycles.end());
        auto merged = reattach_short_cycles(cycle, candidates, std::max(f1.cycle_cap, f2.cycle_cap));

        auto loss = 2 * (m1 + m2);
        if (merged.r() + loss < f1.r() + f2.r() || merged.length() + loss < f1.length() + f2.length())
            throw InternalError("merge_efficient: loss exceeds 2(m1 + m2)");
        if (trace)
            *trace = {{"steps", local}, {"r", merged.r()}, {"length", merged.length()}};
        return merged;
    }

    auto shorten_section(const Graph & g, const Adjuster & adj, const MultipartiteSpec & spec, std::size_t lo,
            std::size_t hi) -> Adjuster
    {
        if (lo > hi)
            throw InputError("shorten_section: empty window");
        auto current = adj;
        if (current.length() < lo)
            throw PreconditionError("shorten_section: window unreachable, adjuster already shorter than " + std::to_string(lo));
        auto stretch = spec.order() + spec.chi() - 1;

        while (current.length() > hi) {
            auto l = current.length();
            auto need_max = l - lo;

            // Sections: connector paths, or the loop read as a path.
            std::vector<std::vector<Vertex> *> sections;
            if (current.loop)
                sections.push_back(&current.loop->vertices);
            else
                for (auto & p : current.paths)
                    sections.push_back(&p.vertices);
            std::stable_sort(sections.begin(), sections.end(), [](auto a, auto b) { return a->size() > b->size(); });

            bool applied = false;
            for (auto * sec : sections) {
                auto & s = *sec;
                bool cyclic = current.loop.has_value();
                std::optional<std::pair<std::size_t, std::size_t>> best;
                for (std::size_t a = 0; a < s.size(); ++a)
                    for (std::size_t b = a + 2; b < s.size(); ++b) {
                        auto red = b - a - 1;
                        if (red > need_max || (best && red <= best->second - best->first - 1))
                            continue;
                        if (cyclic && a == 0 && b + 1 == s.size())
                            continue;
                        if (g.adjacent(s[a], s[b]))
                            best = {a, b};
                    }
                if (best) {
                    s.erase(s.begin() + static_cast<std::ptrdiff_t>(best->first) + 1, s.begin() + static_cast<std::ptrdiff_t>(best->second));
                    applied = true;
                    break;
                }
            }
            if (applied)
                continue;

            for (auto * sec : sections) {
                auto & s = *sec;
                for (std::size_t start = 0; start + stretch <= s.size(); ++start) {
                    bool chordless = true;
                    for (std::size_t a = start; a < start + stretch && chordless; ++a)
                        for (std::size_t b = a + 2; b < start + stretch; ++b)
                            if (g.adjacent(s[a], s[b])) {
                                chordless = false;
                                break;
                            }
                    if (! chordless)
                        continue;
                    Embedding e;
                    std::size_t at = start;
                    for (auto part : spec.parts()) {
                        VertexSet cls = g.empty_set();
                        for (std::size_t i = 0; i < part; ++i)
                            cls.insert(s[at++]);
                        ++at;
                        e.classes.push_back(cls);
                    }
                    if (! verify_embedding(g, spec, e))
                        throw InternalError("shorten_section: chordless stretch did not yield an embedding");
                    throw SearchFailure(FailureReport{"shorten_section",
                            "chordless stretch: the complement contains " + spec.to_string(),
                            nlohmann::json::array({{{"counterexample", to_json(e)}}})});
                }
            }
            throw SearchFailure(FailureReport{"shorten_section", "window unreachable: sections too short to shortcut",
                    nlohmann::json::array({{{"length", l}, {"window", {lo, hi}}}})});
        }
        if (current.r() != adj.r())
            throw InternalError("shorten_section: r changed");
        return current;
    }
}
