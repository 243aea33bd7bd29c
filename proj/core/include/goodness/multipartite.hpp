#pragma once

#include <goodness/graph.hpp>

#include <boost/rational.hpp>
#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace goodness
{
    using Rational = boost::rational<long long>;

    /// Complete multipartite target graph K_{m_1,...,m_k}, parts kept sorted
    /// ascending. Parts are always addressed by their 0-based sorted index.
    class MultipartiteSpec
    {
        public:
            MultipartiteSpec() = default;
            explicit MultipartiteSpec(std::vector<std::size_t> parts);

            /// "K_{2,3}", "K_{1,1,1}", "K_3" (which is K_{1,1,1}), or "2,3".
            static auto parse(std::string_view text) -> MultipartiteSpec;

            auto parts() const -> const std::vector<std::size_t> & { return _parts; }
            auto part(std::size_t i) const -> std::size_t { return _parts.at(i); }
            auto chi() const -> std::size_t { return _parts.size(); }
            auto sigma() const -> std::size_t { return _parts.front(); }
            auto order() const -> std::size_t;
            auto largest() const -> std::size_t { return _parts.back(); }

            /// m = order / chi, exact.
            auto avg_part() const -> Rational;

            /// Smallest integer >= avg_part(); used for set-size thresholds.
            auto avg_part_ceil() const -> std::size_t;

            /// Burr bound (chi - 1)(n - 1) + sigma.
            auto goodness_bound(std::size_t n) const -> std::size_t;

            auto to_string() const -> std::string;

            auto operator== (const MultipartiteSpec &) const -> bool = default;

        private:
            std::vector<std::size_t> _parts;
    };

    auto to_json(const MultipartiteSpec & spec) -> nlohmann::json;
    auto spec_from_json(const nlohmann::json & j) -> MultipartiteSpec;

    /// Spec induced by the parts at the given sorted indices.
    auto sub_join(const MultipartiteSpec & spec, const std::vector<std::size_t> & part_indices) -> MultipartiteSpec;

    /// The t smallest parts.
    auto smallest_parts(const MultipartiteSpec & spec, std::size_t t) -> MultipartiteSpec;

    /// Class i holds the host vertices playing part i (sorted index).
    struct Embedding
    {
        std::vector<VertexSet> classes;
    };

    /// No host edge between distinct classes, classes disjoint and sized as the parts.
    auto verify_embedding(const Graph & g, const MultipartiteSpec & spec, const Embedding & e) -> bool;

    auto to_json(const Embedding & e) -> nlohmann::json;

    struct ContainmentSearch
    {
        SearchStatus status = SearchStatus::none_found;
        std::optional<Embedding> embedding;
        std::uint64_t nodes = 0;
    };

    /// Decides whether the complement of g contains spec, restricted to the
    /// vertices of `within` if given.
    auto complement_contains(const Graph & g, const MultipartiteSpec & spec, Budget budget = Budget::unlimited(),
            const std::optional<VertexSet> & within = std::nullopt) -> ContainmentSearch;

    /// (chi - 1) disjoint K_{n-1} plus a disjoint K_{sigma-1}.
    auto burr_graph(std::size_t n, const MultipartiteSpec & spec) -> Graph;

    struct CliquesConstruction
    {
        Graph graph;
        MultipartiteSpec spec;
        std::size_t n = 0;
    };

    /// k disjoint K_{n-1} with n = (1 - eps) m k, against the target with one part
    /// of size (1 - eps) m k and k - 1 parts of size eps m k / (k - 1).
    auto cliques_lower_bound_graph(std::size_t m, std::size_t k, Rational eps) -> CliquesConstruction;
}
