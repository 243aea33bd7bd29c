#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace goodness
{
    using Vertex = std::uint32_t;

    /// Fixed-universe set of vertex ids backed by 64-bit words.
    ///
    /// All binary operations require both operands to share the same universe
    /// size; this is how neighbourhood unions and intersections stay
    /// word-parallel.
    class VertexSet
    {
        public:
            using Word = std::uint64_t;
            static constexpr std::size_t word_bits = 64;

            class const_iterator
            {
                public:
                    using iterator_category = std::forward_iterator_tag;
                    using value_type = Vertex;
                    using difference_type = std::ptrdiff_t;
                    using pointer = const Vertex *;
                    using reference = Vertex;

                    const_iterator() = default;
                    const_iterator(const VertexSet * set, std::size_t word, Word bits) :
                        _set(set), _word(word), _bits(bits)
                    {
                        settle();
                    }

                    auto operator* () const -> Vertex
                    {
                        return static_cast<Vertex>(_word * word_bits + std::countr_zero(_bits));
                    }

                    auto operator++ () -> const_iterator &
                    {
                        _bits &= _bits - 1;
                        settle();
                        return *this;
                    }

                    auto operator++ (int) -> const_iterator
                    {
                        auto copy = *this;
                        ++*this;
                        return copy;
                    }

                    auto operator== (const const_iterator & other) const -> bool
                    {
                        return _word == other._word && _bits == other._bits;
                    }

                private:
                    void settle()
                    {
                        while (_bits == 0 && _set && _word + 1 < _set->_words.size())
                            _bits = _set->_words[++_word];
                        if (_bits == 0 && _set)
                            _word = _set->_words.size();
                    }

                    const VertexSet * _set = nullptr;
                    std::size_t _word = 0;
                    Word _bits = 0;
            };

            VertexSet() = default;

            explicit VertexSet(std::size_t universe) :
                _universe(universe),
                _words((universe + word_bits - 1) / word_bits, 0)
            {
            }

            VertexSet(std::size_t universe, std::initializer_list<Vertex> members) :
                VertexSet(universe)
            {
                for (auto v : members)
                    insert(v);
            }

            template <typename Range>
            static auto from_range(std::size_t universe, const Range & range) -> VertexSet
            {
                VertexSet result(universe);
                for (auto v : range)
                    result.insert(static_cast<Vertex>(v));
                return result;
            }

            static auto full(std::size_t universe) -> VertexSet
            {
                VertexSet result(universe);
                for (auto & w : result._words)
                    w = ~Word{0};
                result.trim();
                return result;
            }

            auto universe() const -> std::size_t { return _universe; }

            auto contains(Vertex v) const -> bool
            {
                return v < _universe && ((_words[v / word_bits] >> (v % word_bits)) & 1U);
            }

            void insert(Vertex v) { _words[v / word_bits] |= Word{1} << (v % word_bits); }
            void erase(Vertex v) { _words[v / word_bits] &= ~(Word{1} << (v % word_bits)); }
            void clear() { std::fill(_words.begin(), _words.end(), 0); }

            auto count() const -> std::size_t
            {
                std::size_t result = 0;
                for (auto w : _words)
                    result += std::popcount(w);
                return result;
            }

            auto empty() const -> bool
            {
                for (auto w : _words)
                    if (w)
                        return false;
                return true;
            }

            /// Smallest member, or universe() when empty.
            auto first() const -> Vertex
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    if (_words[i])
                        return static_cast<Vertex>(i * word_bits + std::countr_zero(_words[i]));
                return static_cast<Vertex>(_universe);
            }

            /// Smallest member strictly greater than v, or universe().
            auto next_after(Vertex v) const -> Vertex
            {
                std::size_t start = std::size_t{v} + 1;
                if (start >= _universe)
                    return static_cast<Vertex>(_universe);
                std::size_t wi = start / word_bits;
                Word w = _words[wi] & (~Word{0} << (start % word_bits));
                while (true) {
                    if (w)
                        return static_cast<Vertex>(wi * word_bits + std::countr_zero(w));
                    if (++wi >= _words.size())
                        return static_cast<Vertex>(_universe);
                    w = _words[wi];
                }
            }

            auto intersects(const VertexSet & other) const -> bool
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    if (_words[i] & other._words[i])
                        return true;
                return false;
            }

            auto is_subset_of(const VertexSet & other) const -> bool
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    if (_words[i] & ~other._words[i])
                        return false;
                return true;
            }

            auto intersection_count(const VertexSet & other) const -> std::size_t
            {
                std::size_t result = 0;
                for (std::size_t i = 0; i < _words.size(); ++i)
                    result += std::popcount(_words[i] & other._words[i]);
                return result;
            }

            /// |this \ other|
            auto difference_count(const VertexSet & other) const -> std::size_t
            {
                std::size_t result = 0;
                for (std::size_t i = 0; i < _words.size(); ++i)
                    result += std::popcount(_words[i] & ~other._words[i]);
                return result;
            }

            auto operator|= (const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            auto operator&= (const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] &= other._words[i];
                return *this;
            }

            auto operator-= (const VertexSet & other) -> VertexSet &
            {
                for (std::size_t i = 0; i < _words.size(); ++i)
                    _words[i] &= ~other._words[i];
                return *this;
            }

            friend auto operator| (VertexSet a, const VertexSet & b) -> VertexSet { return a |= b; }
            friend auto operator& (VertexSet a, const VertexSet & b) -> VertexSet { return a &= b; }
            friend auto operator- (VertexSet a, const VertexSet & b) -> VertexSet { return a -= b; }

            auto complemented() const -> VertexSet
            {
                VertexSet result = *this;
                for (auto & w : result._words)
                    w = ~w;
                result.trim();
                return result;
            }

            auto operator== (const VertexSet & other) const -> bool = default;

            auto begin() const -> const_iterator
            {
                if (_words.empty())
                    return end();
                return const_iterator(this, 0, _words[0]);
            }

            auto end() const -> const_iterator { return const_iterator(this, _words.size(), 0); }

            auto to_vector() const -> std::vector<Vertex>
            {
                std::vector<Vertex> result;
                result.reserve(count());
                for (auto v : *this)
                    result.push_back(v);
                return result;
            }

            auto words() const -> const std::vector<Word> & { return _words; }

        private:
            void trim()
            {
                if (_universe % word_bits && ! _words.empty())
                    _words.back() &= (Word{1} << (_universe % word_bits)) - 1;
            }

            std::size_t _universe = 0;
            std::vector<Word> _words;
    };
}
