#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "wiman/errors.hpp"

namespace wiman {

// Multi-index n = (n_1,...,n_p), all entries >= 0.  norm() is the total
// degree n_1 + ... + n_p.
struct MultiIndex {
    std::vector<std::int64_t> entries;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::int64_t> e) : entries(std::move(e)) {}
    // p=1 convenience
    explicit MultiIndex(std::int64_t n) : entries{n} {}

    int dim() const { return static_cast<int>(entries.size()); }

    std::int64_t norm() const {
        return std::accumulate(entries.begin(), entries.end(), std::int64_t{0});
    }

    bool operator==(const MultiIndex& o) const = default;

    // lexicographic; used for tie-breaking toward the smallest index
    bool operator<(const MultiIndex& o) const { return entries < o.entries; }
};

// Enumerates {n : ||n|| == degree, 0 <= n_j <= caps[j]} in lexicographic
// order.  caps may be empty (no per-axis cap).  Entries are written into a
// scratch vector reused across calls.
template <typename Fn>
void for_each_on_shell(int p, std::int64_t degree,
                       const std::vector<std::int64_t>& caps, Fn&& fn) {
    std::vector<std::int64_t> n(static_cast<std::size_t>(p), 0);
    // recursive lexicographic walk over the simplex slice
    auto rec = [&](auto&& self, int axis, std::int64_t rem) -> void {
        if (axis == p - 1) {
            if (!caps.empty() && rem > caps[static_cast<std::size_t>(axis)]) return;
            n[static_cast<std::size_t>(axis)] = rem;
            fn(n);
            return;
        }
        std::int64_t hi = rem;
        if (!caps.empty()) hi = std::min(hi, caps[static_cast<std::size_t>(axis)]);
        for (std::int64_t v = 0; v <= hi; ++v) {
            n[static_cast<std::size_t>(axis)] = v;
            self(self, axis + 1, rem - v);
        }
    };
    rec(rec, 0, degree);
}

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& m) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (auto v : m.entries)
            h ^= std::hash<std::int64_t>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

} // namespace wiman
