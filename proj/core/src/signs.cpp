#include "wiman/signs.hpp"

#include <cmath>
#include <numbers>

namespace wiman {

namespace {

// splitmix64 finalizer
inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t index_key(std::uint64_t seed, std::uint64_t id,
                               const std::int64_t* entries, int p) {
    std::uint64_t h = mix(seed ^ 0x7769'6d61'6e00'0001ull);
    h = mix(h ^ id);
    for (int j = 0; j < p; ++j)
        h = mix(h ^ static_cast<std::uint64_t>(entries[j]) ^
                (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(j + 1)));
    return h;
}

inline std::complex<double> draw(SignKind kind, std::uint64_t h) {
    switch (kind) {
        case SignKind::PlusOnly: return {1.0, 0.0};
        case SignKind::Rademacher: return {(h >> 63) ? 1.0 : -1.0, 0.0};
        case SignKind::UnitPhase: {
            // 53 uniform bits -> angle in [0, 2pi)
            double u = static_cast<double>(h >> 11) * 0x1.0p-53;
            double theta = 2.0 * std::numbers::pi * u;
            return {std::cos(theta), std::sin(theta)};
        }
    }
    throw Error("draw: bad sign kind");
}

} // namespace

std::complex<double> SignRealization::value(const MultiIndex& n) const {
    return draw(model_.kind,
                index_key(model_.seed, realization_id_, n.entries.data(), n.dim()));
}

std::complex<double> SignRealization::value(std::int64_t n) const {
    return draw(model_.kind, index_key(model_.seed, realization_id_, &n, 1));
}

std::unordered_map<MultiIndex, std::complex<double>, MultiIndexHash>
realize_signs(SignModel model, std::uint64_t realization_id,
              const std::vector<MultiIndex>& indices) {
    SignRealization real(model, realization_id);
    std::unordered_map<MultiIndex, std::complex<double>, MultiIndexHash> out;
    out.reserve(indices.size());
    for (const auto& n : indices) out.emplace(n, real.value(n));
    return out;
}

SignKind sign_kind_from_name(const std::string& name) {
    if (name == "rademacher") return SignKind::Rademacher;
    if (name == "unitphase") return SignKind::UnitPhase;
    if (name == "plusonly") return SignKind::PlusOnly;
    throw Error("unknown sign model '" + name + "'");
}

std::string sign_kind_name(SignKind k) {
    switch (k) {
        case SignKind::Rademacher: return "rademacher";
        case SignKind::UnitPhase: return "unitphase";
        case SignKind::PlusOnly: return "plusonly";
    }
    return "?";
}

} // namespace wiman
