#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "wiman/errors.hpp"
#include "wiman/multi_index.hpp"

namespace wiman {

// Sign/phase models for the multiplicative system X_n(t):
//   Rademacher  independent +-1, equiprobable
//   UnitPhase   independent uniform unit-modulus complex
//   PlusOnly    X_n == +1 (degenerate deterministic control)
enum class SignKind { Rademacher, UnitPhase, PlusOnly };

struct SignModel {
    SignKind kind = SignKind::Rademacher;
    std::uint64_t seed = 0;
};

SignKind sign_kind_from_name(const std::string& name);
std::string sign_kind_name(SignKind k);

// One seeded realization n -> X_n.  Values come from counter-based keyed
// hashing of (seed, realization_id, index), so they are independent of
// enumeration order and of any parallel schedule.
class SignRealization {
public:
    SignRealization(SignModel model, std::uint64_t realization_id)
        : model_(model), realization_id_(realization_id) {}

    const SignModel& model() const { return model_; }
    std::uint64_t realization_id() const { return realization_id_; }

    std::complex<double> value(const MultiIndex& n) const;

    // p = 1 fast path
    std::complex<double> value(std::int64_t n) const;

    bool unit_modulus() const { return true; } // all built-in models

private:
    SignModel model_;
    std::uint64_t realization_id_;
};

// Materialized form of the op contract: evaluates the realization on an
// explicit index set.
std::unordered_map<MultiIndex, std::complex<double>, MultiIndexHash>
realize_signs(SignModel model, std::uint64_t realization_id,
              const std::vector<MultiIndex>& indices);

} // namespace wiman
