#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wiman/errors.hpp"
#include "wiman/multi_index.hpp"

namespace wiman {

// Closed-form nonnegative coefficient magnitudes |a_n|, carried as ln|a_n|.
//
// Built-in kinds:
//   Geometric         |a_n| = 1                      (any p)
//   PowerExp(eps)     |a_n| = exp(n^eps), eps in (0,1)   (p = 1)
//   SqrtHalf          |a_n| = exp(sqrt(n)/2)             (p = 1)
//   Sqrt              |a_n| = exp(sqrt(n))               (p = 1)
//   ProductSqrtHalf   |a_n| = prod_j exp(sqrt(n_j)/2)    (any p)
//   Table             finite explicit map n -> ln|a_n|
enum class RuleKind { Geometric, PowerExp, SqrtHalf, Sqrt, ProductSqrtHalf, Table };

class CoefficientRule {
public:
    using Table = std::map<std::vector<std::int64_t>, double>;

    static CoefficientRule geometric(int p = 1);
    static CoefficientRule power_exp(double epsilon);
    static CoefficientRule sqrt_half();
    static CoefficientRule sqrt();
    static CoefficientRule product_sqrt_half(int p);
    static CoefficientRule table(int p, Table entries);

    RuleKind kind() const { return kind_; }
    int dim() const { return p_; }
    double epsilon() const { return epsilon_; }
    const Table& entries() const { return table_; }

    // ln|a_n|; -inf for multi-indices outside a Table's support would hide
    // lookup bugs, so a miss throws instead.
    double log_coeff(const MultiIndex& n) const;

    // All built-in analytic kinds factor across axes:
    // ln|a_n| = sum_j phi_j(n_j).  Table rules do not.
    bool is_product_form() const { return kind_ != RuleKind::Table; }

    // phi_j extended to real x >= 0 (used by the O(log) maximal-term search
    // and by tail estimation far beyond integer range).
    double axis_log_coeff(int axis, double x) const;
    double axis_log_coeff_derivative(int axis, double x) const;

    // largest total degree carrying a finite coefficient; -1 for the
    // analytic kinds (infinite support)
    std::int64_t max_table_degree() const;

    std::string to_json() const;
    static CoefficientRule from_json(const std::string& text);

    bool operator==(const CoefficientRule&) const = default;

private:
    CoefficientRule(RuleKind kind, int p, double epsilon, Table table)
        : kind_(kind), p_(p), epsilon_(epsilon), table_(std::move(table)) {}

    RuleKind kind_;
    int p_;
    double epsilon_ = 0.0;
    Table table_;
};

std::string rule_kind_name(RuleKind k);

} // namespace wiman
