#include "wiman/coefficient_rule.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace wiman {

CoefficientRule CoefficientRule::geometric(int p) {
    if (p < 1) throw Error("geometric: p must be >= 1");
    return {RuleKind::Geometric, p, 0.0, {}};
}

CoefficientRule CoefficientRule::power_exp(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw Error("power_exp: epsilon must lie in (0,1)");
    return {RuleKind::PowerExp, 1, epsilon, {}};
}

CoefficientRule CoefficientRule::sqrt_half() { return {RuleKind::SqrtHalf, 1, 0.0, {}}; }

CoefficientRule CoefficientRule::sqrt() { return {RuleKind::Sqrt, 1, 0.0, {}}; }

CoefficientRule CoefficientRule::product_sqrt_half(int p) {
    if (p < 1) throw Error("product_sqrt_half: p must be >= 1");
    return {RuleKind::ProductSqrtHalf, p, 0.0, {}};
}

CoefficientRule CoefficientRule::table(int p, Table entries) {
    if (p < 1) throw Error("table: p must be >= 1");
    for (const auto& [idx, logmag] : entries) {
        if (static_cast<int>(idx.size()) != p)
            throw Error("table: entry dimension mismatch");
        for (auto v : idx)
            if (v < 0) throw Error("table: negative index entry");
        if (!std::isfinite(logmag)) throw Error("table: non-finite log-magnitude");
    }
    return {RuleKind::Table, p, 0.0, std::move(entries)};
}

double CoefficientRule::log_coeff(const MultiIndex& n) const {
    if (n.dim() != p_)
        throw Error("log_coeff: dimension mismatch (index has " +
                    std::to_string(n.dim()) + ", rule has " + std::to_string(p_) + ")");
    if (kind_ == RuleKind::Table) {
        auto it = table_.find(n.entries);
        if (it == table_.end()) throw Error("log_coeff: table lookup miss");
        return it->second;
    }
    double sum = 0.0;
    for (int j = 0; j < p_; ++j)
        sum += axis_log_coeff(j, static_cast<double>(n.entries[static_cast<std::size_t>(j)]));
    return sum;
}

double CoefficientRule::axis_log_coeff(int, double x) const {
    switch (kind_) {
        case RuleKind::Geometric: return 0.0;
        case RuleKind::PowerExp: return std::pow(x, epsilon_);
        case RuleKind::SqrtHalf: return 0.5 * std::sqrt(x);
        case RuleKind::Sqrt: return std::sqrt(x);
        case RuleKind::ProductSqrtHalf: return 0.5 * std::sqrt(x);
        case RuleKind::Table: break;
    }
    throw Error("axis_log_coeff: rule is not product-form");
}

double CoefficientRule::axis_log_coeff_derivative(int, double x) const {
    switch (kind_) {
        case RuleKind::Geometric: return 0.0;
        case RuleKind::PowerExp:
            return x > 0.0 ? epsilon_ * std::pow(x, epsilon_ - 1.0) : 0.0;
        case RuleKind::SqrtHalf:
        case RuleKind::ProductSqrtHalf:
            return x > 0.0 ? 0.25 / std::sqrt(x) : 0.0;
        case RuleKind::Sqrt: return x > 0.0 ? 0.5 / std::sqrt(x) : 0.0;
        case RuleKind::Table: break;
    }
    throw Error("axis_log_coeff_derivative: rule is not product-form");
}

std::int64_t CoefficientRule::max_table_degree() const {
    if (kind_ != RuleKind::Table) return -1;
    std::int64_t best = 0;
    for (const auto& [idx, logmag] : table_) {
        (void)logmag;
        std::int64_t s = 0;
        for (auto v : idx) s += v;
        best = std::max(best, s);
    }
    return best;
}

std::string rule_kind_name(RuleKind k) {
    switch (k) {
        case RuleKind::Geometric: return "geometric";
        case RuleKind::PowerExp: return "powerexp";
        case RuleKind::SqrtHalf: return "sqrthalf";
        case RuleKind::Sqrt: return "sqrt";
        case RuleKind::ProductSqrtHalf: return "productsqrthalf";
        case RuleKind::Table: return "table";
    }
    return "?";
}

std::string CoefficientRule::to_json() const {
    nlohmann::json j;
    j["kind"] = rule_kind_name(kind_);
    j["p"] = p_;
    if (kind_ == RuleKind::PowerExp) j["epsilon"] = epsilon_;
    if (kind_ == RuleKind::Table) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& [idx, logmag] : table_)
            rows.push_back(nlohmann::json::array({idx, logmag}));
        j["table"] = rows;
    }
    return j.dump();
}

CoefficientRule CoefficientRule::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    const int p = j.value("p", 1);
    if (kind == "geometric") return geometric(p);
    if (kind == "powerexp") return power_exp(j.at("epsilon").get<double>());
    if (kind == "sqrthalf") return sqrt_half();
    if (kind == "sqrt") return sqrt();
    if (kind == "productsqrthalf") return product_sqrt_half(p);
    if (kind == "table") {
        Table t;
        for (const auto& row : j.at("table")) {
            auto idx = row.at(0).get<std::vector<std::int64_t>>();
            t[idx] = row.at(1).get<double>();
        }
        return table(p, std::move(t));
    }
    throw Error("from_json: unknown rule kind '" + kind + "'");
}

} // namespace wiman
