#pragma once

// Exact rational linear programming over x >= 0: a dense two-phase tableau
// simplex with Bland's rule. Meant for the few-hundred-variable systems of
// lpsearch, not for general use.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semind/errors.hpp"
#include "semind/rational.hpp"

namespace semind {

enum class Relation : std::uint8_t { Eq, Ge, Le };

constexpr const char* relation_symbol(Relation r) {
    switch (r) {
        case Relation::Eq:
            return "=";
        case Relation::Ge:
            return ">=";
        default:
            return "<=";
    }
}

struct LpRow {
    std::vector<Rational> coeffs;
    Relation relation = Relation::Eq;
    Rational rhs;
    std::string label;
};

struct LpProblem {
    std::size_t num_vars = 0;
    std::vector<std::string> var_names;
    std::vector<LpRow> rows;
    std::optional<std::vector<Rational>> objective;  // minimised when present
};

enum class LpStatus : std::uint8_t { Feasible, Infeasible };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rational> assignment;
    Rational objective_value;
    bool unbounded = false;  // objective decreases without limit; assignment is still feasible
    std::size_t pivots = 0;
};

inline std::optional<std::string> check_problem(const LpProblem& p) {
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        if (p.rows[i].coeffs.size() != p.num_vars) return "row " + std::to_string(i) + " has the wrong length";
    }
    if (p.objective && p.objective->size() != p.num_vars) return "objective has the wrong length";
    return std::nullopt;
}

/// Exact check that x >= 0 and every row holds.
inline bool satisfies(const LpProblem& p, const std::vector<Rational>& x) {
    if (x.size() != p.num_vars) return false;
    for (const auto& v : x) {
        if (sgn(v) < 0) return false;
    }
    for (const auto& row : p.rows) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < p.num_vars; ++j) {
            if (sgn(row.coeffs[j]) != 0) lhs += row.coeffs[j] * x[j];
        }
        const int c = cmp(lhs, row.rhs);
        if ((row.relation == Relation::Eq && c != 0) || (row.relation == Relation::Ge && c < 0) ||
            (row.relation == Relation::Le && c > 0)) {
            return false;
        }
    }
    return true;
}

namespace detail {

class Tableau {
public:
    // a: m rows of ncols coefficients plus the right-hand side in the last slot.
    Tableau(std::vector<std::vector<Rational>> a, std::vector<std::size_t> basis, std::size_t ncols)
        : a_(std::move(a)), basis_(std::move(basis)), ncols_(ncols), allowed_(ncols, true) {}

    std::size_t rows() const { return a_.size(); }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Rational& rhs(std::size_t i) const { return a_[i][ncols_]; }
    const Rational& at(std::size_t i, std::size_t j) const { return a_[i][j]; }
    void forbid(std::size_t j) { allowed_[j] = false; }
    std::size_t pivots() const { return pivots_; }

    void pivot(std::size_t r, std::size_t c) {
        ++pivots_;
        const Rational inv = 1 / a_[r][c];
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j <= ncols_; ++j) {
            if (sgn(a_[r][j]) != 0) {
                a_[r][j] *= inv;
                nz.push_back(j);
            }
        }
        auto eliminate = [&](std::vector<Rational>& row) {
            if (sgn(row[c]) == 0) return;
            const Rational f = row[c];
            for (std::size_t j : nz) row[j] -= f * a_[r][j];
        };
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (i != r) eliminate(a_[i]);
        }
        eliminate(cost_);
        basis_[r] = c;
    }

    /// Minimises cost . x from the current basic feasible solution.
    /// Returns false if the objective is unbounded below.
    bool minimise(const std::vector<Rational>& cost) {
        cost_.assign(ncols_ + 1, Rational(0));
        for (std::size_t j = 0; j < ncols_; ++j) cost_[j] = cost[j];
        for (std::size_t i = 0; i < a_.size(); ++i) {
            const Rational cb = cost[basis_[i]];
            if (sgn(cb) == 0) continue;
            for (std::size_t j = 0; j <= ncols_; ++j) {
                if (sgn(a_[i][j]) != 0) cost_[j] -= cb * a_[i][j];
            }
        }
        while (true) {
            // Bland: lowest-index improving column, then lowest-index leaving variable among ties.
            std::size_t enter = ncols_;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (allowed_[j] && sgn(cost_[j]) < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols_) return true;
            std::size_t leave = a_.size();
            Rational best;
            for (std::size_t i = 0; i < a_.size(); ++i) {
                if (sgn(a_[i][enter]) <= 0) continue;
                Rational ratio = a_[i][ncols_] / a_[i][enter];
                if (leave == a_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = std::move(ratio);
                }
            }
            if (leave == a_.size()) return false;
            pivot(leave, enter);
        }
    }

    void drop_row(std::size_t i) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
    }

private:
    std::vector<std::vector<Rational>> a_;
    std::vector<std::size_t> basis_;
    std::size_t ncols_;
    std::vector<bool> allowed_;
    std::vector<Rational> cost_;
    std::size_t pivots_ = 0;
};

}  // namespace detail

/// Two-phase simplex. Phase 1 minimises the sum of artificial variables;
/// phase 2 (if an objective is given) minimises it over the feasible region.
inline LpSolution solve_feasible(const LpProblem& p) {
    if (auto err = check_problem(p)) throw InvalidInput("solve_feasible: " + *err);
    const std::size_t n = p.num_vars;
    const std::size_t m = p.rows.size();

    // Columns: originals, then one slack or surplus per inequality, then artificials.
    std::size_t slack_count = 0;
    for (const auto& row : p.rows) slack_count += row.relation != Relation::Eq;
    std::vector<std::vector<Rational>> a(m);
    std::vector<std::size_t> basis(m);
    std::vector<std::size_t> artificial_rows;
    std::size_t next_slack = n;
    std::vector<std::pair<std::size_t, int>> slack_of(m, {SIZE_MAX, 0});
    std::vector<bool> needs_artificial(m, false);
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = p.rows[i];
        const bool flip = sgn(row.rhs) < 0;
        int slack_sign = 0;
        if (row.relation == Relation::Le) slack_sign = 1;
        if (row.relation == Relation::Ge) slack_sign = -1;
        if (flip) slack_sign = -slack_sign;
        if (slack_sign != 0) slack_of[i] = {next_slack++, slack_sign};
        needs_artificial[i] = slack_sign != 1;  // a +1 slack can start in the basis
    }
    std::size_t next_artificial = n + slack_count;
    std::vector<std::size_t> artificial_col(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i) {
        if (needs_artificial[i]) artificial_col[i] = next_artificial++;
    }
    const std::size_t ncols = next_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = p.rows[i];
        const bool flip = sgn(row.rhs) < 0;
        a[i].assign(ncols + 1, Rational(0));
        for (std::size_t j = 0; j < n; ++j) a[i][j] = flip ? Rational(-row.coeffs[j]) : row.coeffs[j];
        a[i][ncols] = flip ? Rational(-row.rhs) : row.rhs;
        if (slack_of[i].first != SIZE_MAX) a[i][slack_of[i].first] = slack_of[i].second;
        if (needs_artificial[i]) {
            a[i][artificial_col[i]] = 1;
            basis[i] = artificial_col[i];
        } else {
            basis[i] = slack_of[i].first;
        }
    }

    detail::Tableau tab(std::move(a), std::move(basis), ncols);
    std::vector<Rational> phase1(ncols, Rational(0));
    for (std::size_t j = n + slack_count; j < ncols; ++j) phase1[j] = 1;
    tab.minimise(phase1);

    LpSolution sol;
    Rational infeasibility = 0;
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (tab.basis()[i] >= n + slack_count) infeasibility += tab.rhs(i);
    }
    if (sgn(infeasibility) != 0) {
        sol.status = LpStatus::Infeasible;
        sol.pivots = tab.pivots();
        return sol;
    }
    // Drive zero-level artificials out of the basis; rows where that is impossible are redundant.
    for (std::size_t i = tab.rows(); i-- > 0;) {
        if (tab.basis()[i] < n + slack_count) continue;
        std::size_t col = SIZE_MAX;
        for (std::size_t j = 0; j < n + slack_count; ++j) {
            if (sgn(tab.at(i, j)) != 0) {
                col = j;
                break;
            }
        }
        if (col == SIZE_MAX) {
            tab.drop_row(i);
        } else {
            tab.pivot(i, col);
        }
    }
    for (std::size_t j = n + slack_count; j < ncols; ++j) tab.forbid(j);

    if (p.objective) {
        std::vector<Rational> cost(ncols, Rational(0));
        for (std::size_t j = 0; j < n; ++j) cost[j] = (*p.objective)[j];
        sol.unbounded = !tab.minimise(cost);
    }
    sol.status = LpStatus::Feasible;
    sol.assignment.assign(n, Rational(0));
    for (std::size_t i = 0; i < tab.rows(); ++i) {
        if (tab.basis()[i] < n) sol.assignment[tab.basis()[i]] = tab.rhs(i);
    }
    sol.objective_value = 0;
    if (p.objective) {
        for (std::size_t j = 0; j < n; ++j) sol.objective_value += (*p.objective)[j] * sol.assignment[j];
    }
    sol.pivots = tab.pivots();
    return sol;
}

/// Multiplies by the lcm of all denominators.
inline std::vector<BigInt> scale_to_integers(const std::vector<Rational>& values) {
    BigInt l = 1;
    for (const auto& v : values) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
    }
    std::vector<BigInt> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(v.get_num() * (l / v.get_den()));
    return out;
}

}  // namespace semind
