#pragma once

#include "dasep/kernels.hpp"
#include "dasep/linalg.hpp"
#include "dasep/polyring.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dasep {

/// One verified statement. `anchor` is the identity or claim being checked,
/// written out; `witness` holds the exact values that were compared.
struct Check {
    std::string name;
    std::string anchor;
    bool passed = false;
    nlohmann::ordered_json witness;
};

class Report {
public:
    void add(Check check) { checks_.push_back(std::move(check)); }
    void add(std::string name, std::string anchor, bool passed, nlohmann::ordered_json witness = {});
    void merge(const Report& other);

    const std::vector<Check>& checks() const { return checks_; }
    bool passed() const;
    std::size_t failures() const;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;

private:
    std::vector<Check> checks_;
};

/// Index (i, j) of the sector probability p_{i,j} = Pd(0,i,j) in DASEP(3,p,2).
using SectorIndex = std::pair<int, int>;
using SectorValues = std::map<SectorIndex, Rational>;

/// The p^2 sector equilibrium equations A_{i,j} = 0 of DASEP(3,p,2) and their
/// coefficient matrix B with B[(i1,j1)][(i2,j2)] = coefficient of p_{i1,j1}
/// in A_{i2,j2}. Rows and columns are ordered by p*(i-1) + (j-1).
class BalanceSystem {
public:
    int p() const { return p_; }
    const std::map<SectorIndex, LinearForm<SectorIndex>>& equations() const { return equations_; }
    const LinearForm<SectorIndex>& equation(int i, int j) const { return equations_.at({i, j}); }
    const std::vector<std::vector<Poly2>>& matrix() const { return matrix_; }

    /// True iff the entries of every row of B add to the zero polynomial.
    bool rows_sum_to_zero() const;
    ExactMatrix specialize(const ParamPoint& point) const;

    friend BalanceSystem build_balance_system(int p);

private:
    int p_ = 0;
    std::map<SectorIndex, LinearForm<SectorIndex>> equations_;
    std::vector<std::vector<Poly2>> matrix_;
};

/// Requires p >= 2.
BalanceSystem build_balance_system(int p);

/// p_{i,j} = Pd(0,i,j) read from a DASEP(3,p,2) stationary vector.
SectorValues sector_values(const StationaryVector& pd, int p);

/// Every A_{i,j} evaluated at `values` must vanish.
Report check_balance_values(int p, const ParamPoint& point, const SectorValues& values);

/// Solve DASEP(3,p,2) at `point`, confirm rotation symmetry of the solution,
/// then check_balance_values on the reduced sector values.
Report check_kernel_vs_balance(int p, const ParamPoint& point);

/// rank B(point) == p^2 - 1 at each point, plus the symbolic row-sum identity.
Report check_balance_rank(int p, const std::vector<ParamPoint>& points);

/// Closed form for q_{i,j} = p_{i,j} + p_{j,i}: the symmetric recurrence
/// holds exactly, and q_{i,j} = c*2u^{i+j-2}/S^2 (i != j),
/// p_{i,i} = c*u^{2i-2}/S^2 with S = sum_{k<p} u^k for a single constant c
/// fitted from p_{1,1}. Requires u > 0.
Report check_closed_form(int p, const ParamPoint& point);

/// The constant c fitted by check_closed_form (stored in its witness).
Rational closed_form_constant(const Report& closed_form_report);

/// True iff, within every sector S_n(lambda) of DASEP(n,p,q), the ratios of
/// stationary probabilities equal those of ASEP(lambda) at the same t.
bool ratios_match_asep(const StationaryVector& pd, const Rational& t);

/// DASEP(3,2,2): ratio equality holds at the t = 1 points and fails at the
/// others; (5+2t+u)x = (3+4t+u)y holds everywhere.
Report check_dasep322_ratios(const std::vector<ParamPoint>& on_line, const std::vector<ParamPoint>& off_line);

/// The nine DASEP(3,3,2) sector variables a1..c3 keyed by name.
using NamedValues = std::map<std::string, Rational>;
NamedValues dasep332_values(const StationaryVector& pd);

/// The nine DASEP(3,3,2) sector equilibrium equations, indexed 1..9.
std::vector<LinearForm<std::string>> dasep332_equations();

/// Relations produced by mechanically recombining the DASEP(3,3,2) equations.
struct Dasep332Derivation {
    LinearForm<std::string> b1c1_from_lower;   // b1+c1 = (1+u)(b2+c2) - u(b3+c3)
    LinearForm<std::string> reduced_b3;        // (4u+2t+5)b3 = (4t+3)c3 + 3b2 + c2
    LinearForm<std::string> c1_relation;       // eliminates a2, a3 from the c1 equation
    LinearForm<std::string> c2_relation;       // c1 relation with b1, c1 removed, / (u+1)
    LinearForm<std::string> b2_relation;       // b1 equation analogue, / (u+1)
    LinearForm<std::string> b2c2_sum;          // b2+c2 = u(b3+c3)
    LinearForm<std::string> b3c3_relation;     // C(t,u) c3 = D(t,u) b3
    Poly2 ratio_condition;                     // b3 : c3 = (1+2t) : (2+t) substituted
};

Dasep332Derivation derive_dasep332();

/// Reference polynomial for the DASEP(3,3,2) ratio condition.
Poly2 dasep332_reference_ratio_polynomial();

/// Pointwise checks of the nine equations and two derived identities at
/// `point`, followed by the symbolic derivation checks.
Report check_dasep332(const ParamPoint& point);

/// The symbolic half of check_dasep332.
Report check_dasep332_symbolic();

/// Stationary distribution at t = u = 1 is exactly uniform.
Report check_uniformity(int n, int p, int q);

/// The multiline-queue distribution equals the kernel solve.
Report check_queue_oracle(const std::vector<Partition>& lambdas, const std::vector<Rational>& ts);

/// The six ASEP(2,1,0) closed forms and the uniform sectors (1,1,0), (2,2,0).
Report check_asep_closed_forms(const std::vector<Rational>& ts);

/// For each grid point: does intra-sector ratio equality with the ASEP hold,
/// and is that "equal iff t = 1"? Evidence only, never a proof. Points are
/// solved on up to `workers` threads and reported in grid order.
Report conjecture_sweep(int n, int p, int q, const std::vector<ParamPoint>& grid, unsigned workers = 0);

/// Largest state count conjecture_sweep accepts.
inline constexpr std::size_t kSweepStateLimit = 500;

/// The fixed battery run by `verify --all`.
Report verify_all();

}  // namespace dasep
