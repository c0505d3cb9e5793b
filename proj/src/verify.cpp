#include "dasep/verify.hpp"

#include "dasep/mlq.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <thread>

namespace dasep {

using json = nlohmann::ordered_json;

void Report::add(std::string name, std::string anchor, bool passed, json witness) {
    checks_.push_back(Check{std::move(name), std::move(anchor), passed, std::move(witness)});
}

void Report::merge(const Report& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
    return static_cast<std::size_t>(std::count_if(checks_.begin(), checks_.end(), [](const Check& c) { return !c.passed; }));
}

json Report::to_json() const {
    json checks = json::array();
    for (const auto& c : checks_) {
        checks.push_back(json{{"name", c.name},
                              {"anchor", c.anchor},
                              {"status", c.passed ? "pass" : "fail"},
                              {"witness", c.witness.is_null() ? json::object() : c.witness}});
    }
    return json{{"passed", passed()}, {"total", checks_.size()}, {"failures", failures()}, {"checks", checks}};
}

std::string Report::to_text() const {
    std::ostringstream out;
    for (const auto& c : checks_) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << "  " << c.anchor << '\n';
    }
    out << checks_.size() - failures() << "/" << checks_.size() << " checks passed\n";
    return out.str();
}

namespace {

std::string q(const Rational& r) { return format_rational(r); }

json point_json(const ParamPoint& pt) { return json{{"t", q(pt.t)}, {"u", q(pt.u)}}; }

std::string point_tag(const ParamPoint& pt) { return "(t=" + q(pt.t) + ",u=" + q(pt.u) + ")"; }

std::string index_tag(const SectorIndex& ij) {
    return "p_" + std::to_string(ij.first) + "," + std::to_string(ij.second);
}

std::size_t flat(int p, int i, int j) { return static_cast<std::size_t>(p * (i - 1) + (j - 1)); }

// Coefficient of p_{i,j} in its own equilibrium equation, by boundary case.
Poly2 own_coefficient(int i, int j, int p) {
    if (i < j) {
        if (i == 1 && j == p) return Poly2::parse("3+t+u");
        if (i == 1) return Poly2::parse("3+t+2u");
        if (j == p) return Poly2::parse("4+t+u");
        return Poly2::parse("4+t+2u");
    }
    if (i > j) {
        if (i == p && j == 1) return Poly2::parse("2+2t+u");
        if (j == 1) return Poly2::parse("2+2t+2u");
        if (i == p) return Poly2::parse("3+2t+u");
        return Poly2::parse("3+2t+2u");
    }
    if (i == 1) return Poly2::parse("2u");
    if (i == p) return Poly2::parse("2");
    return Poly2::parse("2+2u");
}

}  // namespace

BalanceSystem build_balance_system(int p) {
    if (p < 2) throw ValidationError("balance system needs p >= 2 (got " + std::to_string(p) + ")");
    BalanceSystem sys;
    sys.p_ = p;
    const Poly2 u = Poly2::u();
    for (int i = 1; i <= p; ++i) {
        for (int j = 1; j <= p; ++j) {
            LinearForm<SectorIndex> a;
            a.add({i, j}, own_coefficient(i, j, p));
            if (i < j) a.add({j, i}, -Poly2::parse("1+2t"));
            if (i > j) a.add({j, i}, -Poly2::parse("2+t"));
            // Inflow by mutation from neighbouring sectors; terms that would
            // leave 1..p do not exist.
            if (i < p) a.add({i + 1, j}, Poly2(-1));
            if (j < p) a.add({i, j + 1}, Poly2(-1));
            if (i > 1) a.add({i - 1, j}, -u);
            if (j > 1) a.add({i, j - 1}, -u);
            sys.equations_.emplace(SectorIndex{i, j}, std::move(a));
        }
    }
    const std::size_t size = static_cast<std::size_t>(p * p);
    sys.matrix_.assign(size, std::vector<Poly2>(size));
    for (const auto& [eq, form] : sys.equations_) {
        for (const auto& [var, c] : form.coeffs()) {
            sys.matrix_[flat(p, var.first, var.second)][flat(p, eq.first, eq.second)] = c;
        }
    }
    return sys;
}

bool BalanceSystem::rows_sum_to_zero() const {
    return std::all_of(matrix_.begin(), matrix_.end(), [](const std::vector<Poly2>& row) {
        Poly2 s;
        for (const auto& e : row) s += e;
        return s.is_zero();
    });
}

ExactMatrix BalanceSystem::specialize(const ParamPoint& point) const {
    ExactMatrix m(matrix_.size(), matrix_.size());
    for (std::size_t r = 0; r < matrix_.size(); ++r) {
        for (std::size_t c = 0; c < matrix_.size(); ++c) m(r, c) = eval_at(matrix_[r][c], point);
    }
    return m;
}

SectorValues sector_values(const StationaryVector& pd, int p) {
    SectorValues out;
    for (int i = 1; i <= p; ++i) {
        for (int j = 1; j <= p; ++j) out[{i, j}] = pd.at(Word{0, i, j});
    }
    return out;
}

Report check_balance_values(int p, const ParamPoint& point, const SectorValues& values) {
    Report report;
    const auto sys = build_balance_system(p);
    for (const auto& [ij, form] : sys.equations()) {
        const Rational residual = form.evaluate(values, point.t, point.u);
        json witness = point_json(point);
        witness["residual"] = q(residual);
        for (const auto& [var, c] : form.coeffs()) witness[index_tag(var)] = q(values.at(var));
        report.add("dasep3" + std::to_string(p) + "2.balance[" + std::to_string(ij.first) + "," +
                       std::to_string(ij.second) + "]" + point_tag(point),
                   "A_{i,j}(stationary sector values) = 0", residual == 0, std::move(witness));
    }
    return report;
}

Report check_kernel_vs_balance(int p, const ParamPoint& point) {
    const auto pd = stationary(dasep_kernel(3, p, 2, point));
    Report report;
    bool symmetric = true;
    for (const auto& w : pd.states()) {
        if (pd.at(w) != pd.at(w.rotated())) symmetric = false;
    }
    report.add("dasep3" + std::to_string(p) + "2.rotation_symmetry" + point_tag(point),
               "Pd(0,i,j) = Pd(j,0,i) = Pd(i,j,0)", symmetric, point_json(point));
    report.merge(check_balance_values(p, point, sector_values(pd, p)));
    return report;
}

Report check_balance_rank(int p, const std::vector<ParamPoint>& points) {
    Report report;
    const auto sys = build_balance_system(p);
    const std::string tag = "dasep3" + std::to_string(p) + "2";
    report.add(tag + ".B_row_sums", "every row of B sums to the zero polynomial", sys.rows_sum_to_zero(),
               json{{"p", p}});
    const std::size_t expected = static_cast<std::size_t>(p * p - 1);
    for (const auto& pt : points) {
        const std::size_t r = rank(sys.specialize(pt));
        json witness = point_json(pt);
        witness["rank"] = r;
        witness["expected"] = expected;
        report.add(tag + ".B_rank" + point_tag(pt), "rank B = p^2 - 1", r == expected, std::move(witness));
    }
    return report;
}

Report check_closed_form(int p, const ParamPoint& point) {
    if (p < 2) throw ValidationError("closed form check needs p >= 2");
    if (point.u <= 0) throw ValidationError("closed form check needs u > 0");
    const auto pd = stationary(dasep_kernel(3, p, 2, point));
    const auto values = sector_values(pd, p);
    const Rational& u = point.u;
    auto pij = [&](int i, int j) -> Rational { return values.at({i, j}); };
    auto qij = [&](int i, int j) -> Rational { return pij(i, j) + pij(j, i); };

    Report report;
    const std::string tag = "dasep3" + std::to_string(p) + "2";

    // (2+2u)q_{i,j} = q_{i+1,j} + q_{i,j+1} + u q_{i-1,j} + u q_{i,j-1} in the
    // interior; at the edges the missing moves leave both sides.
    bool recurrence = true;
    json failures = json::array();
    for (int i = 1; i <= p; ++i) {
        for (int j = 1; j <= p; ++j) {
            Rational coeff(0);
            Rational rhs(0);
            // Outflow: increments at rate u, decrements at rate 1.
            if (i < p) rhs += qij(i + 1, j), coeff += u;
            if (j < p) rhs += qij(i, j + 1), coeff += u;
            if (i > 1) rhs += u * qij(i - 1, j), coeff += 1;
            if (j > 1) rhs += u * qij(i, j - 1), coeff += 1;
            if (coeff * qij(i, j) != rhs) {
                recurrence = false;
                failures.push_back(index_tag({i, j}));
            }
        }
    }
    json rec_witness = point_json(point);
    rec_witness["failing"] = failures;
    report.add(tag + ".q_recurrence" + point_tag(point), "(2+2u)q_{i,j} = q_{i+1,j}+q_{i,j+1}+u q_{i-1,j}+u q_{i,j-1}",
               recurrence, std::move(rec_witness));

    Rational s(0);
    for (int k = 0; k < p; ++k) s += power(u, static_cast<unsigned>(k));
    const Rational s2 = s * s;
    const Rational c = pij(1, 1) * s2;
    bool fits = true;
    for (int i = 1; i <= p; ++i) {
        for (int j = 1; j <= p; ++j) {
            if (i == j) {
                if (pij(i, i) != c * power(u, static_cast<unsigned>(2 * i - 2)) / s2) fits = false;
            } else if (qij(i, j) != c * 2 * power(u, static_cast<unsigned>(i + j - 2)) / s2) {
                fits = false;
            }
        }
    }
    // The same formula with the sum running to n-1 = 2 and no constant.
    Rational s_lit = 1 + u + u * u;
    const bool literal = pij(1, 1) == 1 / (s_lit * s_lit) && qij(1, 2) == 2 * u / (s_lit * s_lit);

    json witness = point_json(point);
    witness["c"] = q(c);
    witness["p_1,1"] = q(pij(1, 1));
    witness["q_1,2"] = q(qij(1, 2));
    witness["sum_u_k"] = q(s);
    witness["literal_statement_holds"] = literal;
    report.add(tag + ".closed_form" + point_tag(point),
               "q_{i,j} = c*2u^{i+j-2}/S^2, p_{i,i} = c*u^{2i-2}/S^2, S = sum_{k<p} u^k, one constant c", fits,
               std::move(witness));
    return report;
}

Rational closed_form_constant(const Report& closed_form_report) {
    for (const auto& check : closed_form_report.checks()) {
        if (check.witness.contains("c")) return parse_rational(check.witness["c"].get<std::string>());
    }
    throw ValidationError("report carries no fitted closed-form constant");
}

bool ratios_match_asep(const StationaryVector& pd, const Rational& t) {
    for (const auto& lambda : sectors_of(pd.states())) {
        const auto pr = stationary(asep_kernel(lambda, t));
        const Word& ref = pr.states()[0];
        for (std::size_t i = 0; i < pr.size(); ++i) {
            const Word& w = pr.states()[i];
            if (pd.at(w) * pr[0] != pd.at(ref) * pr[i]) return false;
        }
    }
    return true;
}

Report check_dasep322_ratios(const std::vector<ParamPoint>& on_line, const std::vector<ParamPoint>& off_line) {
    Report report;
    auto run = [&](const ParamPoint& pt) {
        if (pt.u <= 0) throw ValidationError("ratio check needs u > 0");
        const auto pd = stationary(dasep_kernel(3, 2, 2, pt));
        const Rational x = pd.at(Word{0, 1, 2});
        const Rational y = pd.at(Word{0, 2, 1});
        const Poly2 lhs = Poly2::parse("5+2t+u");
        const Poly2 rhs = Poly2::parse("3+4t+u");
        json w = point_json(pt);
        w["x"] = q(x);
        w["y"] = q(y);
        report.add("dasep322.xy_identity" + point_tag(pt), "(5+2t+u)x = (3+4t+u)y",
                   eval_at(lhs, pt) * x == eval_at(rhs, pt) * y, w);
        const bool equal = ratios_match_asep(pd, pt.t);
        const bool expected = pt.t == 1;
        w["ratios_equal"] = equal;
        w["expected_equal"] = expected;
        report.add("dasep322.ratio_equality" + point_tag(pt), "DASEP/ASEP ratio equality iff t = 1",
                   equal == expected, std::move(w));
    };
    for (const auto& pt : on_line) run(pt);
    for (const auto& pt : off_line) run(pt);
    return report;
}

NamedValues dasep332_values(const StationaryVector& pd) {
    return NamedValues{
        {"a1", pd.at(Word{0, 1, 1})}, {"a2", pd.at(Word{0, 2, 2})}, {"a3", pd.at(Word{0, 3, 3})},
        {"b1", pd.at(Word{0, 2, 3})}, {"c1", pd.at(Word{0, 3, 2})}, {"b2", pd.at(Word{0, 1, 3})},
        {"c2", pd.at(Word{0, 3, 1})}, {"b3", pd.at(Word{0, 1, 2})}, {"c3", pd.at(Word{0, 2, 1})},
    };
}

namespace {

using Form = LinearForm<std::string>;
using Terms = std::vector<std::pair<std::string, std::string>>;

// lhs = rhs, each side a list of (variable, coefficient) terms, as lhs - rhs.
Form balance(const Terms& lhs, const Terms& rhs) {
    Form f;
    for (const auto& [v, c] : lhs) f.add(v, Poly2::parse(c));
    for (const auto& [v, c] : rhs) f.add(v, -Poly2::parse(c));
    return f;
}

Form divide_or_throw(const Form& f, const Poly2& d) {
    auto out = f.divide_exact(d);
    if (!out) throw Error("expected factor " + d.to_string() + " does not divide the derived relation");
    return *out;
}

}  // namespace

std::vector<LinearForm<std::string>> dasep332_equations() {
    return {
        balance({{"a1", "2u"}}, {{"b3", "1"}, {"c3", "1"}}),
        balance({{"b3", "2+t"}, {"b3", "u"}, {"b3", "u"}, {"b3", "1"}},
                {{"c3", "1+2t"}, {"b2", "1"}, {"a2", "1"}, {"a1", "u"}}),
        balance({{"c3", "1+2t"}, {"c3", "u"}, {"c3", "u"}, {"c3", "1"}},
                {{"b3", "2+t"}, {"c2", "1"}, {"a2", "1"}, {"a1", "u"}}),
        balance({{"a2", "1"}, {"a2", "1"}, {"a2", "u"}, {"a2", "u"}},
                {{"b1", "1"}, {"c1", "1"}, {"b3", "u"}, {"c3", "u"}}),
        balance({{"b2", "2+t"}, {"b2", "u"}, {"b2", "1"}}, {{"c2", "1+2t"}, {"b1", "1"}, {"b3", "u"}}),
        balance({{"c2", "1+2t"}, {"c2", "u"}, {"c2", "1"}}, {{"b2", "2+t"}, {"c1", "1"}, {"c3", "u"}}),
        balance({{"a3", "2"}}, {{"b1", "u"}, {"c1", "u"}}),
        balance({{"b1", "2+t"}, {"b1", "u"}, {"b1", "1"}, {"b1", "1"}},
                {{"c1", "1+2t"}, {"a3", "1"}, {"b2", "u"}, {"a2", "u"}}),
        balance({{"c1", "1+2t"}, {"c1", "u"}, {"c1", "1"}, {"c1", "1"}},
                {{"b1", "2+t"}, {"a3", "1"}, {"a2", "u"}, {"c2", "u"}}),
    };
}

Dasep332Derivation derive_dasep332() {
    const auto e = dasep332_equations();
    const auto& [e1, e2, e3, e4, e5, e6, e7, e8, e9] =
        std::tie(e[0], e[1], e[2], e[3], e[4], e[5], e[6], e[7], e[8]);
    (void)e3;
    const Poly2 u1 = Poly2::parse("u+1");
    const Poly2 two_u1 = Poly2(2) * u1;

    Dasep332Derivation d;
    // b3 equation: scale by 2(u+1), substitute a2 and a1, then b1+c1.
    const Form b3_scaled = (two_u1 * e2).eliminate(e4, "a2").eliminate(e1, "a1");
    d.b1c1_from_lower = e5 + e6;
    d.reduced_b3 = divide_or_throw(b3_scaled.eliminate(d.b1c1_from_lower, "b1"), u1);

    // c1 equation: scale, substitute a3 and a2, then b1 and c1.
    d.c1_relation = (two_u1 * e9).eliminate(e7, "a3").eliminate(e4, "a2");
    d.c2_relation = divide_or_throw(d.c1_relation.eliminate(e5, "b1").eliminate(e6, "c1"), u1);

    // b1 equation, same steps.
    const Form b1_relation = (two_u1 * e8).eliminate(e7, "a3").eliminate(e4, "a2");
    d.b2_relation = divide_or_throw(b1_relation.eliminate(e5, "b1").eliminate(e6, "c1"), u1);

    // Sum of the two, stripped of its rational content.
    const Form sum = d.c2_relation + d.b2_relation;
    d.b2c2_sum = divide_or_throw(sum, Poly2(sum.coeff("b2").leading_coeff()));

    const Form c2_solved = d.reduced_b3.eliminate(d.b2c2_sum, "b2");
    const Form b2_solved = d.reduced_b3.eliminate(d.b2c2_sum, "c2");
    d.b3c3_relation = (Poly2(2) * d.c2_relation).eliminate(c2_solved, "c2").eliminate(b2_solved, "b2");

    // b3 = k(1+2t), c3 = k(2+t).
    d.ratio_condition = d.b3c3_relation.coeff("b3") * Poly2::parse("1+2t") +
                        d.b3c3_relation.coeff("c3") * Poly2::parse("2+t");
    return d;
}

Poly2 dasep332_reference_ratio_polynomial() {
    return Poly2::parse("2u^3t+6u^2t^2+9ut^3-2u^3+4u^2t+24ut^2+9t^3-10u^2-5ut+18t^2-28u-7t-20");
}

namespace {

struct ReferenceRelation {
    std::string name;
    std::string anchor;
    Form Dasep332Derivation::*member;
    Form reference;
};

std::vector<ReferenceRelation> reference_relations() {
    return {
        {"b1c1_identity", "b1+c1 = (1+u)(b2+c2) - u(b3+c3)", &Dasep332Derivation::b1c1_from_lower,
         balance({{"b1", "1"}, {"c1", "1"}}, {{"b2", "1+u"}, {"c2", "1+u"}, {"b3", "-u"}, {"c3", "-u"}})},
        {"reduced_b3", "(4u+2t+5)b3 = (4t+3)c3 + 3b2 + c2", &Dasep332Derivation::reduced_b3,
         balance({{"b3", "4u+2t+5"}}, {{"c3", "4t+3"}, {"b2", "3"}, {"c2", "1"}})},
        {"c1_relation", "(u^2+4tu+4t+6u+6)c1 = (u^2+2tu+2t+6u+4)b1 + 2u(u+1)c2 + u^2b3 + u^2c3",
         &Dasep332Derivation::c1_relation,
         balance({{"c1", "u^2+4tu+4t+6u+6"}},
                 {{"b1", "u^2+2tu+2t+6u+4"}, {"c2", "2u^2+2u"}, {"b3", "u^2"}, {"c3", "u^2"}})},
        {"c2_relation", "(u^2+8tu+12t^2+6u+30t+16)c2 = (u^2+4tu+6t^2+10u+24t+24)b2 + (u^2+4tu+6u)c3 - (u^2+2tu+4u)b3",
         &Dasep332Derivation::c2_relation,
         balance({{"c2", "u^2+8tu+12t^2+6u+30t+16"}},
                 {{"b2", "u^2+4tu+6t^2+10u+24t+24"}, {"c3", "u^2+4tu+6u"}, {"b3", "-u^2-2tu-4u"}})},
        {"b2_relation", "(u^2+4tu+6t^2+10u+24t+28)b2 = (u^2+8tu+12t^2+6u+30t+12)c2 + (u^2+2tu+8u)b3 - (u^2+4tu+2u)c3",
         &Dasep332Derivation::b2_relation,
         balance({{"b2", "u^2+4tu+6t^2+10u+24t+28"}},
                 {{"c2", "u^2+8tu+12t^2+6u+30t+12"}, {"b3", "u^2+2tu+8u"}, {"c3", "-u^2-4tu-2u"}})},
        {"b2c2_identity", "b2+c2 = u(b3+c3)", &Dasep332Derivation::b2c2_sum,
         balance({{"b2", "1"}, {"c2", "1"}}, {{"b3", "u"}, {"c3", "u"}})},
        {"b3c3_relation",
         "(4u^3+36u^2t+90ut^2+72t^3+32u^2+206ut+270t^2+108u+322t+120)c3 = "
         "(4u^3+24u^2t+54ut^2+36t^3+44u^2+190ut+198t^2+160u+350t+200)b3",
         &Dasep332Derivation::b3c3_relation,
         balance({{"c3", "4u^3+36u^2t+90ut^2+72t^3+32u^2+206ut+270t^2+108u+322t+120"}},
                 {{"b3", "4u^3+24u^2t+54ut^2+36t^3+44u^2+190ut+198t^2+160u+350t+200"}})},
    };
}

json form_json(const Form& f) {
    json out = json::object();
    for (const auto& [v, c] : f.coeffs()) out[v] = c.to_string();
    return out;
}

}  // namespace

Report check_dasep332_symbolic() {
    Report report;
    const auto d = derive_dasep332();
    for (const auto& ref : reference_relations()) {
        const Form& derived = d.*(ref.member);
        const auto ratio = derived.scalar_ratio_to(ref.reference);
        json w{{"derived", form_json(derived)}, {"scalar", ratio ? q(*ratio) : "none"}};
        report.add("dasep332.derived." + ref.name, ref.anchor, ratio.has_value() && *ratio != 0, std::move(w));
    }
    const Poly2 reference = dasep332_reference_ratio_polynomial();
    const auto scalar = d.ratio_condition.scalar_ratio_to(reference);
    report.add("dasep332.ratio_polynomial", "ratio condition = rational multiple of the degree-4 polynomial",
               scalar.has_value() && *scalar != 0,
               json{{"derived", d.ratio_condition.to_string()}, {"scalar", scalar ? q(*scalar) : "none"}});
    const auto cofactor = reference.divide_exact(Poly2::parse("t-1"));
    report.add("dasep332.ratio_polynomial_vanishes_at_t1", "(t-1) divides the ratio condition",
               vanishes_at_t1(d.ratio_condition) && cofactor.has_value(),
               json{{"cofactor", cofactor ? cofactor->to_string() : "none"}});

    // The symbolic stationary solution satisfies the derived relations identically.
    const auto sym = symbolic_stationary(3, 3, 2);
    std::map<std::string, RatFunc> vars{
        {"a1", symbolic_at(sym, Word{0, 1, 1})}, {"a2", symbolic_at(sym, Word{0, 2, 2})},
        {"a3", symbolic_at(sym, Word{0, 3, 3})}, {"b1", symbolic_at(sym, Word{0, 2, 3})},
        {"c1", symbolic_at(sym, Word{0, 3, 2})}, {"b2", symbolic_at(sym, Word{0, 1, 3})},
        {"c2", symbolic_at(sym, Word{0, 3, 1})}, {"b3", symbolic_at(sym, Word{0, 1, 2})},
        {"c3", symbolic_at(sym, Word{0, 2, 1})},
    };
    for (const auto& ref : reference_relations()) {
        RatFunc acc;
        for (const auto& [v, c] : ref.reference.coeffs()) acc = acc + RatFunc(c) * vars.at(v);
        report.add("dasep332.symbolic." + ref.name, ref.anchor + " as a rational-function identity", acc.is_zero());
    }
    return report;
}

Report check_dasep332(const ParamPoint& point) {
    if (point.u <= 0) throw ValidationError("DASEP(3,3,2) check needs u > 0");
    const auto pd = stationary(dasep_kernel(3, 3, 2, point));
    const auto values = dasep332_values(pd);
    Report report;
    json base = point_json(point);
    for (const auto& [k, v] : values) base[k] = q(v);

    const auto eqs = dasep332_equations();
    for (std::size_t k = 0; k < eqs.size(); ++k) {
        const Rational r = eqs[k].evaluate(values, point.t, point.u);
        json w = base;
        w["residual"] = q(r);
        report.add("dasep332.equation" + std::to_string(k + 1) + point_tag(point),
                   "sector equilibrium equation " + std::to_string(k + 1) + " of 9", r == 0, std::move(w));
    }
    for (const auto& ref : reference_relations()) {
        if (ref.name != "b1c1_identity" && ref.name != "b2c2_identity") continue;
        const Rational r = ref.reference.evaluate(values, point.t, point.u);
        report.add("dasep332." + ref.name + point_tag(point), ref.anchor, r == 0, json{{"residual", q(r)}});
    }
    static const Report symbolic = check_dasep332_symbolic();
    report.merge(symbolic);
    return report;
}

Report check_uniformity(int n, int p, int q_count) {
    const auto pd = stationary(dasep_kernel(n, p, q_count, ParamPoint::make(Rational(1), Rational(1))));
    const Rational expected(1, static_cast<long>(pd.size()));
    const bool uniform = std::all_of(pd.probs().begin(), pd.probs().end(), [&](const Rational& v) { return v == expected; });
    Report r;
    r.add("dasep" + std::to_string(n) + std::to_string(p) + std::to_string(q_count) + ".uniform_at_t1_u1",
          "stationary distribution at t=u=1 is uniform", uniform, json{{"states", pd.size()}, {"expected", q(expected)}});
    return r;
}

Report check_queue_oracle(const std::vector<Partition>& lambdas, const std::vector<Rational>& ts) {
    Report report;
    for (const auto& lambda : lambdas) {
        for (const auto& t : ts) {
            const auto from_queues = queue_distribution(lambda, t);
            const auto exact = stationary(asep_kernel(lambda, t));
            report.add("mlq.oracle[" + lambda.to_string() + "](t=" + q(t) + ")",
                       "multiline-queue distribution = kernel stationary distribution", from_queues == exact,
                       json{{"lambda", lambda.to_string()}, {"t", q(t)}});
        }
    }
    return report;
}

Report check_asep_closed_forms(const std::vector<Rational>& ts) {
    Report report;
    const auto rising = Partition::make({2, 1, 0});
    for (const auto& t : ts) {
        const auto pr = stationary(asep_kernel(rising, t));
        const Rational a = (1 + 2 * t) / (9 * (1 + t));
        const Rational b = (2 + t) / (9 * (1 + t));
        bool ok = true;
        for (const auto& w : {Word{0, 1, 2}, Word{1, 2, 0}, Word{2, 0, 1}}) ok = ok && pr.at(w) == a;
        for (const auto& w : {Word{2, 1, 0}, Word{1, 0, 2}, Word{0, 2, 1}}) ok = ok && pr.at(w) == b;
        report.add("asep210.closed_form(t=" + q(t) + ")", "Pr = (1+2t)/(9(1+t)) on (0,1,2) rotations, (2+t)/(9(1+t)) else",
                   ok, json{{"t", q(t)}, {"Pr(0,1,2)", q(pr.at(Word{0, 1, 2}))}, {"Pr(2,1,0)", q(pr.at(Word{2, 1, 0}))}});
        for (const auto& lambda : {Partition::make({1, 1, 0}), Partition::make({2, 2, 0})}) {
            const auto flat_pr = stationary(asep_kernel(lambda, t));
            const bool uniform = std::all_of(flat_pr.probs().begin(), flat_pr.probs().end(),
                                             [](const Rational& v) { return v == Rational(1, 3); });
            report.add("asep" + lambda.to_string() + ".uniform(t=" + q(t) + ")", "Pr = 1/3 on every state", uniform,
                       json{{"t", q(t)}});
        }
    }
    return report;
}

Report conjecture_sweep(int n, int p, int q_count, const std::vector<ParamPoint>& grid, unsigned workers) {
    const auto space = dasep_states(n, p, q_count);
    if (space.size() > kSweepStateLimit) {
        throw SizeGuardError("conjecture sweep is limited to " + std::to_string(kSweepStateLimit) + " states (got " +
                             std::to_string(space.size()) + ")");
    }
    for (const auto& pt : grid) {
        if (p > 1 && pt.u <= 0) throw ValidationError("conjecture sweep needs u > 0 at every grid point");
    }
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

    auto evaluate = [n, p, q_count](const ParamPoint& pt) {
        return ratios_match_asep(stationary(dasep_kernel(n, p, q_count, pt)), pt.t);
    };
    std::vector<bool> equal(grid.size());
    for (std::size_t start = 0; start < grid.size(); start += workers) {
        const std::size_t stop = std::min(grid.size(), start + workers);
        std::vector<std::future<bool>> batch;
        for (std::size_t i = start; i < stop; ++i) batch.push_back(std::async(std::launch::async, evaluate, grid[i]));
        for (std::size_t i = start; i < stop; ++i) equal[i] = batch[i - start].get();
    }

    Report report;
    const std::string tag =
        "sweep.dasep" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(q_count);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const bool expected = grid[i].t == 1;
        json w = point_json(grid[i]);
        w["ratios_equal"] = static_cast<bool>(equal[i]);
        w["expected_equal"] = expected;
        w["kind"] = "evidence";
        report.add(tag + point_tag(grid[i]), "ratio equality with the ASEP iff t = 1 (evidence, not proof)",
                   equal[i] == expected, std::move(w));
    }
    return report;
}

Report verify_all() {
    auto pt = [](const char* t, const char* u) { return ParamPoint::make(parse_rational(t), parse_rational(u)); };
    Report report;
    report.merge(check_asep_closed_forms({Rational(0), Rational(1, 2), Rational(1), Rational(2, 7)}));

    std::vector<Partition> n3;
    for (int a = 1; a <= 3; ++a) {
        for (int b = 0; b <= a; ++b) {
            for (int c = 0; c <= b; ++c) n3.push_back(Partition::make({a, b, c}));
        }
    }
    report.merge(check_queue_oracle(n3, {Rational(1, 2), Rational(3, 7)}));

    report.merge(check_dasep322_ratios({pt("1", "1/2"), pt("1", "1"), pt("1", "3")},
                                        {pt("0", "1"), pt("1/3", "2"), pt("1/2", "1/2"), pt("2", "1")}));
    for (const auto& p332 : {pt("1", "1"), pt("1/2", "1/2"), pt("2/3", "3/4")}) report.merge(check_dasep332(p332));

    for (int p = 2; p <= 4; ++p) {
        for (const auto& b : {pt("1/2", "1/3"), pt("0", "1"), pt("1", "1")}) report.merge(check_kernel_vs_balance(p, b));
        report.merge(check_balance_rank(p, {pt("1/2", "1/3"), pt("2/5", "3/7"), pt("1", "1")}));
        for (const auto& c : {pt("1/2", "1/3"), pt("1", "1"), pt("3", "5/2")}) {
            auto r = check_closed_form(p, c);
            const Rational fitted = closed_form_constant(r);
            r.add("dasep3" + std::to_string(p) + "2.closed_form_constant" +
                      std::string("(t=") + q(c.t) + ",u=" + q(c.u) + ")",
                  "fitted constant c = 1/3", fitted == Rational(1, 3), json{{"c", q(fitted)}});
            report.merge(r);
        }
    }
    report.merge(check_uniformity(3, 2, 2));
    report.merge(check_uniformity(3, 3, 2));
    report.merge(conjecture_sweep(4, 2, 2, {pt("1", "1/3"), pt("1", "2"), pt("1/2", "1/3"), pt("2", "1")}));
    return report;
}

}  // namespace dasep
