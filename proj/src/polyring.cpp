#include "dasep/polyring.hpp"

#include "dasep/linalg.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

namespace dasep {

Poly2::Poly2(Rational c) {
    if (c != 0) terms_.emplace(Monomial{}, std::move(c));
}

Poly2 Poly2::t() { return monomial(Rational(1), 1, 0); }
Poly2 Poly2::u() { return monomial(Rational(1), 0, 1); }

Poly2 Poly2::monomial(Rational coeff, int t_deg, int u_deg) {
    if (t_deg < 0 || u_deg < 0) throw ValidationError("negative exponent in monomial");
    Poly2 p;
    p.add_term(Monomial{t_deg, u_deg}, coeff);
    return p;
}

void Poly2::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

namespace {

class PolyParser {
public:
    explicit PolyParser(std::string_view text) {
        for (char c : text) {
            if (!std::isspace(static_cast<unsigned char>(c))) text_ += c;
        }
    }

    Poly2 run() {
        if (text_.empty()) fail("empty polynomial");
        Poly2 out;
        bool first = true;
        while (pos_ < text_.size()) {
            Rational sign(1);
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            out += sign * term();
            first = false;
        }
        return out;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    [[noreturn]] void fail(const std::string& why) const {
        throw ValidationError("cannot parse polynomial '" + text_ + "' at offset " + std::to_string(pos_) + ": " +
                              why);
    }

    Integer integer() {
        const auto start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected digits");
        return Integer(text_.substr(start, pos_ - start), 10);
    }

    Poly2 term() {
        Rational coeff(1);
        bool any = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            Integer num = integer();
            Integer den(1);
            if (peek() == '/') {
                ++pos_;
                den = integer();
                if (den == 0) fail("zero denominator");
            }
            coeff = Rational(num, den);
            coeff.canonicalize();
            any = true;
        }
        int t_deg = 0;
        int u_deg = 0;
        while (true) {
            if (peek() == '*') {
                ++pos_;
                continue;
            }
            const char v = peek();
            if (v != 't' && v != 'u') break;
            ++pos_;
            int e = 1;
            if (peek() == '^') {
                ++pos_;
                e = static_cast<int>(integer().get_si());
            }
            (v == 't' ? t_deg : u_deg) += e;
            any = true;
        }
        if (!any) fail("expected a term");
        return Poly2::monomial(coeff, t_deg, u_deg);
    }

    std::string text_;
    std::size_t pos_ = 0;
};

std::string power_text(char var, int e) {
    if (e == 0) return "";
    if (e == 1) return std::string(1, var);
    return std::string(1, var) + "^" + std::to_string(e);
}

// Print order: higher total degree first, then higher u-degree.
bool print_before(const Monomial& a, const Monomial& b) {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.u_deg > b.u_deg;
}

}  // namespace

Poly2 Poly2::parse(std::string_view text) { return PolyParser(text).run(); }

Rational Poly2::coeff(int t_deg, int u_deg) const {
    auto it = terms_.find(Monomial{t_deg, u_deg});
    return it == terms_.end() ? Rational(0) : it->second;
}

int Poly2::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

Poly2 Poly2::operator-() const {
    Poly2 out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            out.add_term(Monomial{ma.t_deg + mb.t_deg, ma.u_deg + mb.u_deg}, ca * cb);
        }
    }
    return out;
}

Poly2& Poly2::operator*=(const Poly2& o) { return *this = *this * o; }

Poly2 Poly2::pow(unsigned k) const {
    Poly2 out(1);
    for (unsigned i = 0; i < k; ++i) out *= *this;
    return out;
}

Rational Poly2::eval(const Rational& t, const Rational& u) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        acc += c * power(t, static_cast<unsigned>(m.t_deg)) * power(u, static_cast<unsigned>(m.u_deg));
    }
    return acc;
}

Poly2 Poly2::substitute_t(const Rational& value) const {
    Poly2 out;
    for (const auto& [m, c] : terms_) {
        out.add_term(Monomial{0, m.u_deg}, c * power(value, static_cast<unsigned>(m.t_deg)));
    }
    return out;
}

std::optional<Poly2> Poly2::divide_exact(const Poly2& divisor) const {
    if (divisor.is_zero()) throw ValidationError("polynomial division by zero");
    // Lexicographic division (t before u); with a single divisor a zero
    // remainder is equivalent to divisibility.
    const auto& [lead_m, lead_c] = *divisor.terms_.rbegin();
    Poly2 remainder = *this;
    Poly2 quotient;
    while (!remainder.is_zero()) {
        const auto [m, c] = *remainder.terms_.rbegin();
        if (m.t_deg < lead_m.t_deg || m.u_deg < lead_m.u_deg) return std::nullopt;
        Poly2 step = monomial(c / lead_c, m.t_deg - lead_m.t_deg, m.u_deg - lead_m.u_deg);
        quotient += step;
        remainder -= step * divisor;
    }
    return quotient;
}

std::optional<Rational> Poly2::scalar_ratio_to(const Poly2& other) const {
    if (terms_.size() != other.terms_.size()) return std::nullopt;
    if (terms_.empty()) return Rational(1);
    const Rational ratio = terms_.begin()->second / other.terms_.begin()->second;
    auto it = other.terms_.begin();
    for (const auto& [m, c] : terms_) {
        if (it->first != m || c != ratio * it->second) return std::nullopt;
        ++it;
    }
    return ratio;
}

Rational Poly2::leading_coeff() const {
    if (terms_.empty()) return Rational(0);
    auto best = terms_.begin();
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
        if (print_before(it->first, best->first)) best = it;
    }
    return best->second;
}

std::string Poly2::to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return print_before(a.first, b.first); });
    std::string out;
    for (const auto& [m, c] : ordered) {
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (negative) out += '-';
        else if (!out.empty()) out += '+';
        const std::string vars = power_text('u', m.u_deg) + power_text('t', m.t_deg);
        if (mag != 1 || vars.empty()) {
            out += mag.get_den() == 1 ? mag.get_num().get_str() : "(" + mag.get_str() + ")";
        }
        out += vars;
    }
    return out;
}

RatFunc::RatFunc(Poly2 num, Poly2 den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ValidationError("rational function with zero denominator");
    normalize();
}

void RatFunc::normalize() {
    // Scale so the denominator's leading coefficient is 1.
    const Rational lead = den_.leading_coeff();
    if (lead != 1) {
        const Poly2 scale(Rational(1) / lead);
        num_ *= scale;
        den_ *= scale;
    }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) { return RatFunc(a.num_ * b.num_, a.den_ * b.den_); }

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.num_.is_zero()) throw ValidationError("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

Rational RatFunc::eval(const Rational& t, const Rational& u) const {
    const Rational d = den_.eval(t, u);
    if (d == 0) {
        throw PoleError("rational function has a pole at t=" + format_rational(t) + ", u=" + format_rational(u));
    }
    return num_.eval(t, u) / d;
}

std::string RatFunc::to_string() const {
    if (den_ == Poly2(1)) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

Rational eval_at(const Poly2& f, const ParamPoint& point) { return f.eval(point.t, point.u); }
Rational eval_at(const RatFunc& f, const ParamPoint& point) { return f.eval(point.t, point.u); }

bool vanishes_at_t1(const Poly2& f) { return f.substitute_t(Rational(1)).is_zero(); }

namespace {

// Pivot preference: lowest total degree, then fewest terms.
std::pair<int, std::size_t> pivot_cost(const Poly2& p) { return {p.degree(), p.terms().size()}; }

Poly2 exact_quotient(const Poly2& num, const Poly2& den) {
    auto q = num.divide_exact(den);
    if (!q) throw Error("fraction-free elimination produced an inexact division");
    return *q;
}

}  // namespace

std::pair<Poly2, std::vector<Poly2>> solve_fraction_free(std::vector<std::vector<Poly2>> a, std::vector<Poly2> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw ValidationError("right-hand side length does not match matrix rows");
    for (const auto& row : a) {
        if (row.size() != n) throw ValidationError("fraction-free solve needs a square matrix");
    }
    Poly2 prev(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::optional<std::size_t> best;
        for (std::size_t r = k; r < n; ++r) {
            if (a[r][k].is_zero()) continue;
            if (!best || pivot_cost(a[r][k]) < pivot_cost(a[*best][k])) best = r;
        }
        if (!best) throw Error("singular system in fraction-free solve");
        if (*best != k) {
            std::swap(a[k], a[*best]);
            std::swap(b[k], b[*best]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = exact_quotient(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
            }
            b[i] = exact_quotient(a[k][k] * b[i] - a[i][k] * b[k], prev);
            a[i][k] = Poly2();
        }
        prev = a[k][k];
    }
    // a[n-1][n-1] is +-det(A); y = det * x is polynomial.
    const Poly2 det = a[n - 1][n - 1];
    std::vector<Poly2> y(n);
    for (std::size_t k = n; k-- > 0;) {
        Poly2 acc = det * b[k];
        for (std::size_t j = k + 1; j < n; ++j) acc -= a[k][j] * y[j];
        y[k] = exact_quotient(acc, a[k][k]);
    }
    return {det, y};
}

namespace {

Poly2 rate_poly(Rate r) {
    switch (r) {
        case Rate::One: return Poly2(1);
        case Rate::T: return Poly2::t();
        case Rate::U: return Poly2::u();
    }
    return Poly2();
}

}  // namespace

SymbolicDistribution symbolic_stationary(const TransitionKernel& kernel) {
    const auto& states = kernel.states();
    if (states.size() > kSymbolicStateLimit) {
        throw SizeGuardError("symbolic stationary solve is limited to " + std::to_string(kSymbolicStateLimit) +
                             " states (got " + std::to_string(states.size()) + "); solve pointwise instead");
    }
    if (!states.rotation_closed()) throw ValidationError("symbolic solve requires a rotation-closed state space");
    if (states.size() == 0) throw ValidationError("symbolic stationary of an empty state space");

    // Rotation orbits, each represented by its lexicographically smallest word.
    std::vector<std::size_t> orbit_of(states.size(), states.size());
    std::vector<std::size_t> orbit_rep;
    std::vector<std::size_t> orbit_size;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (orbit_of[i] != states.size()) continue;
        const std::size_t id = orbit_rep.size();
        orbit_rep.push_back(i);
        std::set<std::size_t> members;
        Word w = states[i];
        for (std::size_t s = 0; s < states.sites(); ++s) {
            members.insert(states.require_index(w));
            w = w.rotated();
        }
        for (auto m : members) orbit_of[m] = id;
        orbit_size.push_back(members.size());
    }

    // Lumped generator, transposed: row = target orbit, column = source orbit.
    const std::size_t m = orbit_rep.size();
    std::vector<std::vector<Poly2>> a(m, std::vector<Poly2>(m));
    for (std::size_t o = 0; o < m; ++o) {
        for (const auto& [target, rate] : kernel.moves(orbit_rep[o])) {
            const std::size_t to = orbit_of[target];
            if (to == o) continue;
            const Poly2 r = rate_poly(rate);
            a[to][o] += r;
            a[o][o] -= r;
        }
    }
    std::vector<Poly2> b(m);
    for (std::size_t o = 0; o < m; ++o) a[m - 1][o] = Poly2(1);
    b[m - 1] = Poly2(1);

    auto [det, y] = solve_fraction_free(std::move(a), std::move(b));

    SymbolicDistribution out;
    out.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::size_t o = orbit_of[i];
        out.emplace_back(states[i], RatFunc(y[o], det * Poly2(Rational(static_cast<long>(orbit_size[o])))));
    }
    return out;
}

SymbolicDistribution symbolic_stationary(int n, int p, int q) {
    const auto states = dasep_states(n, p, q);
    if (states.size() > kSymbolicStateLimit) {
        throw SizeGuardError("symbolic stationary solve is limited to " + std::to_string(kSymbolicStateLimit) +
                             " states (DASEP(" + std::to_string(n) + "," + std::to_string(p) + "," +
                             std::to_string(q) + ") has " + std::to_string(states.size()) +
                             "); solve pointwise instead");
    }
    const auto kernel = dasep_kernel(n, p, q, ParamPoint::make(Rational(1), Rational(1)));
    auto dist = symbolic_stationary(kernel);

    // Spot-check against the pointwise rational solver.
    std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(n * 100 + p * 10 + q));
    for (int trial = 0; trial < 5; ++trial) {
        Rational t(static_cast<long>(rng() % 20 + 1), static_cast<long>(rng() % 19 + 2));
        Rational u(static_cast<long>(rng() % 20 + 1), static_cast<long>(rng() % 19 + 2));
        t.canonicalize();
        u.canonicalize();
        const auto exact = stationary(dasep_kernel(n, p, q, ParamPoint::make(t, u)));
        for (std::size_t i = 0; i < dist.size(); ++i) {
            if (dist[i].second.eval(t, u) != exact[i]) {
                throw Error("symbolic stationary disagrees with the pointwise solve at " + dist[i].first.to_string());
            }
        }
    }
    return dist;
}

const RatFunc& symbolic_at(const SymbolicDistribution& dist, const Word& w) {
    for (const auto& [word, f] : dist) {
        if (word == w) return f;
    }
    throw ValidationError("word " + w.to_string() + " is not in the symbolic distribution");
}

}  // namespace dasep
