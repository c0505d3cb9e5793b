#pragma once

#include "dasep/kernels.hpp"
#include "dasep/rational.hpp"
#include "dasep/states.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dasep {

/// Exponent pair t^t_deg u^u_deg.
struct Monomial {
    int t_deg = 0;
    int u_deg = 0;

    int degree() const { return t_deg + u_deg; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// A polynomial in (t, u) with rational coefficients. No zero coefficient is
/// ever stored, so structural equality is polynomial equality.
class Poly2 {
public:
    Poly2() = default;
    Poly2(Rational c);  // NOLINT(google-explicit-constructor)
    Poly2(long c) : Poly2(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    Poly2(int c) : Poly2(Rational(c)) {}   // NOLINT(google-explicit-constructor)

    static Poly2 t();
    static Poly2 u();
    static Poly2 monomial(Rational coeff, int t_deg, int u_deg);

    /// Parses sums of terms such as "2u^3t+6u^2t^2-7t-20" or "1/2 t*u".
    static Poly2 parse(std::string_view text);

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coeff(int t_deg, int u_deg) const;
    int degree() const;

    Poly2 operator-() const;
    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    Poly2& operator*=(const Poly2& o);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);
    Poly2 pow(unsigned k) const;

    Rational eval(const Rational& t, const Rational& u) const;
    /// Substitute t := value, leaving a polynomial in u alone.
    Poly2 substitute_t(const Rational& value) const;

    /// q with q * divisor == *this, or nullopt when divisor does not divide.
    std::optional<Poly2> divide_exact(const Poly2& divisor) const;

    /// c with *this == c * other, or nullopt if no such rational exists.
    std::optional<Rational> scalar_ratio_to(const Poly2& other) const;

    /// The leading coefficient under the printing order.
    Rational leading_coeff() const;

    /// Printing order: total degree descending, then u-degree descending,
    /// e.g. "2u^3t+6u^2t^2+9ut^3-2u^3".
    std::string to_string() const;

    friend bool operator==(const Poly2&, const Poly2&) = default;

private:
    void add_term(const Monomial& m, const Rational& c);

    std::map<Monomial, Rational> terms_;
};

/// Raised when a rational function is evaluated at a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Raised when a symbolic solve would exceed its size guard.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

/// An unreduced quotient of Poly2s. Equality is by cross-multiplication.
class RatFunc {
public:
    RatFunc() : num_(0), den_(1) {}
    RatFunc(Poly2 num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
    RatFunc(Poly2 num, Poly2 den);

    const Poly2& num() const { return num_; }
    const Poly2& den() const { return den_; }

    RatFunc operator-() const { return RatFunc(-num_, den_); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);

    /// Throws PoleError if the denominator vanishes at (t, u).
    Rational eval(const Rational& t, const Rational& u) const;
    bool is_zero() const { return num_.is_zero(); }

    std::string to_string() const;

    friend bool operator==(const RatFunc& a, const RatFunc& b);

private:
    void normalize();

    Poly2 num_;
    Poly2 den_;
};

Rational eval_at(const Poly2& f, const ParamPoint& point);
Rational eval_at(const RatFunc& f, const ParamPoint& point);

/// True iff f(1, u) is the zero polynomial, i.e. (t - 1) divides f.
bool vanishes_at_t1(const Poly2& f);

/// Square system A x = b over Q[t,u] solved fraction-free: returns (det, y)
/// with x = y / det, every y_i a polynomial. Throws Error when singular.
std::pair<Poly2, std::vector<Poly2>> solve_fraction_free(std::vector<std::vector<Poly2>> a, std::vector<Poly2> b);

/// Largest state count accepted by the symbolic stationary solvers.
inline constexpr std::size_t kSymbolicStateLimit = 40;

using SymbolicDistribution = std::vector<std::pair<Word, RatFunc>>;

/// Stationary distribution of the chain shaped like `kernel`, as rational
/// functions of (t, u); only the kernel's states and move rates are used.
/// The chain is lumped over rotation orbits before elimination.
SymbolicDistribution symbolic_stationary(const TransitionKernel& kernel);

/// Stationary distribution of DASEP(n,p,q) as rational functions of (t, u).
SymbolicDistribution symbolic_stationary(int n, int p, int q);

/// Look up one word in a symbolic distribution.
const RatFunc& symbolic_at(const SymbolicDistribution& dist, const Word& w);

/// A linear combination sum coeff(v) * v with Poly2 coefficients, read as the
/// equation "form = 0".
template <class Key>
class LinearForm {
public:
    LinearForm() = default;
    LinearForm(std::initializer_list<std::pair<const Key, Poly2>> init) {
        for (const auto& [k, c] : init) add(k, c);
    }

    const std::map<Key, Poly2>& coeffs() const { return coeffs_; }
    Poly2 coeff(const Key& k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? Poly2() : it->second;
    }

    LinearForm& add(const Key& k, const Poly2& c) {
        auto& slot = coeffs_[k];
        slot += c;
        if (slot.is_zero()) coeffs_.erase(k);
        return *this;
    }

    LinearForm& operator+=(const LinearForm& o) {
        for (const auto& [k, c] : o.coeffs_) add(k, c);
        return *this;
    }
    LinearForm& operator-=(const LinearForm& o) {
        for (const auto& [k, c] : o.coeffs_) add(k, -c);
        return *this;
    }
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator*(const Poly2& s, const LinearForm& f) {
        LinearForm out;
        for (const auto& [k, c] : f.coeffs_) out.add(k, s * c);
        return out;
    }

    /// Divide every coefficient by `d`; nullopt unless all divide exactly.
    std::optional<LinearForm> divide_exact(const Poly2& d) const {
        LinearForm out;
        for (const auto& [k, c] : coeffs_) {
            auto q = c.divide_exact(d);
            if (!q) return std::nullopt;
            out.add(k, *q);
        }
        return out;
    }

    /// Remove `var` from *this using `pivot`. When the quotient of the two
    /// coefficients is a polynomial it is used directly; otherwise both forms
    /// are cross-multiplied.
    LinearForm eliminate(const LinearForm& pivot, const Key& var) const {
        const Poly2 mine = coeff(var);
        const Poly2 theirs = pivot.coeff(var);
        if (theirs.is_zero()) throw ValidationError("pivot form does not contain the eliminated variable");
        if (mine.is_zero()) return *this;
        if (auto q = mine.divide_exact(theirs)) return *this - (*q) * pivot;
        return theirs * (*this) - mine * pivot;
    }

    /// Substitute values for every variable; missing variables are an error.
    template <class Values>
    Rational evaluate(const Values& values, const Rational& t, const Rational& u) const {
        Rational acc(0);
        for (const auto& [k, c] : coeffs_) acc += c.eval(t, u) * values.at(k);
        return acc;
    }

    /// c with *this == c * other, or nullopt.
    std::optional<Rational> scalar_ratio_to(const LinearForm& other) const {
        if (coeffs_.size() != other.coeffs_.size()) return std::nullopt;
        std::optional<Rational> ratio;
        for (const auto& [k, c] : coeffs_) {
            auto it = other.coeffs_.find(k);
            if (it == other.coeffs_.end()) return std::nullopt;
            auto r = c.scalar_ratio_to(it->second);
            if (!r || (ratio && *ratio != *r)) return std::nullopt;
            ratio = r;
        }
        return ratio ? ratio : std::optional<Rational>(Rational(1));
    }

    friend bool operator==(const LinearForm&, const LinearForm&) = default;

private:
    std::map<Key, Poly2> coeffs_;
};

}  // namespace dasep
