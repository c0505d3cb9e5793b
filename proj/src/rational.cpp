#include "dasep/rational.hpp"

#include <cctype>

namespace dasep {

namespace {

bool is_digit_run(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    const auto slash = body.find('/');
    const std::string_view num = body.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
    if (!is_digit_run(num) || !is_digit_run(den)) {
        throw ValidationError("not an exact rational (expected a/b or an integer): '" + std::string(text) + "'");
    }
    Integer n(std::string(num), 10);
    Integer d(std::string(den), 10);
    if (d == 0) {
        throw ValidationError("zero denominator in rational: '" + std::string(text) + "'");
    }
    Rational r(n, d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer ceil(const Rational& value) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Rational power(const Rational& value, unsigned exponent) {
    Rational out(1);
    for (unsigned i = 0; i < exponent; ++i) out *= value;
    return out;
}

}  // namespace dasep
