#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's kernel builder or solvers.

#include "dasep/rational.hpp"
#include "dasep/states.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using dasep::Rational;
using dasep::Word;
using Dense = std::vector<std::vector<Rational>>;

inline Rational random_rational(std::mt19937_64& rng, long max_num, long max_den, long min_num = 0) {
    std::uniform_int_distribution<long> num(min_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

// A random rational in [0, 1].
inline Rational random_unit(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> den(1, 40);
    const long d = den(rng);
    std::uniform_int_distribution<long> num(0, d);
    Rational r(num(rng), d);
    r.canonicalize();
    return r;
}

// All words over {0..p} of length n with exactly q nonzero letters, by
// counting through every base-(p+1) string.
inline std::vector<Word> brute_dasep_words(int n, int p, int q) {
    std::vector<Word> out;
    std::vector<int> letters(static_cast<std::size_t>(n), 0);
    while (true) {
        if (std::count_if(letters.begin(), letters.end(), [](int x) { return x != 0; }) == q) out.emplace_back(letters);
        std::size_t k = 0;
        while (k < letters.size() && ++letters[k] > p) letters[k++] = 0;
        if (k == letters.size()) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Distinct rearrangements via a set of all n! orderings.
inline std::set<Word> brute_permutations(std::vector<int> letters) {
    std::set<Word> out;
    std::vector<std::size_t> idx(letters.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    do {
        std::vector<int> w;
        for (auto i : idx) w.push_back(letters[i]);
        out.insert(Word(w));
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

struct Chain {
    std::vector<Word> states;
    Dense matrix;
};

// Swap and mutation rules written out directly from the model description.
inline Chain dense_chain(std::vector<Word> states, const Rational& t, const Rational& u, int p, bool mutation,
                         long denominator) {
    std::sort(states.begin(), states.end());
    const std::size_t size = states.size();
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < size; ++i) index[states[i]] = i;
    Dense rate(size, std::vector<Rational>(size, Rational(0)));
    for (std::size_t r = 0; r < size; ++r) {
        const auto& w = states[r].letters();
        const std::size_t n = w.size();
        auto hit = [&](std::vector<int> target, const Rational& value) {
            auto it = index.find(Word(target));
            if (it != index.end() && it->second != r) rate[r][it->second] += value;
        };
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (w[k] == w[k + 1]) continue;
            auto v = w;
            std::swap(v[k], v[k + 1]);
            hit(v, w[k] > w[k + 1] ? t : Rational(1));
        }
        if (n >= 2 && w[0] != w[n - 1]) {
            auto v = w;
            std::swap(v[0], v[n - 1]);
            hit(v, w[n - 1] > w[0] ? t : Rational(1));
        }
        if (mutation) {
            for (std::size_t k = 0; k < n; ++k) {
                if (w[k] >= 1 && w[k] < p) {
                    auto v = w;
                    ++v[k];
                    hit(v, u);
                }
                if (w[k] >= 2) {
                    auto v = w;
                    --v[k];
                    hit(v, Rational(1));
                }
            }
        }
    }
    Rational worst(0);
    for (std::size_t r = 0; r < size; ++r) {
        Rational s(0);
        for (std::size_t c = 0; c < size; ++c) s += rate[r][c];
        s /= denominator;
        if (s > worst) worst = s;
    }
    Rational lazy(1);
    if (worst > 1) {
        mpz_class c;
        mpz_cdiv_q(c.get_mpz_t(), worst.get_num_mpz_t(), worst.get_den_mpz_t());
        lazy = Rational(c);
    }
    Chain chain{states, Dense(size, std::vector<Rational>(size, Rational(0)))};
    for (std::size_t r = 0; r < size; ++r) {
        Rational off(0);
        for (std::size_t c = 0; c < size; ++c) {
            chain.matrix[r][c] = rate[r][c] / (lazy * denominator);
            off += chain.matrix[r][c];
        }
        chain.matrix[r][r] = 1 - off;
    }
    return chain;
}

inline Chain dense_asep(const std::vector<int>& lambda, const Rational& t) {
    auto words = brute_permutations(lambda);
    return dense_chain({words.begin(), words.end()}, t, Rational(0), 0, false, static_cast<long>(lambda.size()));
}

inline Chain dense_dasep(int n, int p, int q, const Rational& t, const Rational& u) {
    return dense_chain(brute_dasep_words(n, p, q), t, u, p, true, 3L * n);
}

// Gauss-Jordan over Q with partial pivoting on the first nonzero entry;
// returns nullopt-style empty vector when the solution is not unique.
inline std::vector<Rational> gauss_jordan(Dense a, std::vector<Rational> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    std::size_t r = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t k = r;
        while (k < rows && a[k][c] == 0) ++k;
        if (k == rows) continue;
        std::swap(a[k], a[r]);
        std::swap(b[k], b[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivots.push_back(c);
        ++r;
    }
    if (pivots.size() != cols) return {};
    std::vector<Rational> x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[pivots[i]] = b[i];
    return x;
}

// pi with pi P = pi and sum pi = 1, solved on the stacked system.
inline std::vector<Rational> stationary(const Dense& p) {
    const std::size_t n = p.size();
    Dense a(n + 1, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> b(n + 1, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = p[j][i] - (i == j ? 1 : 0);
    }
    for (std::size_t j = 0; j < n; ++j) a[n][j] = 1;
    b[n] = 1;
    return gauss_jordan(a, b);
}

inline std::size_t rank(Dense a) {
    const std::size_t rows = a.size();
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t k = r;
        while (k < rows && a[k][c] == 0) ++k;
        if (k == rows) continue;
        std::swap(a[k], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Rational f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace oracle
