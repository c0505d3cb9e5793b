#include "dasep/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace dasep {

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ExactVector ExactMatrix::operator*(const ExactVector& x) const {
    if (x.size() != cols_) throw ValidationError("matrix-vector dimension mismatch");
    ExactVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if ((*this)(r, c) != 0) out[r] += (*this)(r, c) * x[c];
        }
    }
    return out;
}

ExactMatrix ExactMatrix::transposed() const {
    ExactMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    }
    return out;
}

namespace {

using IntRow = std::vector<Integer>;

/// Integer rows after Bareiss forward elimination. Only the first
/// `pivot_cols` columns are eligible for pivots; later columns ride along.
struct Echelon {
    std::vector<IntRow> rows;
    std::vector<std::size_t> column_order;  // column_order[k] = original column in position k
    std::size_t rank = 0;
};

/// Multiplies a rational row by the lcm of its denominators. Returns the scale.
Integer integer_row(const Rational* begin, std::size_t count, IntRow& out) {
    Integer scale(1);
    for (std::size_t i = 0; i < count; ++i) {
        mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), begin[i].get_den_mpz_t());
    }
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = begin[i].get_num() * (scale / begin[i].get_den());
    }
    return scale;
}

std::size_t bit_length(const Integer& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

// Full pivoting on the smallest nonzero entry (by bit length), ties broken by
// row then column index.
Echelon bareiss(std::vector<IntRow> rows, std::size_t pivot_cols) {
    Echelon out;
    out.column_order.resize(pivot_cols);
    std::iota(out.column_order.begin(), out.column_order.end(), std::size_t{0});
    const std::size_t m = rows.size();
    const std::size_t width = m ? rows.front().size() : 0;
    Integer prev(1);
    std::size_t k = 0;
    for (; k < m && k < pivot_cols; ++k) {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        std::size_t best_bits = 0;
        for (std::size_t r = k; r < m; ++r) {
            for (std::size_t c = k; c < pivot_cols; ++c) {
                if (rows[r][c] == 0) continue;
                const auto bits = bit_length(rows[r][c]);
                if (!best || bits < best_bits) {
                    best = {r, c};
                    best_bits = bits;
                }
            }
        }
        if (!best) break;
        std::swap(rows[k], rows[best->first]);
        if (best->second != k) {
            for (auto& row : rows) std::swap(row[k], row[best->second]);
            std::swap(out.column_order[k], out.column_order[best->second]);
        }
        const Integer& pivot = rows[k][k];
        for (std::size_t i = k + 1; i < m; ++i) {
            const Integer factor = rows[i][k];
            for (std::size_t j = k + 1; j < width; ++j) {
                Integer v = pivot * rows[i][j] - factor * rows[k][j];
                mpz_divexact(rows[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            rows[i][k] = 0;
        }
        prev = pivot;
    }
    out.rank = k;
    out.rows = std::move(rows);
    return out;
}

std::vector<IntRow> scaled_rows(const ExactMatrix& m, const ExactVector* rhs, bool with_identity,
                                std::vector<Integer>* scales) {
    const std::size_t extra = (rhs ? 1 : 0) + (with_identity ? m.rows() : 0);
    std::vector<IntRow> rows(m.rows());
    std::vector<Rational> buffer(m.cols() + (rhs ? 1 : 0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) buffer[c] = m(r, c);
        if (rhs) buffer[m.cols()] = (*rhs)[r];
        const Integer scale = integer_row(buffer.data(), buffer.size(), rows[r]);
        if (scales) scales->push_back(scale);
        rows[r].resize(m.cols() + extra);
        if (with_identity) rows[r][m.cols() + (rhs ? 1 : 0) + r] = 1;
    }
    return rows;
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss(scaled_rows(m, nullptr, false, nullptr), m.cols()).rank;
}

AffineSolution solve_affine(const ExactMatrix& m, const ExactVector& rhs) {
    if (rhs.size() != m.rows()) throw ValidationError("right-hand side length does not match matrix rows");
    const std::size_t n = m.cols();
    const Echelon ech = bareiss(scaled_rows(m, &rhs, false, nullptr), n);

    for (std::size_t r = ech.rank; r < ech.rows.size(); ++r) {
        if (ech.rows[r][n] == 0) continue;
        // Redo the elimination carrying the row operations to extract y.
        std::vector<Integer> scales;
        const Echelon traced = bareiss(scaled_rows(m, &rhs, true, &scales), n);
        for (std::size_t rr = traced.rank; rr < traced.rows.size(); ++rr) {
            if (traced.rows[rr][n] == 0) continue;
            ExactVector y(m.rows());
            for (std::size_t i = 0; i < m.rows(); ++i) y[i] = Rational(traced.rows[rr][n + 1 + i] * scales[i]);
            throw InconsistentSystemError("inconsistent linear system (echelon row " + std::to_string(rr) +
                                              " reads 0 = nonzero)",
                                          std::move(y));
        }
    }

    // Back substitution in the permuted column order.
    auto back_substitute = [&](const std::vector<Rational>& free_values, bool homogeneous) {
        std::vector<Rational> x(n);
        for (std::size_t k = ech.rank; k < n; ++k) x[k] = free_values[k - ech.rank];
        for (std::size_t k = ech.rank; k-- > 0;) {
            Rational acc = homogeneous ? Rational(0) : Rational(ech.rows[k][n]);
            for (std::size_t j = k + 1; j < n; ++j) {
                if (ech.rows[k][j] != 0 && x[j] != 0) acc -= Rational(ech.rows[k][j]) * x[j];
            }
            x[k] = acc / Rational(ech.rows[k][k]);
        }
        ExactVector out(n);
        for (std::size_t k = 0; k < n; ++k) out[ech.column_order[k]] = x[k];
        return out;
    };

    AffineSolution sol;
    const std::size_t nullity = n - ech.rank;
    sol.particular = back_substitute(std::vector<Rational>(nullity), false);
    for (std::size_t f = 0; f < nullity; ++f) {
        std::vector<Rational> free_values(nullity);
        free_values[f] = 1;
        sol.null_basis.push_back(back_substitute(free_values, true));
    }
    return sol;
}

Distribution::Distribution(StateSpace states, std::vector<Rational> probs)
    : states_(std::move(states)), probs_(std::move(probs)) {
    if (states_.size() != probs_.size()) throw ValidationError("distribution size does not match its state space");
}

Rational Distribution::total() const {
    Rational s(0);
    for (const auto& p : probs_) s += p;
    return s;
}

ExactVector stationary_residual(const TransitionKernel& kernel, const std::vector<Rational>& pi) {
    const std::size_t size = kernel.size();
    ExactVector out(size);
    for (std::size_t r = 0; r < size; ++r) {
        out[r] += pi[r] * kernel.diagonal(r);
        for (const auto& e : kernel.off_diagonal(r)) out[e.column] += pi[r] * e.probability;
    }
    for (std::size_t c = 0; c < size; ++c) out[c] -= pi[c];
    return out;
}

StationaryVector stationary(const TransitionKernel& kernel) {
    const std::size_t size = kernel.size();
    const auto& states = kernel.states();
    if (size == 0) throw ValidationError("stationary distribution of an empty state space");
    if (auto pair = kernel.non_communicating_pair()) {
        const Word& a = states[pair->first];
        const Word& b = states[pair->second];
        throw ReducibleChainError("reducible kernel: state " + b.to_string() + " is not reachable from state " +
                                      a.to_string(),
                                  a, b);
    }
    // (K^T - I) pi = 0 plus the normalization row sum(pi) = 1.
    ExactMatrix system(size + 1, size);
    for (std::size_t r = 0; r < size; ++r) {
        system(r, r) += kernel.diagonal(r) - 1;
        for (const auto& e : kernel.off_diagonal(r)) system(e.column, r) += e.probability;
    }
    for (std::size_t c = 0; c < size; ++c) system(size, c) = 1;
    ExactVector rhs(size + 1);
    rhs[size] = 1;

    AffineSolution sol = solve_affine(system, rhs);
    if (!sol.null_basis.empty()) throw Error("stationary solve is not unique despite irreducibility");
    const ExactVector residual = stationary_residual(kernel, sol.particular);
    for (const auto& v : residual) {
        if (v != 0) throw Error("stationary residual check failed");
    }
    StationaryVector out(states, std::move(sol.particular));
    if (out.total() != 1) throw Error("stationary normalization check failed");
    return out;
}

}  // namespace dasep
