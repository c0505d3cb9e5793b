#pragma once

#include "dasep/kernels.hpp"
#include "dasep/rational.hpp"
#include "dasep/states.hpp"

#include <cstddef>
#include <vector>

namespace dasep {

using ExactVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ExactMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    ExactVector operator*(const ExactVector& x) const;
    ExactMatrix transposed() const;

    friend bool operator==(const ExactMatrix&, const ExactMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Raised by solve_affine for an inconsistent system. The certificate y
/// satisfies y^T M = 0 and y . rhs != 0.
class InconsistentSystemError : public Error {
public:
    InconsistentSystemError(const std::string& what, ExactVector certificate)
        : Error(what), certificate_(std::move(certificate)) {}
    const ExactVector& certificate() const { return certificate_; }

private:
    ExactVector certificate_;
};

/// Raised by stationary() for a kernel whose transition graph is not
/// strongly connected.
class ReducibleChainError : public Error {
public:
    ReducibleChainError(const std::string& what, Word from, Word to)
        : Error(what), from_(std::move(from)), to_(std::move(to)) {}
    const Word& from() const { return from_; }
    const Word& to() const { return to_; }

private:
    Word from_;
    Word to_;
};

/// Exact rank via fraction-free elimination.
std::size_t rank(const ExactMatrix& m);

struct AffineSolution {
    ExactVector particular;
    std::vector<ExactVector> null_basis;
};

/// All solutions of M x = rhs as particular + span(null_basis).
AffineSolution solve_affine(const ExactMatrix& m, const ExactVector& rhs);

/// An exact probability vector indexed by a state space.
class Distribution {
public:
    Distribution() = default;
    Distribution(StateSpace states, std::vector<Rational> probs);

    const StateSpace& states() const { return states_; }
    const std::vector<Rational>& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    const Rational& operator[](std::size_t i) const { return probs_[i]; }
    const Rational& at(const Word& w) const { return probs_[states_.require_index(w)]; }
    Rational total() const;

    friend bool operator==(const Distribution&, const Distribution&) = default;

private:
    StateSpace states_;
    std::vector<Rational> probs_;
};

using StationaryVector = Distribution;

/// The unique pi with pi K = pi and sum(pi) = 1. Throws ReducibleChainError
/// when the chain is reducible; the returned vector has passed an exact
/// residual check.
StationaryVector stationary(const TransitionKernel& kernel);

/// pi K - pi, exactly.
ExactVector stationary_residual(const TransitionKernel& kernel, const std::vector<Rational>& pi);

}  // namespace dasep
