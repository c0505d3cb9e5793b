#pragma once

#include "dasep/rational.hpp"
#include "dasep/states.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dasep {

/// Hopping bias t and mutation rate u, both exact and nonnegative.
struct ParamPoint {
    Rational t{0};
    Rational u{0};

    /// Throws ValidationError unless t >= 0 and u >= 0.
    static ParamPoint make(Rational t, Rational u);
};

/// The symbolic rate carried by a single move, before division by the
/// chain's denominator (n for ASEP, 3n for DASEP).
enum class Rate { One, T, U };

std::string rate_name(Rate r);
Rational rate_value(Rate r, const ParamPoint& point);

struct Move {
    Word target;
    Rate rate;
};

/// ASEP moves out of `w`: adjacent swaps at (k, k+1) and the wrap swap of the
/// first and last sites.
std::vector<Move> asep_moves(const Word& w);

/// DASEP moves out of `w`: the ASEP swaps plus species increments i -> i+1
/// (1 <= i < p) at rate u and decrements i+1 -> i (i >= 1) at rate 1.
std::vector<Move> dasep_moves(const Word& w, int p);

enum class Model { Asep, Dasep };

/// A sparse row-stochastic matrix over exact rationals. Off-diagonal entries
/// are rate / (laziness * base_denominator); the diagonal completes each row.
class TransitionKernel {
public:
    struct Entry {
        std::size_t column;
        Rational probability;
    };

    TransitionKernel(Model model, StateSpace states, ParamPoint point, int base_denominator,
                     std::vector<std::vector<std::pair<std::size_t, Rate>>> moves, std::optional<Integer> laziness);

    Model model() const { return model_; }
    const StateSpace& states() const { return states_; }
    const ParamPoint& point() const { return point_; }
    std::size_t size() const { return states_.size(); }
    int base_denominator() const { return base_denominator_; }
    const Integer& laziness() const { return laziness_; }

    /// Smallest laziness that keeps every diagonal nonnegative.
    const Integer& minimal_laziness() const { return minimal_laziness_; }

    /// Entries sorted by column; parallel moves to one target are merged.
    const std::vector<Entry>& off_diagonal(std::size_t row) const { return rows_[row]; }
    /// Unmerged moves of a row as (target index, rate).
    const std::vector<std::pair<std::size_t, Rate>>& moves(std::size_t row) const { return moves_[row]; }
    const Rational& diagonal(std::size_t row) const { return diagonal_[row]; }
    Rational at(std::size_t row, std::size_t column) const;
    Rational row_sum(std::size_t row) const;

    /// The same chain with a different laziness c >= minimal_laziness().
    TransitionKernel with_laziness(const Integer& c) const;

    /// First pair (a, b) such that b is unreachable from a, if any.
    std::optional<std::pair<std::size_t, std::size_t>> non_communicating_pair() const;

    /// Graphviz digraph of states and labelled transition probabilities.
    std::string to_dot() const;

private:
    Model model_;
    StateSpace states_;
    ParamPoint point_;
    int base_denominator_;
    std::vector<std::vector<std::pair<std::size_t, Rate>>> moves_;
    Integer laziness_;
    Integer minimal_laziness_;
    std::vector<std::vector<Entry>> rows_;
    std::vector<Rational> diagonal_;
};

/// ASEP(lambda) on S_n(lambda) with hopping bias t.
TransitionKernel asep_kernel(const Partition& lambda, const Rational& t);

/// DASEP(n,p,q) at the given parameter point.
TransitionKernel dasep_kernel(int n, int p, int q, const ParamPoint& point);

}  // namespace dasep
