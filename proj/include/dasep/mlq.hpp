#pragma once

#include "dasep/linalg.hpp"
#include "dasep/polyring.hpp"
#include "dasep/rational.hpp"
#include "dasep/states.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dasep {

/// Grid position. Rows are numbered from 1 at the bottom; columns from 0.
struct Cell {
    int row = 0;
    int col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

/// An L x n 0/1 matrix whose ball counts weakly decrease going up.
class BallSystem {
public:
    /// grid[0] is row 1 (the bottom row).
    explicit BallSystem(std::vector<std::vector<bool>> grid);

    int rows() const { return static_cast<int>(grid_.size()); }
    int cols() const { return grid_.empty() ? 0 : static_cast<int>(grid_.front().size()); }
    bool ball(int row, int col) const { return grid_[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(col)]; }
    int balls_in_row(int row) const;

private:
    std::vector<std::vector<bool>> grid_;
};

/// f = number of free candidates when the choice was made; s = number of
/// free candidates passed over, scanning rightward with wraparound from the
/// chooser's own column.
struct Choice {
    int f = 1;
    int s = 0;
};

struct Match {
    Cell upper;
    Cell lower;
    std::optional<Choice> choice;  // empty for a trivial (straight down) match

    bool trivial() const { return !choice.has_value(); }
};

class MultilineQueue {
public:
    MultilineQueue(BallSystem base, std::vector<std::vector<int>> labels, std::vector<Match> matches);

    const BallSystem& base() const { return base_; }
    /// labels()[row-1][col]; 0 for an empty cell.
    int label(int row, int col) const { return labels_[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(col)]; }
    const std::vector<Match>& matches() const { return matches_; }

    /// alpha(Q): the bottom-row labels in site order.
    Word bottom_word() const;
    /// lambda(Q): the bottom-row labels sorted nonincreasingly.
    Partition partition() const;

    std::string to_string() const;

private:
    BallSystem base_;
    std::vector<std::vector<int>> labels_;
    std::vector<Match> matches_;
};

/// Every multiline queue of type lambda: all ball systems with lambda'_i balls
/// in row i, expanded over every admissible sequence of nontrivial choices.
std::vector<MultilineQueue> enumerate_queues(const Partition& lambda);

/// Product over nontrivial matches of t^s / (1 + t + ... + t^{f-1}).
Rational queue_weight(const MultilineQueue& q, const Rational& t);

/// queue_weight as a rational function of t.
RatFunc queue_weight_symbolic(const MultilineQueue& q);

struct QueueWeightSums {
    StateSpace states;
    std::vector<Rational> per_word;  // sum of weights with alpha(Q) = word
    Rational total;                  // sum over all queues of type lambda
};

QueueWeightSums queue_weight_sums(const Partition& lambda, const Rational& t);

/// Pr(alpha) = sum_{alpha(Q)=alpha} wt(Q) / sum_{lambda(Q)=lambda} wt(Q).
StationaryVector queue_distribution(const Partition& lambda, const Rational& t);

}  // namespace dasep
