#include "dasep/mlq.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace dasep {

BallSystem::BallSystem(std::vector<std::vector<bool>> grid) : grid_(std::move(grid)) {
    for (std::size_t r = 0; r < grid_.size(); ++r) {
        if (grid_[r].size() != grid_.front().size()) throw ValidationError("ball system rows differ in length");
        if (r > 0 && balls_in_row(static_cast<int>(r) + 1) > balls_in_row(static_cast<int>(r))) {
            throw ValidationError("ball system row " + std::to_string(r + 1) + " has more balls than the row below");
        }
    }
}

int BallSystem::balls_in_row(int row) const {
    const auto& r = grid_[static_cast<std::size_t>(row - 1)];
    return static_cast<int>(std::count(r.begin(), r.end(), true));
}

MultilineQueue::MultilineQueue(BallSystem base, std::vector<std::vector<int>> labels, std::vector<Match> matches)
    : base_(std::move(base)), labels_(std::move(labels)), matches_(std::move(matches)) {}

Word MultilineQueue::bottom_word() const { return Word(labels_.front()); }

Partition MultilineQueue::partition() const { return bottom_word().sorted_partition(); }

std::string MultilineQueue::to_string() const {
    std::ostringstream out;
    for (int r = base_.rows(); r >= 1; --r) {
        out << "row " << r << ":";
        for (int c = 0; c < base_.cols(); ++c) {
            out << ' ';
            if (base_.ball(r, c)) out << label(r, c);
            else out << '.';
        }
        out << '\n';
    }
    for (const auto& m : matches_) {
        out << "  (" << m.upper.row << "," << m.upper.col << ")->(" << m.lower.row << "," << m.lower.col << ")";
        if (m.trivial()) out << " trivial";
        else out << " f=" << m.choice->f << " s=" << m.choice->s;
        out << '\n';
    }
    return out.str();
}

namespace {

struct Builder {
    const BallSystem& balls;
    int n;
    std::vector<std::vector<int>> labels;  // 0 = empty or not yet labelled
    std::vector<Match> matches;

    bool free(int row, int col) const {
        return balls.ball(row, col) && labels[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(col)] == 0;
    }
    int& label(int row, int col) { return labels[static_cast<std::size_t>(row - 1)][static_cast<std::size_t>(col)]; }
};

class Enumerator {
public:
    Enumerator(const BallSystem& balls, std::vector<MultilineQueue>& out) : balls_(balls), out_(out) {}

    void run() {
        const int top = balls_.rows();
        Builder b{balls_, balls_.cols(), std::vector<std::vector<int>>(static_cast<std::size_t>(top),
                                                                       std::vector<int>(static_cast<std::size_t>(balls_.cols()), 0)),
                  {}};
        for (int c = 0; c < b.n; ++c) {
            if (balls_.ball(top, c)) b.label(top, c) = top;
        }
        if (top == 1) {
            emit(b);
            return;
        }
        match_row(std::move(b), top);
    }

private:
    // Match every ball of `row` into row - 1, one label class at a time,
    // highest label first.
    void match_row(Builder b, int row) {
        std::vector<int> classes;
        for (int c = 0; c < b.n; ++c) {
            if (balls_.ball(row, c)) classes.push_back(b.label(row, c));
        }
        std::sort(classes.begin(), classes.end(), std::greater<>());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        process_class(std::move(b), row, classes, 0);
    }

    void process_class(Builder b, int row, const std::vector<int>& classes, std::size_t ci) {
        const int below = row - 1;
        if (ci == classes.size()) {
            for (int c = 0; c < b.n; ++c) {
                if (b.free(below, c)) b.label(below, c) = below;
            }
            if (below == 1) emit(b);
            else match_row(std::move(b), below);
            return;
        }
        const int cls = classes[ci];
        std::vector<int> pending;
        for (int c = 0; c < b.n; ++c) {
            if (!balls_.ball(row, c) || b.label(row, c) != cls) continue;
            if (b.free(below, c)) {
                b.label(below, c) = cls;
                b.matches.push_back({Cell{row, c}, Cell{below, c}, std::nullopt});
            } else {
                pending.push_back(c);
            }
        }
        // Nontrivial matches proceed from the highest column to the lowest.
        std::sort(pending.begin(), pending.end(), std::greater<>());
        choose(std::move(b), row, classes, ci, pending, 0);
    }

    void choose(Builder b, int row, const std::vector<int>& classes, std::size_t ci, const std::vector<int>& pending,
                std::size_t k) {
        if (k == pending.size()) {
            process_class(std::move(b), row, classes, ci + 1);
            return;
        }
        const int below = row - 1;
        const int col = pending[k];
        std::vector<int> candidates;
        for (int d = 0; d < b.n; ++d) {
            const int c = (col + d) % b.n;
            if (b.free(below, c)) candidates.push_back(c);
        }
        const int f = static_cast<int>(candidates.size());
        for (int s = 0; s < f; ++s) {
            Builder next = b;
            const int target = candidates[static_cast<std::size_t>(s)];
            next.label(below, target) = b.label(row, col);
            next.matches.push_back({Cell{row, col}, Cell{below, target}, Choice{f, s}});
            choose(std::move(next), row, classes, ci, pending, k + 1);
        }
    }

    void emit(const Builder& b) { out_.emplace_back(balls_, b.labels, b.matches); }

    const BallSystem& balls_;
    std::vector<MultilineQueue>& out_;
};

// All 0/1 rows of length n with exactly k ones, in lexicographic order of
// ball columns.
std::vector<std::vector<bool>> rows_with(int n, int k) {
    std::vector<std::vector<bool>> out;
    std::vector<bool> mask(static_cast<std::size_t>(n), false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
        out.push_back(mask);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

}  // namespace

std::vector<MultilineQueue> enumerate_queues(const Partition& lambda) {
    if (lambda.largest() < 1) throw ValidationError("multiline queues need a partition with a positive part");
    const int n = static_cast<int>(lambda.length());
    const Partition conjugate = lambda.conjugate();
    const auto& counts = conjugate.parts();
    std::vector<std::vector<std::vector<bool>>> options;
    for (int k : counts) options.push_back(rows_with(n, k));

    std::vector<MultilineQueue> out;
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
        std::vector<std::vector<bool>> grid;
        for (std::size_t r = 0; r < options.size(); ++r) grid.push_back(options[r][pick[r]]);
        BallSystem balls(std::move(grid));
        Enumerator(balls, out).run();
        std::size_t r = 0;
        while (r < pick.size() && ++pick[r] == options[r].size()) pick[r++] = 0;
        if (r == pick.size()) break;
    }
    return out;
}

Rational queue_weight(const MultilineQueue& q, const Rational& t) {
    Rational w(1);
    for (const auto& m : q.matches()) {
        if (m.trivial()) continue;
        Rational geometric(0);
        for (int e = 0; e < m.choice->f; ++e) geometric += power(t, static_cast<unsigned>(e));
        w *= power(t, static_cast<unsigned>(m.choice->s)) / geometric;
    }
    return w;
}

RatFunc queue_weight_symbolic(const MultilineQueue& q) {
    RatFunc w(Poly2(1));
    for (const auto& m : q.matches()) {
        if (m.trivial()) continue;
        Poly2 geometric;
        for (int e = 0; e < m.choice->f; ++e) geometric += Poly2::monomial(Rational(1), e, 0);
        w = w * RatFunc(Poly2::monomial(Rational(1), m.choice->s, 0), geometric);
    }
    return w;
}

QueueWeightSums queue_weight_sums(const Partition& lambda, const Rational& t) {
    if (t < 0) throw ValidationError("t must be >= 0");
    QueueWeightSums sums{sector_states(lambda), {}, Rational(0)};
    sums.per_word.assign(sums.states.size(), Rational(0));
    for (const auto& q : enumerate_queues(lambda)) {
        const Rational w = queue_weight(q, t);
        sums.per_word[sums.states.require_index(q.bottom_word())] += w;
        sums.total += w;
    }
    return sums;
}

StationaryVector queue_distribution(const Partition& lambda, const Rational& t) {
    if (lambda.largest() == 0) {
        auto states = sector_states(lambda);
        return StationaryVector(states, std::vector<Rational>{Rational(1)});
    }
    QueueWeightSums sums = queue_weight_sums(lambda, t);
    std::vector<Rational> probs;
    probs.reserve(sums.per_word.size());
    for (const auto& w : sums.per_word) probs.push_back(w / sums.total);
    return StationaryVector(std::move(sums.states), std::move(probs));
}

}  // namespace dasep
