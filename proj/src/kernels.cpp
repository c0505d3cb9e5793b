#include "dasep/kernels.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dasep {

ParamPoint ParamPoint::make(Rational t, Rational u) {
    t.canonicalize();
    u.canonicalize();
    if (t < 0) throw ValidationError("t must be >= 0 (got " + format_rational(t) + ")");
    if (u < 0) throw ValidationError("u must be >= 0 (got " + format_rational(u) + ")");
    return ParamPoint{std::move(t), std::move(u)};
}

std::string rate_name(Rate r) {
    switch (r) {
        case Rate::One: return "1";
        case Rate::T: return "t";
        case Rate::U: return "u";
    }
    return "?";
}

Rational rate_value(Rate r, const ParamPoint& point) {
    switch (r) {
        case Rate::One: return Rational(1);
        case Rate::T: return point.t;
        case Rate::U: return point.u;
    }
    return Rational(0);
}

std::vector<Move> asep_moves(const Word& w) {
    std::vector<Move> out;
    const std::size_t n = w.size();
    if (n < 2) return out;
    std::vector<int> letters = w.letters();
    // Interior pair (i, j) -> (j, i): rate t if i > j, 1 if j > i.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const int i = letters[k];
        const int j = letters[k + 1];
        if (i == j) continue;
        std::swap(letters[k], letters[k + 1]);
        out.push_back({Word(letters), i > j ? Rate::T : Rate::One});
        std::swap(letters[k], letters[k + 1]);
    }
    // Wrap (i, ..., j) -> (j, ..., i): rate t if j > i, 1 if i > j.
    const int i = letters.front();
    const int j = letters.back();
    if (i != j) {
        std::swap(letters.front(), letters.back());
        out.push_back({Word(letters), j > i ? Rate::T : Rate::One});
    }
    return out;
}

std::vector<Move> dasep_moves(const Word& w, int p) {
    std::vector<Move> out = asep_moves(w);
    std::vector<int> letters = w.letters();
    for (std::size_t k = 0; k < letters.size(); ++k) {
        const int x = letters[k];
        if (x >= 1 && x < p) {
            letters[k] = x + 1;
            out.push_back({Word(letters), Rate::U});
        }
        if (x >= 2) {
            letters[k] = x - 1;
            out.push_back({Word(letters), Rate::One});
        }
        letters[k] = x;
    }
    return out;
}

TransitionKernel::TransitionKernel(Model model, StateSpace states, ParamPoint point, int base_denominator,
                                   std::vector<std::vector<std::pair<std::size_t, Rate>>> moves,
                                   std::optional<Integer> laziness)
    : model_(model),
      states_(std::move(states)),
      point_(std::move(point)),
      base_denominator_(base_denominator),
      moves_(std::move(moves)) {
    const std::size_t size = states_.size();
    std::vector<std::map<std::size_t, Rational>> raw(size);
    Rational worst(0);
    for (std::size_t r = 0; r < size; ++r) {
        Rational total(0);
        for (const auto& [col, rate] : moves_[r]) {
            Rational value = rate_value(rate, point_) / base_denominator_;
            raw[r][col] += value;
            total += value;
        }
        worst = std::max(worst, total);
    }
    minimal_laziness_ = worst > 1 ? dasep::ceil(worst) : Integer(1);
    laziness_ = laziness.value_or(minimal_laziness_);
    if (laziness_ < minimal_laziness_) {
        throw ValidationError("laziness " + laziness_.get_str() + " is below the minimum " +
                              minimal_laziness_.get_str() + " needed for a stochastic matrix");
    }
    rows_.resize(size);
    diagonal_.resize(size);
    const Rational scale(1, laziness_);
    for (std::size_t r = 0; r < size; ++r) {
        Rational total(0);
        for (auto& [col, value] : raw[r]) {
            Rational prob = value * scale;
            if (prob == 0) continue;
            total += prob;
            rows_[r].push_back({col, prob});
        }
        diagonal_[r] = 1 - total;
    }
}

Rational TransitionKernel::at(std::size_t row, std::size_t column) const {
    if (row == column) return diagonal_[row];
    const auto& entries = rows_[row];
    auto it = std::lower_bound(entries.begin(), entries.end(), column,
                               [](const Entry& e, std::size_t c) { return e.column < c; });
    if (it != entries.end() && it->column == column) return it->probability;
    return Rational(0);
}

Rational TransitionKernel::row_sum(std::size_t row) const {
    Rational total = diagonal_[row];
    for (const auto& e : rows_[row]) total += e.probability;
    return total;
}

TransitionKernel TransitionKernel::with_laziness(const Integer& c) const {
    return TransitionKernel(model_, states_, point_, base_denominator_, moves_, c);
}

std::optional<std::pair<std::size_t, std::size_t>> TransitionKernel::non_communicating_pair() const {
    const std::size_t size = states_.size();
    if (size == 0) return std::nullopt;
    auto reach = [&](bool forward) {
        std::vector<std::vector<std::size_t>> adj(size);
        for (std::size_t r = 0; r < size; ++r) {
            for (const auto& e : rows_[r]) {
                if (forward) adj[r].push_back(e.column);
                else adj[e.column].push_back(r);
            }
        }
        std::vector<bool> seen(size, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    };
    const auto from_first = reach(true);
    for (std::size_t i = 0; i < size; ++i) {
        if (!from_first[i]) return std::make_pair(std::size_t{0}, i);
    }
    const auto to_first = reach(false);
    for (std::size_t i = 0; i < size; ++i) {
        if (!to_first[i]) return std::make_pair(i, std::size_t{0});
    }
    return std::nullopt;
}

std::string TransitionKernel::to_dot() const {
    std::ostringstream out;
    out << "digraph " << (model_ == Model::Asep ? "asep" : "dasep") << " {\n";
    for (std::size_t r = 0; r < states_.size(); ++r) {
        out << "  s" << r << " [label=\"" << states_[r].to_string() << "\"];\n";
    }
    for (std::size_t r = 0; r < states_.size(); ++r) {
        for (const auto& e : rows_[r]) {
            out << "  s" << r << " -> s" << e.column << " [label=\"" << format_rational(e.probability) << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

namespace {

template <class MoveFn>
std::vector<std::vector<std::pair<std::size_t, Rate>>> index_moves(const StateSpace& space, MoveFn&& moves_of) {
    std::vector<std::vector<std::pair<std::size_t, Rate>>> out(space.size());
    for (std::size_t r = 0; r < space.size(); ++r) {
        for (const auto& m : moves_of(space[r])) {
            auto col = space.index_of(m.target);
            if (col) out[r].emplace_back(*col, m.rate);
        }
    }
    return out;
}

}  // namespace

TransitionKernel asep_kernel(const Partition& lambda, const Rational& t) {
    auto point = ParamPoint::make(t, Rational(0));
    StateSpace space = sector_states(lambda);
    auto moves = index_moves(space, [](const Word& w) { return asep_moves(w); });
    const int n = static_cast<int>(lambda.length());
    return TransitionKernel(Model::Asep, std::move(space), std::move(point), std::max(n, 1), std::move(moves),
                            std::nullopt);
}

TransitionKernel dasep_kernel(int n, int p, int q, const ParamPoint& point) {
    auto checked = ParamPoint::make(point.t, point.u);
    StateSpace space = dasep_states(n, p, q);
    auto moves = index_moves(space, [p](const Word& w) { return dasep_moves(w, p); });
    return TransitionKernel(Model::Dasep, std::move(space), std::move(checked), 3 * n, std::move(moves),
                            std::nullopt);
}

}  // namespace dasep
