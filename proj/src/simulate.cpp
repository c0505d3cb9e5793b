#include "dasep/simulate.hpp"

#include <limits>
#include <random>

namespace dasep {

void SimConfig::validate() const {
    if (steps == 0) throw ValidationError("simulation needs a positive step count");
    if (steps <= burn_in) throw ValidationError("simulation steps must exceed burn-in");
}

Distribution EmpiricalDistribution::to_distribution() const {
    std::vector<Rational> probs;
    probs.reserve(counts.size());
    const Integer denom(std::to_string(total), 10);
    for (auto c : counts) {
        Rational p(Integer(std::to_string(c), 10), denom);
        p.canonicalize();
        probs.push_back(p);
    }
    return Distribution(states, std::move(probs));
}

namespace {

struct RowSampler {
    std::uint64_t denominator = 1;
    std::uint64_t reject_below = 0;
    std::vector<std::uint64_t> cumulative;
    std::vector<std::size_t> targets;
};

std::uint64_t to_u64(const Integer& v) {
    if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
        throw ValidationError("kernel probabilities are too fine-grained for 64-bit integer sampling");
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
    return out;
}

std::vector<RowSampler> build_samplers(const TransitionKernel& kernel) {
    std::vector<RowSampler> out(kernel.size());
    for (std::size_t r = 0; r < kernel.size(); ++r) {
        std::vector<std::pair<std::size_t, Rational>> entries;
        bool placed_diagonal = false;
        for (const auto& e : kernel.off_diagonal(r)) {
            if (!placed_diagonal && e.column > r) {
                entries.emplace_back(r, kernel.diagonal(r));
                placed_diagonal = true;
            }
            entries.emplace_back(e.column, e.probability);
        }
        if (!placed_diagonal) entries.emplace_back(r, kernel.diagonal(r));

        Integer lcm(1);
        for (const auto& [c, p] : entries) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p.get_den_mpz_t());
        auto& s = out[r];
        s.denominator = to_u64(lcm);
        // 2^64 mod D, computed in wrapping unsigned arithmetic.
        s.reject_below = (0 - s.denominator) % s.denominator;
        std::uint64_t acc = 0;
        for (const auto& [c, p] : entries) {
            if (p == 0) continue;
            acc += to_u64(p.get_num() * (lcm / p.get_den()));
            s.cumulative.push_back(acc);
            s.targets.push_back(c);
        }
        if (acc != s.denominator) throw Error("kernel row does not sum to one");
    }
    return out;
}

class Walker {
public:
    Walker(const TransitionKernel& kernel, std::uint64_t seed, std::size_t initial)
        : samplers_(build_samplers(kernel)), rng_(seed), state_(initial) {
        if (initial >= kernel.size()) throw ValidationError("initial state index is out of range");
    }

    std::size_t step() {
        const auto& s = samplers_[state_];
        std::uint64_t x = rng_();
        while (x < s.reject_below) x = rng_();
        const std::uint64_t draw = x % s.denominator;
        std::size_t k = 0;
        while (draw >= s.cumulative[k]) ++k;
        state_ = s.targets[k];
        return state_;
    }

private:
    std::vector<RowSampler> samplers_;
    std::mt19937_64 rng_;
    std::size_t state_;
};

}  // namespace

EmpiricalDistribution run(const TransitionKernel& kernel, const SimConfig& config) {
    config.validate();
    Walker walker(kernel, config.seed, config.initial_state);
    EmpiricalDistribution out{kernel.states(), std::vector<std::uint64_t>(kernel.size(), 0), 0};
    for (std::uint64_t i = 0; i < config.burn_in; ++i) walker.step();
    for (std::uint64_t i = config.burn_in; i < config.steps; ++i) {
        ++out.counts[walker.step()];
        ++out.total;
    }
    return out;
}

std::vector<std::size_t> sample_path(const TransitionKernel& kernel, std::uint64_t seed, std::uint64_t steps,
                                     std::size_t initial_state) {
    Walker walker(kernel, seed, initial_state);
    std::vector<std::size_t> path;
    path.reserve(steps);
    for (std::uint64_t i = 0; i < steps; ++i) path.push_back(walker.step());
    return path;
}

Rational tv_distance(const Distribution& a, const Distribution& b) {
    if (!(a.states() == b.states())) throw ValidationError("total variation distance needs a shared state space");
    Rational sum(0);
    for (std::size_t i = 0; i < a.size(); ++i) sum += abs(a[i] - b[i]);
    return sum / 2;
}

}  // namespace dasep
