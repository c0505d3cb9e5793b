#pragma once

#include "dasep/kernels.hpp"
#include "dasep/linalg.hpp"

#include <cstdint>
#include <vector>

namespace dasep {

/// Trajectory settings. The chain starts at `initial_state` (an index into
/// the kernel's state space) and occupancy is counted after `burn_in` steps.
struct SimConfig {
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
    std::uint64_t burn_in = 0;
    std::size_t initial_state = 0;

    /// Throws ValidationError unless steps > burn_in.
    void validate() const;
};

/// Occupancy counts over post-burn-in steps.
struct EmpiricalDistribution {
    StateSpace states;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    /// counts / total as an exact distribution.
    Distribution to_distribution() const;
};

/// Sampling scheme (reproducible in any language):
///   PRNG: std::mt19937_64 seeded with `seed` (the standard-specified
///   MT19937-64 with default seeding).
///   Each step from row r: let D be the lcm of the denominators of row r
///   (diagonal included); draw x until x >= (2^64 mod D), take x mod D, and
///   walk the integer weights p*D in increasing column order.
///   Before any counting the chain runs `burn_in` steps; a step's state is the
///   state after the move.
EmpiricalDistribution run(const TransitionKernel& kernel, const SimConfig& config);

/// The first `steps` states visited after `initial_state`, same sampler.
std::vector<std::size_t> sample_path(const TransitionKernel& kernel, std::uint64_t seed, std::uint64_t steps,
                                     std::size_t initial_state = 0);

/// (1/2) * sum |a - b|. Both distributions must share one state space.
Rational tv_distance(const Distribution& a, const Distribution& b);

}  // namespace dasep
