#pragma once

#include <cstddef>
#include <cstdint>

#include "mcsched/ga.hpp"
#include "mcsched/model.hpp"

namespace mcsched {

// Best of `budget` uniformly random chromosomes, drawn with replacement from
// one stream seeded with `seed`; a larger budget extends the same stream.
// `trace` records the running best after each sample.
GaResult random_search(const WorkloadInstance& instance, std::size_t budget, std::uint64_t seed,
                       unsigned threads = 1);

// Each task on its fastest cloud, lowest index on ties. Ignores precedence.
Chromosome greedy_min_etc(const WorkloadInstance& instance);

}  // namespace mcsched
