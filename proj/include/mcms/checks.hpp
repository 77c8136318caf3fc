#pragma once

#include "mcms/cluster.hpp"
#include "mcms/group.hpp"
#include "mcms/superspace.hpp"

#include <vector>

namespace mcms {

/// The full named identity suite: group structure, orbits, cluster symmetry,
/// the signed-permutation representation and every projector identity.
/// Stops after a failing construction step whose result later checks need.
std::vector<CheckResult> verify_suite(const IcosaGroup& group, const Cluster& cluster);

/// First failing check, or nullptr.
const CheckResult* first_failure(const std::vector<CheckResult>& results);

}  // namespace mcms
