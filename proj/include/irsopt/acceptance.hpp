// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <ostream>

namespace irsopt {

/// Runs the release-gate property and replication checks, printing one
/// pass/fail line per criterion. Returns the number of failed criteria.
int run_acceptance(std::ostream& os);

}  // namespace irsopt
