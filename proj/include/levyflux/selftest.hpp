#pragma once

#include <ostream>

namespace levyflux {

// Runs the acceptance suite, printing one pass/fail line per criterion.
// Returns the number of failed criteria.
int run_acceptance(std::ostream& out);

} // namespace levyflux
