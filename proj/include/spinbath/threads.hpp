#pragma once

namespace spinbath {

// Effective worker count: an explicit request wins, then the SPINBATH_THREADS
// environment variable, then the OpenMP default. Always >= 1.
int resolve_threads(int requested = 0);

}  // namespace spinbath
