#pragma once

namespace ccb {

/// Upper bound on worker threads used by internal fan-out. Results are
/// merged in deterministic order, so outputs do not depend on this value.
void set_thread_budget(unsigned n);
unsigned thread_budget();

} // namespace ccb
