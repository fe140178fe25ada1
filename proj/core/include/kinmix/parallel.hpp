#pragma once

namespace kinmix {

/// Worker thread count: KINMIX_THREADS if set and positive, otherwise the
/// OpenMP default (1 without OpenMP). Read once per process.
int worker_threads() noexcept;

}  // namespace kinmix
