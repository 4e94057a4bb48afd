#pragma once

namespace inls::parallel {

/// Name of the environment variable that caps internal parallelism.
inline constexpr const char* kThreadsEnv = "INLS_NUM_THREADS";

/// Thread count from INLS_NUM_THREADS, else the machine's parallelism.
int thread_count();

/// Applies thread_count() to OpenMP and the FFT backend. Idempotent.
void configure_threads();

}  // namespace inls::parallel
