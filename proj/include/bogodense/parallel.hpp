#pragma once

namespace bogodense::parallel {

// Number of threads OpenMP regions in this library may use (1 without OpenMP).
int thread_limit() noexcept;

void set_thread_limit(int n) noexcept;

// Applies BOGODENSE_THREADS when it holds a positive integer; returns the
// resulting limit.
int configure_from_env();

}  // namespace bogodense::parallel
