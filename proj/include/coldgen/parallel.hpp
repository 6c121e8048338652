#pragma once

namespace coldgen {

/// Caps the worker count used by the stencil kernels. 0 restores the
/// runtime default. No-op when built without OpenMP.
void set_thread_count(int n);
int thread_count();

/// Reads COLDGEN_THREADS and applies it; unset or unparsable means auto.
void apply_thread_env();

}  // namespace coldgen
