// Execution policy for the data-parallel kernels.
//
// Every parallel kernel keeps a serial reference path selected with
// Exec::Serial. The parallel path uses OpenMP when the library was built with
// it and otherwise falls back to the serial loop.
#pragma once

namespace advwave {

enum class Exec { Serial, Parallel };

/// Thread count used by Exec::Parallel kernels. Honours ADVWAVE_THREADS when
/// set to a positive integer, else the OpenMP default. 1 without OpenMP.
int parallel_threads();

/// True when the library was compiled with OpenMP.
bool openmp_enabled();

}  // namespace advwave
