#pragma once

namespace affkm {

/// Execution policy for the data-parallel kernels. Every kernel ships a
/// serial reference path; results are identical regardless of policy.
enum class Exec { serial, parallel };

/// Default policy: parallel when compiled with OpenMP, serial otherwise.
Exec default_exec();

int exec_threads();

} // namespace affkm
