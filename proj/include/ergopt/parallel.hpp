#pragma once

namespace ergopt {

/// Worker count for the OpenMP kernels. Honors ERGOPT_THREADS when set to a
/// positive integer, otherwise the OpenMP default.
int worker_count();

}  // namespace ergopt
