#pragma once

namespace mvf {

// Batch kernels come in two flavours: an OpenMP-parallel one and a
// plain serial reference. Results are identical by contract; tests
// compare them and the bench target times them.
enum class ExecMode { serial, parallel };

}  // namespace mvf
