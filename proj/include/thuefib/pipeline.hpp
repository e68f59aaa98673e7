// Orchestrates the full proof: initial bound, three reduction phases,
// convergent checks, per-n boxes, solving, and certificate assembly.

#pragma once

#include "thuefib/certificate.hpp"

namespace thuefib::pipe {

// Runs the whole pipeline (or the restricted max_n mode) and returns the
// assembled certificate.  Throws on any certification failure, naming the
// failing phase and n.
Certificate run_all(const Config& config);

}  // namespace thuefib::pipe
