#pragma once

#include "wstar/report.hpp"
#include "wstar/sampler.hpp"

namespace wstar {

/// Freeness of the left multiplication action of the unitary groupoid on M.
///
/// For sampled x and admissible u1 != u2 (u_i* u_i = l(x)) the products u1 x, u2 x must
/// differ by at least sigma_min(x) ||u1 - u2||, and every orbit must meet the positive
/// cone exactly at |x|. Extra fields: violations, attempts.
Report free_action_check(const Shape& s, std::size_t attempts, Sampler& smp,
                         const Tolerance& tol = {}, double threshold = 1e-8);

}  // namespace wstar
