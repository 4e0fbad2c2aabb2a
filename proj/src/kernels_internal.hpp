#pragma once

#include "ortho_approx/kernels.hpp"

namespace oapx::kernels::detail {

#if defined(OAPX_HAVE_AVX2)
const KernelSet& avx2_set() noexcept;
#endif
#if defined(OAPX_HAVE_NEON)
const KernelSet& neon_set() noexcept;
#endif

}  // namespace oapx::kernels::detail
