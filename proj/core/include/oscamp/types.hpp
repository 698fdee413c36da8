// types.hpp — small shared aliases used across the library.
#pragma once

#include <complex>

namespace oscamp {

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};  // the imaginary unit

}  // namespace oscamp
