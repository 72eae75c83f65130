#pragma once

#include <span>
#include <vector>

#include "geoflow/spectral.hpp"

namespace geoflow::detail {

/// out_n = (1/N) sum_j in_j exp(-2 pi i j n / N), FFT order.
void forward_dft(std::span<const double> in, std::span<Complex> out);
std::vector<Complex> forward_dft(std::span<const double> in);

/// out_j = sum_n in_n exp(2 pi i j n / N), no scaling.
void inverse_dft(std::span<const Complex> in, std::span<Complex> out);
/// Real part of the unscaled inverse transform.
std::vector<double> inverse_dft_real(std::span<const Complex> in);

}  // namespace geoflow::detail
