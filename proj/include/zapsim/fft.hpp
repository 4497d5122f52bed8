#ifndef ZAPSIM_FFT_HPP
#define ZAPSIM_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>

namespace zapsim::fft
{

enum class Sign
{
    Negative, // sum_j x_j exp(-2 pi i jk/n)
    Positive, // sum_j x_j exp(+2 pi i jk/n)
};

// Unnormalized in-place DFT of length data.size(). Plans are cached per
// (length, sign) and shared between threads; execution is reentrant.
void transform(std::span<std::complex<double>> data, Sign sign);

} // namespace zapsim::fft

#endif // ZAPSIM_FFT_HPP
