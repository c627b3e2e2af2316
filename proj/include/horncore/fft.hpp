#pragma once

#include <algorithm>
#include <complex>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "horncore/common.hpp"

namespace horncore {

/// In-place 2-D discrete Fourier transform of a row-major H x W complex
/// buffer (row transforms, then column transforms). The inverse carries the
/// 1/(H*W) normalization.
template <typename S>
void fft2d(std::vector<std::complex<S>>& a, Index h, Index w, bool inverse) {
  require(static_cast<Index>(a.size()) == h * w, "fft2d: buffer size mismatch");
  Eigen::FFT<S> fft;
  std::vector<std::complex<S>> src(static_cast<std::size_t>(std::max(h, w)));
  std::vector<std::complex<S>> dst(src.size());

  for (Index i = 0; i < h; ++i) {
    src.assign(a.begin() + i * w, a.begin() + (i + 1) * w);
    dst.resize(static_cast<std::size_t>(w));
    if (inverse)
      fft.inv(dst, src);
    else
      fft.fwd(dst, src);
    std::copy(dst.begin(), dst.end(), a.begin() + i * w);
  }
  for (Index j = 0; j < w; ++j) {
    src.resize(static_cast<std::size_t>(h));
    for (Index i = 0; i < h; ++i) src[static_cast<std::size_t>(i)] = a[i * w + j];
    dst.resize(static_cast<std::size_t>(h));
    if (inverse)
      fft.inv(dst, src);
    else
      fft.fwd(dst, src);
    for (Index i = 0; i < h; ++i) a[i * w + j] = dst[static_cast<std::size_t>(i)];
  }
}

}  // namespace horncore
