#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "horncore/tensor.hpp"

namespace horncore {

enum class Padding { kZero, kCircular };

/// Thread-local multiply-accumulate counter. Forward operators report their
/// MAC cost here while a scope is active; one MAC is one reported FLOP,
/// matching the convention of the analytic cost model. Scalar rescaling and
/// bias additions are not counted.
class MacCounter {
 public:
  static void begin() {
    active() = true;
    count() = 0;
  }

  static std::uint64_t end() {
    active() = false;
    return count();
  }

  static void add(std::uint64_t n) {
    if (active()) count() += n;
  }

  static bool is_active() { return active(); }

 private:
  static bool& active() {
    thread_local bool a = false;
    return a;
  }
  static std::uint64_t& count() {
    thread_local std::uint64_t c = 0;
    return c;
  }
};

// ---------------------------------------------------------------------------
// channel mixing

/// y[n, co] = sum_ci x[n, ci] * w[ci, co] (+ b[co]).
template <typename S>
Tensor<S> linear(const Tensor<S>& x, const Tensor<S>& w, const Tensor<S>* b = nullptr) {
  require_shape(x.rank() == 2 && w.rank() == 2, "linear expects rank-2 input and weight");
  const Index n = x.dim(0), cin = x.dim(1), cout = w.dim(1);
  require_shape(w.dim(0) == cin, "linear: inner dimensions disagree");
  if (b != nullptr) require_shape(b->rank() == 1 && b->dim(0) == cout, "linear: bias length mismatch");

  Tensor<S> y({n, cout});
  as_matrix(y, n, cout).noalias() = as_matrix(x, n, cin) * as_matrix(w, cin, cout);
  if (b != nullptr) as_matrix(y, n, cout).rowwise() += as_matrix(*b, 1, cout).row(0);
  MacCounter::add(static_cast<std::uint64_t>(n) * cin * cout);
  return y;
}

/// Per-position channel mixing of a BCHW map: y_b = w^T x_b for each batch
/// element, with x_b viewed as a Cin x (H*W) matrix.
template <typename S>
Tensor<S> channel_linear(const Tensor<S>& x, const Tensor<S>& w, const Tensor<S>* b = nullptr) {
  require_shape(x.rank() == 4 && w.rank() == 2, "channel_linear expects BCHW input");
  const Index bs = x.dim(0), cin = x.dim(1), h = x.dim(2), wd = x.dim(3);
  require_shape(w.dim(0) == cin, "channel_linear: weight rows must equal input channels");
  const Index cout = w.dim(1);
  if (b != nullptr) require_shape(b->rank() == 1 && b->dim(0) == cout, "channel_linear: bias length mismatch");

  Tensor<S> y({bs, cout, h, wd});
  for (Index i = 0; i < bs; ++i) {
    batch_matrix(y, i).noalias() = as_matrix(w, cin, cout).transpose() * batch_matrix(x, i);
    if (b != nullptr) batch_matrix(y, i).colwise() += as_matrix(*b, cout, 1).col(0);
  }
  MacCounter::add(static_cast<std::uint64_t>(bs) * h * wd * cin * cout);
  return y;
}

// ---------------------------------------------------------------------------
// pointwise

template <typename S>
Tensor<S> elementwise_mul(const Tensor<S>& a, const Tensor<S>& b) {
  require_shape(a.same_shape(b), "elementwise_mul: shapes differ");
  Tensor<S> c(a.shape());
  c.array() = a.array() * b.array();
  MacCounter::add(static_cast<std::uint64_t>(a.size()));
  return c;
}

template <typename S>
Tensor<S> add(const Tensor<S>& a, const Tensor<S>& b) {
  require_shape(a.same_shape(b), "add: shapes differ");
  Tensor<S> c(a.shape());
  c.array() = a.array() + b.array();
  return c;
}

template <typename S>
Tensor<S> sub(const Tensor<S>& a, const Tensor<S>& b) {
  require_shape(a.same_shape(b), "sub: shapes differ");
  Tensor<S> c(a.shape());
  c.array() = a.array() - b.array();
  return c;
}

template <typename S>
Tensor<S> scale(const Tensor<S>& a, S s) {
  Tensor<S> c(a.shape());
  c.array() = a.array() * s;
  return c;
}

template <typename S>
S gelu_value(S x) {
  return S(0.5) * x * (S(1) + std::erf(x * S(0.70710678118654752440)));
}

template <typename S>
S gelu_grad_value(S x) {
  const S cdf = S(0.5) * (S(1) + std::erf(x * S(0.70710678118654752440)));
  const S pdf = S(0.39894228040143267794) * std::exp(S(-0.5) * x * x);
  return cdf + x * pdf;
}

template <typename S>
Tensor<S> gelu(const Tensor<S>& x) {
  Tensor<S> y(x.shape());
  for (Index i = 0; i < x.size(); ++i) y[i] = gelu_value(x[i]);
  return y;
}

template <typename S>
Tensor<S> sigmoid(const Tensor<S>& x) {
  Tensor<S> y(x.shape());
  for (Index i = 0; i < x.size(); ++i) y[i] = S(1) / (S(1) + std::exp(-x[i]));
  return y;
}

template <typename S>
Tensor<S> tanh_op(const Tensor<S>& x) {
  Tensor<S> y(x.shape());
  y.array() = x.array().tanh();
  return y;
}

// ---------------------------------------------------------------------------
// normalization

/// Layer normalization over the channel axis (axis 1) for BCHW maps or (N, C)
/// token matrices: each channel vector is shifted to mean 0 and scaled to unit
/// variance before the affine transform.
template <typename S>
Tensor<S> layer_norm(const Tensor<S>& x, const Tensor<S>& gamma, const Tensor<S>& beta, S eps) {
  require_shape(x.rank() == 2 || x.rank() == 4, "layer_norm expects rank-2 or rank-4 input");
  const Index c = x.dim(1);
  require_shape(gamma.rank() == 1 && gamma.dim(0) == c && beta.rank() == 1 && beta.dim(0) == c,
                "layer_norm: affine parameter length must equal channel count");
  Tensor<S> y(x.shape());
  if (x.rank() == 2) {
    const Index n = x.dim(0);
    auto xm = as_matrix(x, n, c);
    auto ym = as_matrix(y, n, c);
    for (Index i = 0; i < n; ++i) {
      const S mu = xm.row(i).mean();
      const S var = (xm.row(i).array() - mu).square().mean();
      const S inv = S(1) / std::sqrt(var + eps);
      ym.row(i).array() =
          (xm.row(i).array() - mu) * inv * as_matrix(gamma, 1, c).row(0).array() + as_matrix(beta, 1, c).row(0).array();
    }
  } else {
    const Index b = x.dim(0), hw = x.dim(2) * x.dim(3);
    for (Index i = 0; i < b; ++i) {
      auto xm = batch_matrix(x, i);  // C x HW, one column per spatial position
      auto ym = batch_matrix(y, i);
      for (Index p = 0; p < hw; ++p) {
        const S mu = xm.col(p).mean();
        const S var = (xm.col(p).array() - mu).square().mean();
        const S inv = S(1) / std::sqrt(var + eps);
        ym.col(p).array() =
            (xm.col(p).array() - mu) * inv * as_matrix(gamma, c, 1).col(0).array() + as_matrix(beta, c, 1).col(0).array();
      }
    }
  }
  return y;
}

// ---------------------------------------------------------------------------
// shape ops

/// Contiguous channel slices of a BCHW map, in order. Concatenating the
/// outputs reproduces the input bit-exactly.
template <typename S>
std::vector<Tensor<S>> channel_split(const Tensor<S>& x, const std::vector<Index>& widths) {
  require_shape(x.rank() == 4, "channel_split expects BCHW input");
  Index total = 0;
  for (Index w : widths) {
    require_shape(w >= 1, "channel_split: widths must be positive");
    total += w;
  }
  require_shape(total == x.dim(1), "channel_split: widths must sum to the channel count");

  const Index b = x.dim(0), h = x.dim(2), wd = x.dim(3), hw = h * wd;
  std::vector<Tensor<S>> out;
  out.reserve(widths.size());
  Index start = 0;
  for (Index w : widths) {
    Tensor<S> part({b, w, h, wd});
    for (Index i = 0; i < b; ++i)
      batch_matrix(part, i) = batch_matrix(x, i).middleRows(start, w);
    (void)hw;
    out.push_back(std::move(part));
    start += w;
  }
  return out;
}

template <typename S>
Tensor<S> channel_concat(const std::vector<const Tensor<S>*>& parts) {
  require_shape(!parts.empty(), "channel_concat: no inputs");
  const Index b = parts[0]->dim(0), h = parts[0]->dim(2), w = parts[0]->dim(3);
  Index c = 0;
  for (const Tensor<S>* p : parts) {
    require_shape(p->rank() == 4 && p->dim(0) == b && p->dim(2) == h && p->dim(3) == w,
                  "channel_concat: batch/spatial dims differ");
    c += p->dim(1);
  }
  Tensor<S> out({b, c, h, w});
  for (Index i = 0; i < b; ++i) {
    Index start = 0;
    for (const Tensor<S>* p : parts) {
      batch_matrix(out, i).middleRows(start, p->dim(1)) = batch_matrix(*p, i);
      start += p->dim(1);
    }
  }
  return out;
}

template <typename S>
Tensor<S> channel_concat(const std::vector<Tensor<S>>& parts) {
  std::vector<const Tensor<S>*> ptrs;
  ptrs.reserve(parts.size());
  for (const Tensor<S>& p : parts) ptrs.push_back(&p);
  return channel_concat(ptrs);
}

/// Mean over the spatial axes: BCHW -> (B, C).
template <typename S>
Tensor<S> global_avg_pool(const Tensor<S>& x) {
  require_shape(x.rank() == 4, "global_avg_pool expects BCHW input");
  const Index b = x.dim(0), c = x.dim(1), hw = x.dim(2) * x.dim(3);
  Tensor<S> y({b, c});
  for (Index i = 0; i < b; ++i)
    as_matrix(y, b, c).row(i) = batch_matrix(x, i).rowwise().mean().transpose();
  (void)hw;
  return y;
}

/// Per-channel scaling of a BCHW map by a length-C vector (LayerScale).
template <typename S>
Tensor<S> channel_scale(const Tensor<S>& x, const Tensor<S>& gamma) {
  require_shape(x.rank() == 4 && gamma.rank() == 1 && gamma.dim(0) == x.dim(1),
                "channel_scale: gamma length must equal channel count");
  Tensor<S> y(x.shape());
  for (Index i = 0; i < x.dim(0); ++i)
    batch_matrix(y, i) = batch_matrix(x, i).array().colwise() * as_matrix(gamma, x.dim(1), 1).col(0).array();
  MacCounter::add(static_cast<std::uint64_t>(x.size()));
  return y;
}

/// Row-wise softmax of a rank-2 tensor.
template <typename S>
Tensor<S> softmax_rows(const Tensor<S>& x) {
  require_shape(x.rank() == 2, "softmax_rows expects rank-2 input");
  const Index n = x.dim(0), c = x.dim(1);
  Tensor<S> y(x.shape());
  auto xm = as_matrix(x, n, c);
  auto ym = as_matrix(y, n, c);
  for (Index i = 0; i < n; ++i) {
    const S m = xm.row(i).maxCoeff();
    ym.row(i).array() = (xm.row(i).array() - m).exp();
    ym.row(i) /= ym.row(i).sum();
  }
  return y;
}

// ---------------------------------------------------------------------------
// dense convolution (stem / downsample / lateral projections)

/// Standard convolution with zero padding `pad` and stride `stride`.
/// w has shape [Cout, Cin, K, K].
template <typename S>
Tensor<S> conv2d(const Tensor<S>& x, const Tensor<S>& w, const Tensor<S>* b, Index stride, Index pad) {
  require_shape(x.rank() == 4 && w.rank() == 4, "conv2d expects BCHW input and OIKK weight");
  const Index bs = x.dim(0), cin = x.dim(1), h = x.dim(2), wd = x.dim(3);
  const Index cout = w.dim(0), kh = w.dim(2), kw = w.dim(3);
  require_shape(w.dim(1) == cin, "conv2d: weight input channels mismatch");
  require_shape(stride >= 1, "conv2d: stride must be positive");
  const Index ho = (h + 2 * pad - kh) / stride + 1;
  const Index wo = (wd + 2 * pad - kw) / stride + 1;
  require_shape(ho >= 1 && wo >= 1, "conv2d: kernel larger than padded input");
  if (b != nullptr) require_shape(b->rank() == 1 && b->dim(0) == cout, "conv2d: bias length mismatch");

  Tensor<S> y({bs, cout, ho, wo});
  for (Index n = 0; n < bs; ++n)
    for (Index o = 0; o < cout; ++o)
      for (Index i = 0; i < ho; ++i)
        for (Index j = 0; j < wo; ++j) {
          S acc = b != nullptr ? (*b)[o] : S(0);
          for (Index ci = 0; ci < cin; ++ci)
            for (Index u = 0; u < kh; ++u) {
              const Index hi = i * stride + u - pad;
              if (hi < 0 || hi >= h) continue;
              for (Index v = 0; v < kw; ++v) {
                const Index wi = j * stride + v - pad;
                if (wi < 0 || wi >= wd) continue;
                acc += w.at(o, ci, u, v) * x.at(n, ci, hi, wi);
              }
            }
          y.at(n, o, i, j) = acc;
        }
  MacCounter::add(static_cast<std::uint64_t>(bs) * ho * wo * cout * cin * kh * kw);
  return y;
}

// ---------------------------------------------------------------------------
// spatial utilities

template <typename S>
Tensor<S> cyclic_shift(const Tensor<S>& x, Index dy, Index dx) {
  require_shape(x.rank() == 4, "cyclic_shift expects BCHW input");
  const Index b = x.dim(0), c = x.dim(1), h = x.dim(2), w = x.dim(3);
  Tensor<S> y(x.shape());
  const Index sy = ((dy % h) + h) % h;
  const Index sx = ((dx % w) + w) % w;
  for (Index n = 0; n < b; ++n)
    for (Index ci = 0; ci < c; ++ci)
      for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) y.at(n, ci, (i + sy) % h, (j + sx) % w) = x.at(n, ci, i, j);
  return y;
}

template <typename S>
Tensor<S> upsample_nearest2x(const Tensor<S>& x) {
  require_shape(x.rank() == 4, "upsample_nearest2x expects BCHW input");
  const Index b = x.dim(0), c = x.dim(1), h = x.dim(2), w = x.dim(3);
  Tensor<S> y({b, c, 2 * h, 2 * w});
  for (Index n = 0; n < b; ++n)
    for (Index ci = 0; ci < c; ++ci)
      for (Index i = 0; i < h; ++i)
        for (Index j = 0; j < w; ++j) {
          const S v = x.at(n, ci, i, j);
          y.at(n, ci, 2 * i, 2 * j) = v;
          y.at(n, ci, 2 * i, 2 * j + 1) = v;
          y.at(n, ci, 2 * i + 1, 2 * j) = v;
          y.at(n, ci, 2 * i + 1, 2 * j + 1) = v;
        }
  return y;
}

}  // namespace horncore
