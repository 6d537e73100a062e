#pragma once

// Inference-only forward pass with a fixed per-output accumulation order.
//
// Every pre-activation is b_j followed by one fused multiply-add per input in
// ascending input order, whichever code path handles the column. A point
// therefore gets bit-identical outputs whether it is evaluated alone, inside
// a large batch or next to a duplicate of itself, which the Eigen product
// kernels used during training do not promise.
//
// Vectors run across the outputs of a layer. Layer widths are padded to the
// vector length with zero weights and biases, so padded activations are
// exactly zero and never change a sum.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#if defined(__AVX512F__) || (defined(__AVX2__) && defined(__FMA__))
#include <immintrin.h>
#endif

#include "ftpinn/pinn/mlp.hpp"

namespace ftpinn::pinn::detail {

#if defined(__AVX512F__)

template <typename T>
struct Lanes;

template <>
struct Lanes<double> {
    using V = __m512d;
    static constexpr int kWidth = 8;
    static V load(const double* p) { return _mm512_loadu_pd(p); }
    static void store(double* p, V v) { _mm512_storeu_pd(p, v); }
    static V broadcast(double x) { return _mm512_set1_pd(x); }
    static V fma(V a, V b, V c) { return _mm512_fmadd_pd(a, b, c); }
    static V relu(V v) { return _mm512_max_pd(v, _mm512_setzero_pd()); }
};

template <>
struct Lanes<float> {
    using V = __m512;
    static constexpr int kWidth = 16;
    static V load(const float* p) { return _mm512_loadu_ps(p); }
    static void store(float* p, V v) { _mm512_storeu_ps(p, v); }
    static V broadcast(float x) { return _mm512_set1_ps(x); }
    static V fma(V a, V b, V c) { return _mm512_fmadd_ps(a, b, c); }
    static V relu(V v) { return _mm512_max_ps(v, _mm512_setzero_ps()); }
};

#elif defined(__AVX2__) && defined(__FMA__)

template <typename T>
struct Lanes;

template <>
struct Lanes<double> {
    using V = __m256d;
    static constexpr int kWidth = 4;
    static V load(const double* p) { return _mm256_loadu_pd(p); }
    static void store(double* p, V v) { _mm256_storeu_pd(p, v); }
    static V broadcast(double x) { return _mm256_set1_pd(x); }
    static V fma(V a, V b, V c) { return _mm256_fmadd_pd(a, b, c); }
    static V relu(V v) { return _mm256_max_pd(v, _mm256_setzero_pd()); }
};

template <>
struct Lanes<float> {
    using V = __m256;
    static constexpr int kWidth = 8;
    static V load(const float* p) { return _mm256_loadu_ps(p); }
    static void store(float* p, V v) { _mm256_storeu_ps(p, v); }
    static V broadcast(float x) { return _mm256_set1_ps(x); }
    static V fma(V a, V b, V c) { return _mm256_fmadd_ps(a, b, c); }
    static V relu(V v) { return _mm256_max_ps(v, _mm256_setzero_ps()); }
};

#else

/// Portable fallback with the same lane-wise arithmetic.
template <typename T>
struct Lanes {
    static constexpr int kWidth = 4;
    using V = std::array<T, kWidth>;
    static V load(const T* p) {
        V v;
        std::copy(p, p + kWidth, v.begin());
        return v;
    }
    static void store(T* p, const V& v) { std::copy(v.begin(), v.end(), p); }
    static V broadcast(T x) {
        V v;
        v.fill(x);
        return v;
    }
    static V fma(const V& a, const V& b, const V& c) {
        V out;
        for (int k = 0; k < kWidth; ++k) {
            out[k] = std::fma(a[k], b[k], c[k]);
        }
        return out;
    }
    static V relu(const V& v) {
        V out;
        for (int k = 0; k < kWidth; ++k) {
            out[k] = v[k] > T(0) ? v[k] : T(0);
        }
        return out;
    }
};

#endif

/// Weights of one layer stored row-major as [fan_in][padded fan_out].
template <typename T>
struct PackedLayer {
    int fan_in = 0;
    int fan_out = 0;
    /// fan_out rounded up to the vector width.
    int padded_out = 0;
    std::vector<T> weights;
    std::vector<T> bias;
};

inline int round_up(int n, int multiple) {
    return (n + multiple - 1) / multiple * multiple;
}

template <typename T>
std::vector<PackedLayer<T>> pack_network(const Network<double>& net) {
    constexpr int kWidth = Lanes<T>::kWidth;
    std::vector<PackedLayer<T>> out;
    int previous_padded = 0;
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        const auto& w = net.weights[l];
        PackedLayer<T> layer;
        layer.fan_out = static_cast<int>(w.cols());
        layer.padded_out = round_up(layer.fan_out, kWidth);
        // Inputs of hidden layers include the previous layer's padding.
        layer.fan_in = l == 0 ? static_cast<int>(w.rows()) : previous_padded;
        layer.weights.assign(static_cast<std::size_t>(layer.fan_in) * layer.padded_out, T(0));
        layer.bias.assign(static_cast<std::size_t>(layer.padded_out), T(0));
        for (Eigen::Index i = 0; i < w.rows(); ++i) {
            for (Eigen::Index j = 0; j < w.cols(); ++j) {
                layer.weights[static_cast<std::size_t>(i) * layer.padded_out + j] = static_cast<T>(w(i, j));
            }
        }
        for (int j = 0; j < layer.fan_out; ++j) {
            layer.bias[static_cast<std::size_t>(j)] = static_cast<T>(net.biases[l](j));
        }
        previous_padded = layer.padded_out;
        out.push_back(std::move(layer));
    }
    return out;
}

/// Activations are stored one column after another, x[c * ld_in + i]. Each
/// kernel below produces a tile of columns by output vectors and keeps its
/// accumulators in named variables, which the compiler holds in registers
/// (arrays of vectors end up spilled to the stack on every iteration).
template <typename T>
struct Tile {
    using L = Lanes<T>;
    using V = typename L::V;

    const PackedLayer<T>& layer;
    const T* x;
    int ld_in;
    T* y;
    int ld_out;
    bool relu;

    const T* weights(int i, int j0) const {
        return layer.weights.data() + static_cast<std::size_t>(i) * layer.padded_out + j0;
    }
    const T* column(int c) const { return x + static_cast<std::size_t>(c) * ld_in; }
    V bias(int j0) const { return L::load(layer.bias.data() + j0); }
    void put(int c, int j0, V v) const {
        L::store(y + static_cast<std::size_t>(c) * ld_out + j0, relu ? L::relu(v) : v);
    }

    /// Four columns, two output vectors.
    void four_by_two(int c0, int j0) const {
        const V b0 = bias(j0);
        const V b1 = bias(j0 + L::kWidth);
        V a00 = b0, a01 = b1, a10 = b0, a11 = b1, a20 = b0, a21 = b1, a30 = b0, a31 = b1;
        const T* x0 = column(c0);
        const T* x1 = column(c0 + 1);
        const T* x2 = column(c0 + 2);
        const T* x3 = column(c0 + 3);
        for (int i = 0; i < layer.fan_in; ++i) {
            const T* w = weights(i, j0);
            const V w0 = L::load(w);
            const V w1 = L::load(w + L::kWidth);
            V xb = L::broadcast(x0[i]);
            a00 = L::fma(w0, xb, a00);
            a01 = L::fma(w1, xb, a01);
            xb = L::broadcast(x1[i]);
            a10 = L::fma(w0, xb, a10);
            a11 = L::fma(w1, xb, a11);
            xb = L::broadcast(x2[i]);
            a20 = L::fma(w0, xb, a20);
            a21 = L::fma(w1, xb, a21);
            xb = L::broadcast(x3[i]);
            a30 = L::fma(w0, xb, a30);
            a31 = L::fma(w1, xb, a31);
        }
        put(c0, j0, a00);
        put(c0, j0 + L::kWidth, a01);
        put(c0 + 1, j0, a10);
        put(c0 + 1, j0 + L::kWidth, a11);
        put(c0 + 2, j0, a20);
        put(c0 + 2, j0 + L::kWidth, a21);
        put(c0 + 3, j0, a30);
        put(c0 + 3, j0 + L::kWidth, a31);
    }

    /// Four columns, one output vector.
    void four_by_one(int c0, int j0) const {
        const V b0 = bias(j0);
        V a0 = b0, a1 = b0, a2 = b0, a3 = b0;
        const T* x0 = column(c0);
        const T* x1 = column(c0 + 1);
        const T* x2 = column(c0 + 2);
        const T* x3 = column(c0 + 3);
        for (int i = 0; i < layer.fan_in; ++i) {
            const V w0 = L::load(weights(i, j0));
            a0 = L::fma(w0, L::broadcast(x0[i]), a0);
            a1 = L::fma(w0, L::broadcast(x1[i]), a1);
            a2 = L::fma(w0, L::broadcast(x2[i]), a2);
            a3 = L::fma(w0, L::broadcast(x3[i]), a3);
        }
        put(c0, j0, a0);
        put(c0 + 1, j0, a1);
        put(c0 + 2, j0, a2);
        put(c0 + 3, j0, a3);
    }

    /// One column, eight output vectors in flight to hide the latency.
    void one_by_eight(int c, int j0) const {
        constexpr int k = L::kWidth;
        V a0 = bias(j0), a1 = bias(j0 + k), a2 = bias(j0 + 2 * k), a3 = bias(j0 + 3 * k);
        V a4 = bias(j0 + 4 * k), a5 = bias(j0 + 5 * k), a6 = bias(j0 + 6 * k), a7 = bias(j0 + 7 * k);
        const T* xc = column(c);
        for (int i = 0; i < layer.fan_in; ++i) {
            const T* w = weights(i, j0);
            const V xb = L::broadcast(xc[i]);
            a0 = L::fma(L::load(w), xb, a0);
            a1 = L::fma(L::load(w + k), xb, a1);
            a2 = L::fma(L::load(w + 2 * k), xb, a2);
            a3 = L::fma(L::load(w + 3 * k), xb, a3);
            a4 = L::fma(L::load(w + 4 * k), xb, a4);
            a5 = L::fma(L::load(w + 5 * k), xb, a5);
            a6 = L::fma(L::load(w + 6 * k), xb, a6);
            a7 = L::fma(L::load(w + 7 * k), xb, a7);
        }
        put(c, j0, a0);
        put(c, j0 + k, a1);
        put(c, j0 + 2 * k, a2);
        put(c, j0 + 3 * k, a3);
        put(c, j0 + 4 * k, a4);
        put(c, j0 + 5 * k, a5);
        put(c, j0 + 6 * k, a6);
        put(c, j0 + 7 * k, a7);
    }

    /// One column, one output vector.
    void one_by_one(int c, int j0) const {
        V a0 = bias(j0);
        const T* xc = column(c);
        for (int i = 0; i < layer.fan_in; ++i) {
            a0 = L::fma(L::load(weights(i, j0)), L::broadcast(xc[i]), a0);
        }
        put(c, j0, a0);
    }
};

/// Applies one layer to `cols` columns. Every tile shape performs the same
/// lane-wise operations, so the choice of tile never changes a result.
template <typename T>
void dense_layer(const PackedLayer<T>& layer, const T* x, int ld_in, T* y, int ld_out, int cols, bool relu) {
    constexpr int kWidth = Lanes<T>::kWidth;
    const Tile<T> tile{layer, x, ld_in, y, ld_out, relu};
    int c0 = 0;
    for (; c0 + 4 <= cols; c0 += 4) {
        int j0 = 0;
        for (; j0 + 2 * kWidth <= layer.padded_out; j0 += 2 * kWidth) {
            tile.four_by_two(c0, j0);
        }
        for (; j0 < layer.padded_out; j0 += kWidth) {
            tile.four_by_one(c0, j0);
        }
    }
    for (; c0 < cols; ++c0) {
        int j0 = 0;
        for (; j0 + 8 * kWidth <= layer.padded_out; j0 += 8 * kWidth) {
            tile.one_by_eight(c0, j0);
        }
        for (; j0 < layer.padded_out; j0 += kWidth) {
            tile.one_by_one(c0, j0);
        }
    }
}

/// Sbar and S = 10^-Sbar for every column, evaluated in chunks so the
/// activations stay in cache.
template <typename T>
void dense_forward(const std::vector<PackedLayer<T>>& layers, const PointBatch& batch, double* log_site_fraction,
                   double* site_fraction) {
    constexpr Eigen::Index kChunk = 64;
    const Eigen::Index total = batch.cols();
    const int chunk = static_cast<int>(std::min(kChunk, total));
    int widest = 4;
    for (const auto& layer : layers) {
        widest = std::max(widest, layer.padded_out);
    }
    std::vector<T> a(static_cast<std::size_t>(widest) * chunk);
    std::vector<T> b(a.size());
    const T ln10 = static_cast<T>(kLn10);
    for (Eigen::Index start = 0; start < total; start += chunk) {
        const int cols = static_cast<int>(std::min<Eigen::Index>(chunk, total - start));
        for (int c = 0; c < cols; ++c) {
            for (int r = 0; r < 4; ++r) {
                a[static_cast<std::size_t>(c) * 4 + r] = static_cast<T>(batch(r, start + c));
            }
        }
        T* in = a.data();
        T* out = b.data();
        int ld_in = 4;
        for (std::size_t l = 0; l < layers.size(); ++l) {
            const int ld_out = layers[l].padded_out;
            dense_layer(layers[l], in, ld_in, out, ld_out, cols, l + 1 < layers.size());
            std::swap(in, out);
            ld_in = ld_out;
        }
        for (int c = 0; c < cols; ++c) {
            const T sbar = in[static_cast<std::size_t>(c) * ld_in];
            const auto k = static_cast<std::size_t>(start + c);
            if (log_site_fraction != nullptr) {
                log_site_fraction[k] = static_cast<double>(sbar);
            }
            site_fraction[k] = static_cast<double>(std::exp(-ln10 * sbar));
        }
    }
}

}  // namespace ftpinn::pinn::detail
