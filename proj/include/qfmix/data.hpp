// Copyright 2026 The qfmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dataset ingestion: MNIST IDX files (plain or gzip), class subsets,
// downsampling, model-ready encodings, and a synthetic XOR-style set.

#pragma once

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qfmix/encoding.hpp"
#include "qfmix/error.hpp"

namespace qfmix {

struct DatasetMeta {
    std::size_t source_resolution = 28;
    std::size_t target_resolution = 28;
    std::vector<int> classes;  // original digit of each class index
    std::string normalization = "unit-interval";
};

struct Dataset {
    std::vector<std::vector<double>> images;  // row-major, values in [0,1]
    std::vector<std::size_t> labels;
    std::size_t num_classes = 0;
    DatasetMeta meta;

    std::size_t size() const { return images.size(); }
};

/// Model-ready vectors.
struct Samples {
    std::vector<std::vector<double>> x;
    std::vector<std::size_t> y;
    std::size_t num_classes = 0;

    std::size_t size() const { return x.size(); }
};

namespace detail {

inline std::vector<unsigned char> read_maybe_gz(const std::string& path) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw DataFormatError("cannot open '" + path + "'");
    std::vector<unsigned char> out;
    unsigned char buf[1 << 16];
    int got;
    while ((got = gzread(f, buf, sizeof buf)) > 0) out.insert(out.end(), buf, buf + got);
    const bool err = got < 0;
    gzclose(f);
    if (err) throw DataFormatError("read error in '" + path + "'");
    return out;
}

inline std::uint32_t be32(const std::vector<unsigned char>& b, std::size_t off) {
    return std::uint32_t{b[off]} << 24 | std::uint32_t{b[off + 1]} << 16 | std::uint32_t{b[off + 2]} << 8 | b[off + 3];
}

inline std::string hex32(std::uint32_t v) {
    char s[16];
    std::snprintf(s, sizeof s, "0x%08x", v);
    return s;
}

}  // namespace detail

/// Parse an IDX image file (magic 0x00000803) and label file (0x00000801).
inline Dataset load_idx(const std::string& images_path, const std::string& labels_path) {
    const auto im = detail::read_maybe_gz(images_path);
    const auto lb = detail::read_maybe_gz(labels_path);
    if (im.size() < 16) throw DataFormatError("truncated image header in '" + images_path + "'");
    if (lb.size() < 8) throw DataFormatError("truncated label header in '" + labels_path + "'");
    if (auto m = detail::be32(im, 0); m != 0x803)
        throw DataFormatError("bad image magic " + detail::hex32(m) + " in '" + images_path + "' (expected 0x00000803)");
    if (auto m = detail::be32(lb, 0); m != 0x801)
        throw DataFormatError("bad label magic " + detail::hex32(m) + " in '" + labels_path + "' (expected 0x00000801)");
    const std::size_t count = detail::be32(im, 4), rows = detail::be32(im, 8), cols = detail::be32(im, 12);
    const std::size_t nlab = detail::be32(lb, 4);
    if (count != nlab)
        throw DataFormatError("image/label count mismatch: " + std::to_string(count) + " images vs " +
                              std::to_string(nlab) + " labels");
    if (rows != cols) throw DataFormatError("non-square images are not supported");
    const std::size_t px = rows * cols;
    if (im.size() < 16 + count * px) throw DataFormatError("truncated image data in '" + images_path + "'");
    if (lb.size() < 8 + count) throw DataFormatError("truncated label data in '" + labels_path + "'");
    Dataset d;
    d.images.resize(count);
    d.labels.resize(count);
    std::size_t maxlab = 0;
    for (std::size_t i = 0; i < count; ++i) {
        auto& v = d.images[i];
        v.resize(px);
        for (std::size_t j = 0; j < px; ++j) v[j] = im[16 + i * px + j] / 255.0;
        d.labels[i] = lb[8 + i];
        maxlab = std::max(maxlab, d.labels[i]);
    }
    d.num_classes = count ? maxlab + 1 : 0;
    d.meta.source_resolution = d.meta.target_resolution = rows;
    d.meta.classes.resize(d.num_classes);
    std::iota(d.meta.classes.begin(), d.meta.classes.end(), 0);
    return d;
}

/// $QFMIX_DATA_DIR, else ~/.cache/qfmix/mnist.
inline std::string data_dir() {
    if (const char* e = std::getenv("QFMIX_DATA_DIR"); e && *e) return e;
    const char* home = std::getenv("HOME");
    return std::string(home ? home : ".") + "/.cache/qfmix/mnist";
}

namespace detail {

inline std::string find_idx(const std::string& dir, const std::string& base) {
    namespace fs = std::filesystem;
    for (const auto& name : {base, base + ".gz"}) {
        const auto p = fs::path(dir) / name;
        if (fs::exists(p)) return p.string();
    }
    throw DataFormatError("MNIST file '" + base + "' not found in '" + dir + "' (set QFMIX_DATA_DIR)");
}

}  // namespace detail

inline bool mnist_available(const std::string& dir = data_dir()) {
    try {
        for (auto b : {"train-images-idx3-ubyte", "train-labels-idx1-ubyte", "t10k-images-idx3-ubyte",
                       "t10k-labels-idx1-ubyte"})
            detail::find_idx(dir, b);
        return true;
    } catch (const DataFormatError&) {
        return false;
    }
}

/// Standard split: "train" (60k) or "test" (10k).
inline Dataset load_mnist(const std::string& split, const std::string& dir = data_dir()) {
    const std::string pre = split == "train" ? "train" : split == "test" ? "t10k" : "";
    if (pre.empty()) throw std::invalid_argument("split must be train or test");
    return load_idx(detail::find_idx(dir, pre + "-images-idx3-ubyte"), detail::find_idx(dir, pre + "-labels-idx1-ubyte"));
}

/// Keep the listed classes, relabelled by position in the list.
inline Dataset select_subset(const Dataset& d, const std::vector<int>& classes) {
    if (classes.empty()) throw std::invalid_argument("class subset is empty");
    for (std::size_t i = 0; i < classes.size(); ++i) {
        if (classes[i] < 0 || static_cast<std::size_t>(classes[i]) >= std::max<std::size_t>(d.num_classes, 10))
            throw std::invalid_argument("class " + std::to_string(classes[i]) + " out of range");
        for (std::size_t j = 0; j < i; ++j)
            if (classes[i] == classes[j]) throw std::invalid_argument("duplicate class in subset");
    }
    Dataset out;
    out.num_classes = classes.size();
    out.meta = d.meta;
    out.meta.classes.clear();
    for (int c : classes) out.meta.classes.push_back(static_cast<std::size_t>(c) < d.meta.classes.size() ? d.meta.classes[c] : c);
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto it = std::find(classes.begin(), classes.end(), static_cast<int>(d.labels[i]));
        if (it == classes.end()) continue;
        out.images.push_back(d.images[i]);
        out.labels.push_back(static_cast<std::size_t>(it - classes.begin()));
    }
    return out;
}

/// Crop used before pooling a 28x28 image to k x k.
inline std::size_t crop_for(std::size_t src, std::size_t k) { return src / k * k; }

/// Centre-crop to the largest multiple of k, then average-pool into k x k tiles.
inline std::vector<double> downsample(std::span<const double> image, std::size_t k, std::size_t src = 28) {
    if (k != 4 && k != 8 && k != 16) throw std::invalid_argument("resolution must be 4, 8 or 16");
    if (image.size() != src * src) throw std::invalid_argument("image size does not match source resolution");
    const std::size_t crop = crop_for(src, k), off = (src - crop) / 2, t = crop / k;
    std::vector<double> out(k * k, 0.0);
    for (std::size_t r = 0; r < crop; ++r)
        for (std::size_t c = 0; c < crop; ++c) out[(r / t) * k + c / t] += image[(r + off) * src + c + off];
    for (auto& v : out) v /= static_cast<double>(t * t);
    return out;
}

inline Dataset downsample(const Dataset& d, std::size_t k) {
    Dataset out = d;
    for (auto& im : out.images) im = downsample(im, k, d.meta.target_resolution);
    out.meta.target_resolution = k;
    return out;
}

struct Prepared {
    Samples samples;
    std::vector<double> scales;  // L2 norms (amplitude mode)
    std::size_t zero_fallbacks = 0;
};

/// Amplitude mode: unit L2 norm (an all-zero image becomes the uniform vector).
/// Probability mode: values clamped to [0,1].
inline Prepared prepare(const Dataset& d, EncodingKind enc) {
    Prepared p;
    p.samples.num_classes = d.num_classes;
    p.samples.y = d.labels;
    p.samples.x.reserve(d.size());
    for (const auto& im : d.images) {
        std::vector<double> v(im.begin(), im.end());
        if (enc == EncodingKind::Amplitude) {
            double s = 0;
            for (double x : v) s += x * x;
            if (s > 0) {
                const double n = std::sqrt(s);
                for (auto& x : v) x /= n;
                p.scales.push_back(n);
            } else {
                std::fill(v.begin(), v.end(), 1.0 / std::sqrt(static_cast<double>(v.size())));
                p.scales.push_back(0.0);
                ++p.zero_fallbacks;
            }
        } else {
            for (auto& x : v) x = std::clamp(x, 0.0, 1.0);
        }
        p.samples.x.push_back(std::move(v));
    }
    return p;
}

/// Digits used for a k-class task.
inline std::vector<int> default_subset(std::size_t k) {
    switch (k) {
    case 2: return {3, 6};
    case 3: return {0, 3, 6};
    case 4: return {0, 3, 6, 9};
    case 5: return {0, 1, 3, 6, 9};
    case 10: return {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    default: throw std::invalid_argument("no default subset for " + std::to_string(k) + " classes");
    }
}

/// Hidden-layer width for a k-class task.
inline std::size_t default_hidden(std::size_t k) {
    switch (k) {
    case 2: return 4;
    case 3: return 8;
    case 4: return 16;
    case 5: return 16;
    default: return 32;
    }
}

/// Two-class set of signed unit vectors in R^dim (dim a power of two):
///   x = s u + sqrt(1 - s^2) r,   u = parity pattern (-1)^popcount(k) / sqrt(dim),
/// r isotropic and orthogonal to u, s^2 ~ U[1/4, 3/4] with random sign.
/// Label 1 iff |s| < 1/sqrt(2): the XOR of [s > -1/sqrt2] and [s > 1/sqrt2].
inline Samples make_xor_dataset(std::size_t count, std::uint64_t seed, std::size_t dim = 16) {
    if (dim < 2 || std::popcount(dim) != 1) throw std::invalid_argument("dim must be a power of two >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> u(dim);
    for (std::size_t k = 0; k < dim; ++k) u[k] = (std::popcount(k) & 1 ? -1.0 : 1.0) / std::sqrt(double(dim));
    Samples out;
    out.num_classes = 2;
    for (std::size_t i = 0; i < count; ++i) {
        const double s2 = 0.25 + 0.5 * uni(rng);
        const double s = (uni(rng) < 0.5 ? -1.0 : 1.0) * std::sqrt(s2);
        std::vector<double> r(dim);
        double dot = 0, nn = 0;
        for (auto& x : r) x = gauss(rng);
        for (std::size_t k = 0; k < dim; ++k) dot += r[k] * u[k];
        for (std::size_t k = 0; k < dim; ++k) {
            r[k] -= dot * u[k];
            nn += r[k] * r[k];
        }
        const double rn = std::sqrt(nn), c = std::sqrt(1 - s2);
        std::vector<double> x(dim);
        for (std::size_t k = 0; k < dim; ++k) x[k] = s * u[k] + c * r[k] / rn;
        out.x.push_back(std::move(x));
        out.y.push_back(std::abs(s) < 1 / std::sqrt(2.0) ? 1 : 0);
    }
    return out;
}

/// Deterministic permutation of 0..n-1.
inline std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);
    return idx;
}

}  // namespace qfmix
