/*
 * Copyright 2026 The Hurra Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "hurra/detectors/xstream.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "hurra/random.hpp"

namespace hurra {
namespace {

using BinCounts = std::unordered_map<std::uint64_t, std::uint32_t>;

class HalfSpaceChain {
 public:
  HalfSpaceChain(std::size_t k, std::size_t depth, const std::vector<double>& deltas, Rng& rng)
      : dims_(depth), first_use_(depth), reference_(depth), current_(depth) {
    shift_.resize(k);
    for (std::size_t f = 0; f < k; ++f) shift_[f] = rng.uniform(0.0, deltas[f]);
    std::vector<bool> used(k, false);
    for (std::size_t l = 0; l < depth; ++l) {
      dims_[l] = rng.below(k);
      first_use_[l] = !used[dims_[l]];
      used[dims_[l]] = true;
    }
  }

  // Bin keys of y at every level.
  void keys(const double* y, const std::vector<double>& deltas, std::vector<std::uint64_t>& out,
            std::vector<double>& scratch) const {
    out.resize(dims_.size());
    std::uint64_t key = 0;
    for (std::size_t l = 0; l < dims_.size(); ++l) {
      const std::size_t f = dims_[l];
      if (first_use_[l]) {
        scratch[f] = (y[f] + shift_[f]) / deltas[f];
      } else {
        key -= term(f, scratch[f]);
        scratch[f] = 2.0 * scratch[f] - shift_[f] / deltas[f];
      }
      key += term(f, scratch[f]);
      out[l] = mix64(key ^ (l * 0x9e3779b97f4a7c15ULL));
    }
  }

  double min_scaled_count(const std::vector<std::uint64_t>& keys) const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < keys.size(); ++l) {
      auto it = reference_[l].find(keys[l]);
      const double c = it == reference_[l].end() ? 0.0 : static_cast<double>(it->second);
      best = std::min(best, c * std::ldexp(1.0, static_cast<int>(l + 1)));
    }
    return best;
  }

  void add_to_current(const std::vector<std::uint64_t>& keys) {
    for (std::size_t l = 0; l < keys.size(); ++l) ++current_[l][keys[l]];
  }

  void roll_window() {
    reference_.swap(current_);
    for (auto& level : current_) level.clear();
  }

 private:
  static std::uint64_t term(std::size_t f, double z) {
    const auto b = static_cast<std::int64_t>(std::clamp(std::floor(z), -0x1p62, 0x1p62));
    return mix64((static_cast<std::uint64_t>(f) << 40) ^ static_cast<std::uint64_t>(b));
  }

  std::vector<std::size_t> dims_;
  std::vector<bool> first_use_;
  std::vector<double> shift_;
  std::vector<BinCounts> reference_;
  std::vector<BinCounts> current_;
};

}  // namespace

double streamhash_weight(const std::string& feature, std::size_t component, std::uint64_t seed) {
  const std::uint64_t h = mix64(hash_string(feature) ^ derive_seed(seed, component));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
  static const double root3 = std::sqrt(3.0);
  if (u < 1.0 / 6.0) return -root3;
  if (u < 2.0 / 6.0) return root3;
  return 0.0;
}

std::vector<double> xstream_score(const PointView& points,
                                  std::span<const std::string> feature_names,
                                  const XStreamOptions& options) {
  const std::size_t T = points.rows(), F = points.cols();
  require(feature_names.size() == F, ErrorCode::kInvalidArgument,
          "xStream: feature name count differs from point width");
  require(options.projections >= 1 && options.chains >= 1 && options.depth >= 1,
          ErrorCode::kInvalidArgument, "xStream: k, c and d must be >= 1");
  require(options.init_frac > 0.0 && options.init_frac <= 1.0, ErrorCode::kInvalidArgument,
          "xStream: initial-sample fraction must lie in (0, 1]");
  const std::size_t init = fraction_of(options.init_frac, T);
  require(init >= 2, ErrorCode::kInvalidArgument,
          "xStream: initial window resolves to " + std::to_string(init) + " samples (< 2)");
  require(init <= T, ErrorCode::kInvalidArgument,
          "xStream: initial window exceeds the series length");

  const std::size_t k = options.projections;
  std::vector<double> weights(F * k);  // F x k
  for (std::size_t j = 0; j < F; ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      weights[j * k + i] = streamhash_weight(feature_names[j], i, options.seed);
    }
  }
  std::vector<double> y(T * k, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    double* out = y.data() + t * k;
    for (std::size_t j = 0; j < F; ++j) {
      const double v = points(t, j);
      const double* w = weights.data() + j * k;
      for (std::size_t i = 0; i < k; ++i) out[i] += w[i] * v;
    }
  }

  std::vector<double> deltas(k);
  for (std::size_t i = 0; i < k; ++i) {
    double mn = y[i], mx = y[i];
    for (std::size_t t = 1; t < init; ++t) {
      mn = std::min(mn, y[t * k + i]);
      mx = std::max(mx, y[t * k + i]);
    }
    deltas[i] = mx > mn ? 0.5 * (mx - mn) : 1.0;
  }

  std::vector<HalfSpaceChain> chains;
  chains.reserve(options.chains);
  for (std::size_t c = 0; c < options.chains; ++c) {
    Rng rng(derive_seed(options.seed, c));
    chains.emplace_back(k, options.depth, deltas, rng);
  }

  std::vector<std::uint64_t> keys;
  std::vector<double> scratch(k);
  // keys_of[t][c] would be T*c*d words; recompute instead.
  auto visit = [&](std::size_t t, auto&& fn) {
    for (auto& chain : chains) {
      chain.keys(y.data() + t * k, deltas, keys, scratch);
      fn(chain);
    }
  };
  auto score = [&](std::size_t t) {
    double sum = 0.0;
    visit(t, [&](HalfSpaceChain& chain) { sum += chain.min_scaled_count(keys); });
    return -sum / static_cast<double>(chains.size());
  };

  std::vector<double> out(T);
  for (std::size_t t = 0; t < init; ++t) {
    visit(t, [&](HalfSpaceChain& chain) { chain.add_to_current(keys); });
  }
  for (auto& chain : chains) chain.roll_window();
  for (std::size_t t = 0; t < init; ++t) out[t] = score(t);

  std::size_t in_window = 0;
  for (std::size_t t = init; t < T; ++t) {
    double sum = 0.0;
    visit(t, [&](HalfSpaceChain& chain) {
      sum += chain.min_scaled_count(keys);
      chain.add_to_current(keys);
    });
    out[t] = -sum / static_cast<double>(chains.size());
    if (++in_window == init) {
      for (auto& chain : chains) chain.roll_window();
      in_window = 0;
    }
  }
  return out;
}

}  // namespace hurra
