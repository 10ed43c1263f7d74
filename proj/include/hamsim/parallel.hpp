// Copyright 2026 The hamsim developers
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

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "hamsim/errors.hpp"
#include "hamsim/rng.hpp"

namespace hamsim {

struct ShotStats {
  double mean = 0.0;
  double variance = 0.0;  // sample variance of the per-shot values
  std::uint64_t shots = 0;

  double stderr_mean() const {
    return shots > 1 ? std::sqrt(variance / static_cast<double>(shots)) : 0.0;
  }
};

inline constexpr std::uint64_t kShotBlock = 4096;

/**
 * Runs `shots` evaluations of `fn(shot_index, rng)` and aggregates mean and
 * sample variance. Shot i draws from a substream derived from (seed, i), and
 * reduction happens in fixed block order, so the result is bit-identical for
 * any worker count.
 */
template <typename Fn>
ShotStats run_shots(std::uint64_t shots, std::uint64_t seed, int workers, Fn&& fn) {
  if (shots == 0) throw ValidationError("run_shots: needs at least one shot");
  if (workers < 1) workers = 1;
  const std::uint64_t n_blocks = (shots + kShotBlock - 1) / kShotBlock;
  std::vector<double> block_sum(n_blocks, 0.0), block_sumsq(n_blocks, 0.0);

  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t begin = b * kShotBlock;
    const std::uint64_t end = std::min(shots, begin + kShotBlock);
    double s = 0.0, s2 = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) {
      Rng rng(seed, i);
      const double v = fn(i, rng);
      s += v;
      s2 += v * v;
    }
    block_sum[b] = s;
    block_sumsq[b] = s2;
  };

  if (workers == 1 || n_blocks == 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    const int n_threads = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), n_blocks));
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t b = next.fetch_add(1); b < n_blocks;
             b = next.fetch_add(1))
          run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  double sum = 0.0, sumsq = 0.0;
  for (std::uint64_t b = 0; b < n_blocks; ++b) {
    sum += block_sum[b];
    sumsq += block_sumsq[b];
  }
  ShotStats out;
  out.shots = shots;
  const auto m = static_cast<double>(shots);
  out.mean = sum / m;
  out.variance = shots > 1 ? (sumsq - sum * sum / m) / (m - 1.0) : 0.0;
  if (out.variance < 0.0) out.variance = 0.0;  // round-off on constants
  return out;
}

}  // namespace hamsim
