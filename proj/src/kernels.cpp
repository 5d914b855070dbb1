// Copyright 2026 The SOIRE Learner Authors. All rights reserved.
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

#include "soire/kernels.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace soire {

namespace {

// Runs body(i) for i in [0, n), rethrowing the first exception (by index)
// after the loop, since exceptions may not escape an OpenMP region.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::int64_t>(n);
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  } else {
    for (std::int64_t i = 0; i < count; ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int thread_count(Execution exec) {
#ifdef _OPENMP
  return exec == Execution::kParallel ? omp_get_max_threads() : 1;
#else
  (void)exec;
  return 1;
#endif
}

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

}  // namespace

BatchGradient batch_gradient(const Encoding& theta, std::span<const LabeledString> samples,
                             std::span<const std::size_t> indices, const NetworkOptions& options,
                             Execution exec) {
  const std::size_t P = theta.parameter_count();
  const std::size_t B = indices.size();
  std::vector<double> per_sample(B * P, 0.0);
  std::vector<double> losses(B, 0.0);
  std::vector<GradientWorkspace> workspaces(static_cast<std::size_t>(thread_count(exec)));

  for_each_index(B, exec, [&](std::size_t k) {
    const LabeledString& sample = samples[indices[k]];
    GradientWorkspace& ws = workspaces[exec == Execution::kParallel ? thread_id() : 0];
    std::span<double> out(per_sample.data() + k * P, P);
    losses[k] = sample_gradient(theta, sample.text, sample.label, options, ws, out)[0];
  });

  BatchGradient result;
  result.grad.assign(P, 0.0);
  if (B == 0) return result;
  for (std::size_t k = 0; k < B; ++k) {
    const double* g = per_sample.data() + k * P;
    for (std::size_t j = 0; j < P; ++j) result.grad[j] += g[j];
    result.loss += losses[k];
  }
  const double inv = 1.0 / static_cast<double>(B);
  for (double& x : result.grad) x *= inv;
  result.loss *= inv;
  return result;
}

std::vector<double> predict(const Encoding& theta, std::span<const LabeledString> samples,
                            const NetworkOptions& options, Execution exec) {
  std::vector<double> out(samples.size());
  std::vector<ForwardTrace> traces(static_cast<std::size_t>(thread_count(exec)));
  for_each_index(samples.size(), exec, [&](std::size_t i) {
    ForwardTrace& tr = traces[exec == Execution::kParallel ? thread_id() : 0];
    forward_into(tr, theta, samples[i].text, options);
    out[i] = tr.y_hat();
  });
  return out;
}

std::vector<std::uint8_t> match_all(const Soire& r, std::span<const LabeledString> samples,
                                    Execution exec) {
  std::vector<std::uint8_t> out(samples.size());
  for_each_index(samples.size(), exec,
                 [&](std::size_t i) { out[i] = soiretm(r, samples[i].text) ? 1 : 0; });
  return out;
}

}  // namespace soire
