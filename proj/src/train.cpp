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

#include "soire/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#include "soire/io.hpp"
#include "soire/metrics.hpp"

namespace soire {

void TrainConfig::validate() const {
  if (batch_size == 0) throw Error(ErrorCode::kConfig, "batch size must be at least 1");
  if (!(lambda >= 0.0)) throw Error(ErrorCode::kConfig, "lambda must be non-negative");
  if (!(eval_threshold > 0.0 && eval_threshold < 1.0))
    throw Error(ErrorCode::kConfig, "threshold must lie in (0, 1)");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::kConfig, "learning rate must be positive");
}

Encoding initialize(const Alphabet& sigma, std::size_t bound, Rng& rng) {
  Encoding theta(sigma, bound);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto fill = [&](std::span<double> row) {
    double sum = 0.0;
    for (double& x : row) sum += (x = uniform(rng));
    if (sum > 0.0)
      for (double& x : row) x /= sum;
  };
  for (std::size_t t = 0; t < bound; ++t) fill(theta.w_row(t));
  for (std::size_t t = 0; t < bound; ++t) fill(theta.u_row(t));
  return theta;
}

TrainResult train(const Dataset& train_set, const Dataset& validation, const TrainConfig& config) {
  config.validate();
  const std::size_t T = config.bound ? config.bound : required_bound(train_set.alphabet);
  Rng rng(config.seed);
  Encoding init = initialize(train_set.alphabet, T, rng);
  return train(train_set, validation, std::move(init), config);
}

namespace {

class AdamW {
 public:
  AdamW(std::size_t n, const TrainConfig& c) : c_(c), m_(n, 0.0), v_(n, 0.0) {}

  void step(std::span<double> x, std::span<const double> grad) {
    ++steps_;
    const double bc1 = 1.0 - std::pow(c_.beta1, static_cast<double>(steps_));
    const double bc2 = 1.0 - std::pow(c_.beta2, static_cast<double>(steps_));
    const double lr = c_.learning_rate;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] -= lr * c_.weight_decay * x[i];
      m_[i] = c_.beta1 * m_[i] + (1.0 - c_.beta1) * grad[i];
      v_[i] = c_.beta2 * v_[i] + (1.0 - c_.beta2) * grad[i] * grad[i];
      x[i] -= lr * (m_[i] / bc1) / (std::sqrt(v_[i] / bc2) + c_.epsilon);
      x[i] = std::clamp(x[i], 0.0, 1.0);
    }
  }

 private:
  const TrainConfig& c_;
  std::vector<double> m_, v_;
  std::size_t steps_ = 0;
};

}  // namespace

TrainResult train(const Dataset& train_set, const Dataset& validation, Encoding init,
                  const TrainConfig& config) {
  config.validate();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto out_of_time = [&] {
    if (config.time_limit_seconds <= 0.0) return false;
    return std::chrono::duration<double>(Clock::now() - start).count() > config.time_limit_seconds;
  };

  const NetworkOptions leaky{ClampMode::kLeaky, config.leaky_slope, config.max_length};
  // Separate stream from initialize() so both depend on the seed alone.
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ull);
  Encoding theta = project(std::move(init));
  TrainResult result{theta, theta, 0, 0.0, {}, false};

  auto validate_now = [&] {
    return network_accuracy(theta, validation, config.eval_threshold, config.execution);
  };
  {
    const auto n = train_set.samples.size();
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    double loss0 = n ? batch_gradient(theta, train_set.samples, all, leaky, config.execution).loss : 0.0;
    result.best_validation_accuracy = validate_now();
    result.log.push_back({0, loss0, result.best_validation_accuracy});
    if (config.on_epoch) config.on_epoch(0, theta);
  }

  AdamW opt(theta.parameter_count(), config);
  std::vector<std::size_t> order(train_set.samples.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t epoch = 1; epoch <= config.epochs && !result.timed_out; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double loss_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t b = 0; b < order.size(); b += config.batch_size) {
      std::span<const std::size_t> idx(order.data() + b, std::min(config.batch_size, order.size() - b));
      BatchGradient g = batch_gradient(theta, train_set.samples, idx, leaky, config.execution);
      loss_sum += g.loss + add_regularizer_gradient(theta, config.lambda, g.grad);
      ++batches;
      opt.step(theta.params(), g.grad);
      if (out_of_time()) {
        result.timed_out = true;
        break;
      }
    }
    const double acc = validate_now();
    result.log.push_back({epoch, batches ? loss_sum / static_cast<double>(batches) : 0.0, acc});
    if (config.on_epoch) config.on_epoch(epoch, theta);
    if (acc > result.best_validation_accuracy) {
      result.best_validation_accuracy = acc;
      result.best = theta;
      result.best_epoch = epoch;
    }
  }
  result.last = theta;
  return result;
}

std::string log_csv(const std::vector<TrainLogRow>& log) {
  std::ostringstream out;
  out << "epoch,train_loss,validation_accuracy\n";
  for (const TrainLogRow& r : log)
    out << r.epoch << ',' << format_double(r.train_loss) << ',' << format_double(r.validation_accuracy)
        << '\n';
  return out.str();
}

}  // namespace soire
