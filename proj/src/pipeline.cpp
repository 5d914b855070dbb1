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

#include "soire/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>

#include "soire/io.hpp"

namespace soire {

void ExperimentConfig::validate() const {
  if (target.empty()) throw Error(ErrorCode::kConfig, "no target expression");
  if (deltas.empty()) throw Error(ErrorCode::kConfig, "empty noise-level list");
  if (learning_rates.empty()) throw Error(ErrorCode::kConfig, "empty learning-rate list");
  for (double d : deltas)
    if (!(d >= 0.0 && d < 1.0)) throw Error(ErrorCode::kConfig, "noise level outside [0, 1)");
  if (restarts == 0) throw Error(ErrorCode::kConfig, "restarts must be at least 1");
  if (beam == 0) throw Error(ErrorCode::kConfig, "beam width must be positive");
  TrainConfig t;
  t.batch_size = batch_size;
  t.lambda = lambda;
  for (double lr : learning_rates) {
    t.learning_rate = lr;
    t.validate();
  }
}

Alphabet ExperimentConfig::resolved_alphabet() const {
  return alphabet.empty() ? alphabet_of(target) : Alphabet(alphabet);
}

std::optional<std::size_t> select_run(const std::vector<RunResult>& runs) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const RunResult& r = runs[i];
    if (!r.ok()) continue;
    if (!best) {
      best = i;
      continue;
    }
    const RunResult& b = runs[*best];
    if (r.validation_accuracy != b.validation_accuracy) {
      if (r.validation_accuracy > b.validation_accuracy) best = i;
    } else if (r.learning_rate != b.learning_rate) {
      if (r.learning_rate < b.learning_rate) best = i;
    } else if (r.seed < b.seed) {
      best = i;
    }
  }
  return best;
}

std::string eval_csv_header() { return "dataset,delta,accuracy,network_accuracy,faithfulness\n"; }

std::string eval_csv_row(const std::string& dataset, double delta, const EvalReport& report) {
  std::ostringstream out;
  out << dataset << ',' << format_double(delta) << ',' << format_double(report.accuracy) << ','
      << (report.network_accuracy ? format_double(*report.network_accuracy) : "") << ','
      << (report.faithfulness ? format_double(*report.faithfulness) : "") << '\n';
  return out.str();
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + '"';
}

std::string runs_csv(const std::string& dataset, const std::vector<RunResult>& runs) {
  std::ostringstream out;
  out << "dataset,delta,learning_rate,seed,validation_accuracy,accuracy,network_accuracy,"
         "faithfulness,epoch,soire,error\n";
  for (const RunResult& r : runs) {
    out << dataset << ',' << format_double(r.delta) << ',' << format_double(r.learning_rate) << ','
        << r.seed << ',';
    if (r.ok()) {
      out << format_double(r.validation_accuracy) << ',' << format_double(r.test.accuracy) << ','
          << format_double(*r.test.network_accuracy) << ',' << format_double(*r.test.faithfulness)
          << ',' << r.epoch << ',' << quote(r.infix) << ",\n";
    } else {
      out << ",,,,,," << quote(r.error) << '\n';
    }
  }
  return out.str();
}

std::string results_csv(const std::string& dataset, const std::vector<RunResult>& selected) {
  std::ostringstream out;
  out << "dataset,delta,accuracy,network_accuracy,faithfulness,learning_rate,seed,"
         "validation_accuracy,soire\n";
  for (const RunResult& r : selected)
    out << dataset << ',' << format_double(r.delta) << ',' << format_double(r.test.accuracy) << ','
        << format_double(*r.test.network_accuracy) << ',' << format_double(*r.test.faithfulness)
        << ',' << format_double(r.learning_rate) << ',' << r.seed << ','
        << format_double(r.validation_accuracy) << ',' << quote(r.infix) << '\n';
  return out.str();
}

}  // namespace

PipelineResult run_pipeline(const ExperimentConfig& config, std::ostream* progress) {
  config.validate();
  const Alphabet sigma = config.resolved_alphabet();
  const Soire target = parse_regex(config.target, sigma);
  const std::size_t T = config.bound ? config.bound : required_bound(sigma);
  const bool write = !config.out.empty();
  const SamplerOptions sampler{config.max_length, 0.5, 200};

  PipelineResult result;
  for (double delta : config.deltas) {
    const std::filesystem::path dir = config.out / ("delta_" + format_double(delta));
    std::vector<RunResult> runs;
    std::optional<Splits> data;
    try {
      data.emplace(make_dataset(target, sigma, config.sizes, delta, config.seed, sampler));
    } catch (const std::exception& e) {
      RunResult failed;
      failed.delta = delta;
      failed.error = std::string("data generation: ") + e.what();
      runs.push_back(failed);
      if (progress) *progress << "delta " << format_double(delta) << ": " << failed.error << '\n';
      result.runs.insert(result.runs.end(), runs.begin(), runs.end());
      continue;
    }
    if (write) {
      save_dataset(dir / "train.tsv", data->train);
      save_dataset(dir / "valid.tsv", data->validation);
      save_dataset(dir / "test.tsv", data->test);
    }

    for (double lr : config.learning_rates) {
      for (std::size_t k = 0; k < config.restarts; ++k) {
        RunResult run;
        run.delta = delta;
        run.learning_rate = lr;
        run.seed = config.seed + k;
        const auto start = std::chrono::steady_clock::now();
        try {
          TrainConfig tc;
          tc.bound = T;
          tc.batch_size = config.batch_size;
          tc.learning_rate = lr;
          tc.lambda = config.lambda;
          tc.epochs = config.epochs;
          tc.seed = run.seed;
          tc.time_limit_seconds = config.time_limit_seconds;
          tc.max_length = config.max_length;
          tc.execution = config.execution;
          // Candidate (epoch, encoding, SOIRE) with its validation scores.
          struct Pick {
            std::size_t epoch = 0;
            std::optional<Encoding> theta;
            std::optional<Interpretation> interp;
            EvalReport valid;
          };
          std::optional<Pick> pick;
          AccuracyCache seen;
          // An epoch whose root beam is empty has nothing to offer; the
          // run fails only if every considered epoch is like that.
          std::optional<Error> empty;
          auto consider = [&](std::size_t epoch, const Encoding& theta) {
            std::optional<Interpretation> found;
            try {
              found = interpret(data->train.samples, theta, config.beam, config.execution, &seen);
            } catch (const Error& e) {
              if (e.code() != ErrorCode::kEmptyBeam) throw;
              empty = e;
              return;
            }
            Interpretation& in = *found;
            EvalReport v = evaluate(theta, in.expr, data->validation, kDefaultThreshold,
                                    config.execution);
            const bool better =
                !pick || v.accuracy > pick->valid.accuracy ||
                (v.accuracy == pick->valid.accuracy && *v.faithfulness > *pick->valid.faithfulness);
            if (better) pick = Pick{epoch, theta, std::move(in), v};
          };
          if (config.interpret_each_epoch) tc.on_epoch = consider;
          TrainResult trained = train(data->train, data->validation, tc);
          if (!config.interpret_each_epoch) consider(trained.best_epoch, trained.best);
          if (!pick) throw *empty;
          const Encoding& theta = *pick->theta;
          const Soire& expr = pick->interp->expr;
          run.prefix = expr.to_prefix();
          run.infix = expr.to_infix();
          run.validation_accuracy = pick->valid.accuracy;
          run.test = evaluate(theta, expr, data->test, kDefaultThreshold, config.execution);
          run.epoch = pick->epoch;
          run.timed_out = trained.timed_out;
          run.checkpoint = theta;
          if (write) {
            const std::filesystem::path rd =
                dir / ("lr_" + format_double(lr) + "_seed_" + std::to_string(run.seed));
            save_checkpoint(rd / "checkpoint.txt", theta);
            write_file(rd / "train_log.csv", log_csv(trained.log));
            write_file(rd / "soire.txt", run.infix + '\n' + run.prefix + '\n');
          }
        } catch (const std::exception& e) {
          run.error = e.what();
        }
        if (progress) {
          const double secs =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          *progress << "delta " << format_double(delta) << " lr " << format_double(lr) << " seed "
                    << run.seed << ": ";
          if (run.ok())
            *progress << run.infix << " valid " << run.validation_accuracy << " test "
                      << run.test.accuracy << " faithfulness " << *run.test.faithfulness;
          else
            *progress << "error: " << run.error;
          *progress << " (" << secs << " s" << (run.timed_out ? ", time limit" : "") << ")\n";
        }
        runs.push_back(std::move(run));
      }
    }

    if (auto best = select_run(runs)) {
      const RunResult& b = runs[*best];
      result.selected.push_back(b);
      if (write) {
        save_checkpoint(dir / "best_checkpoint.txt", *b.checkpoint);
        write_file(dir / "soire.txt", b.infix + '\n' + b.prefix + '\n');
      }
    }
    result.runs.insert(result.runs.end(), runs.begin(), runs.end());
  }

  if (write) {
    write_file(config.out / "runs.csv", runs_csv(config.dataset_id, result.runs));
    write_file(config.out / "results.csv", results_csv(config.dataset_id, result.selected));
  }
  return result;
}

}  // namespace soire
