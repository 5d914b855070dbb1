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

// soire: generate datasets, match, train, interpret, evaluate and run
// learning-rate / noise sweeps.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "soire/io.hpp"
#include "soire/matcher.hpp"
#include "soire/pipeline.hpp"

#ifndef SOIRE_DATA_DIR
#define SOIRE_DATA_DIR "data"
#endif

namespace {

using namespace soire;

Execution execution(bool serial) { return serial ? Execution::kSerial : Execution::kParallel; }

// An explicit alphabet, or the symbols of the regex itself.
Alphabet pick_alphabet(const std::string& alphabet, const std::string& regex) {
  return alphabet.empty() ? alphabet_of(regex) : Alphabet(alphabet);
}

std::string fixture_regex(int id, const std::string& path) {
  for (const Fixture& f : load_fixtures(path))
    if (f.id == id) return f.prefix;
  throw Error(ErrorCode::kConfig, "no fixture " + std::to_string(id) + " in " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn single-occurrence regular expressions with interleaving"};
  app.require_subcommand(1);

  // gen
  struct {
    std::string regex, alphabet = "abcdefghij", out = ".";
    double delta = 0.0;
    std::uint64_t seed = 1;
    std::size_t train = 250, val = 50, test = 250, max_len = 20;
  } gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate train/valid/test datasets from a SOIRE");
  gen_cmd->add_option("--regex", gen.regex, "Target SOIRE, prefix or infix")->required();
  gen_cmd->add_option("--alphabet", gen.alphabet, "Symbols; empty uses the regex's own");
  gen_cmd->add_option("--delta", gen.delta, "Label noise level")->check(CLI::Range(0.0, 0.999));
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--train-size", gen.train, "Strings per class in the training split");
  gen_cmd->add_option("--val-size", gen.val, "Strings per class in the validation split");
  gen_cmd->add_option("--test-size", gen.test, "Strings per class in the test split");
  gen_cmd->add_option("--max-len", gen.max_len, "Maximum string length");
  gen_cmd->add_option("--out", gen.out, "Output directory");

  // match
  struct {
    std::string regex, input, alphabet;
  } match;
  auto* match_cmd = app.add_subcommand("match", "Print 1 or 0 per input line");
  match_cmd->add_option("--regex", match.regex, "SOIRE, prefix or infix")->required();
  match_cmd->add_option("--input", match.input, "One string per line, or a dataset file")
      ->required()
      ->check(CLI::ExistingFile);
  match_cmd->add_option("--alphabet", match.alphabet, "Symbols; empty uses the regex's own");

  // train
  struct {
    std::string train, valid, out = ".";
    TrainConfig config;
    bool serial = false;
  } tr;
  auto* train_cmd = app.add_subcommand("train", "Train an encoding");
  train_cmd->add_option("--train", tr.train, "Training dataset")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--valid", tr.valid, "Validation dataset")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--lr", tr.config.learning_rate, "Learning rate");
  train_cmd->add_option("--epochs", tr.config.epochs, "Epochs");
  train_cmd->add_option("--batch", tr.config.batch_size, "Batch size");
  train_cmd->add_option("--lambda", tr.config.lambda, "Regularization coefficient");
  train_cmd->add_option("--seed", tr.config.seed, "Random seed");
  train_cmd->add_option("--bound", tr.config.bound, "Bounded size T; 0 means 4|Σ|-2");
  train_cmd->add_option("--leaky-slope", tr.config.leaky_slope, "Clamp slope outside [0, 1]");
  train_cmd->add_option("--time-limit", tr.config.time_limit_seconds, "Seconds; 0 disables");
  train_cmd->add_flag("--serial", tr.serial, "Single-threaded kernels");
  train_cmd->add_option("--out", tr.out, "Output directory");

  // interpret
  struct {
    std::string checkpoint, train;
    std::size_t beam = kDefaultBeam;
    bool serial = false;
  } in;
  auto* interp_cmd = app.add_subcommand("interpret", "Beam-search a SOIRE from a checkpoint");
  interp_cmd->add_option("--checkpoint", in.checkpoint, "Checkpoint file")->required()->check(CLI::ExistingFile);
  interp_cmd->add_option("--train", in.train, "Training dataset")->required()->check(CLI::ExistingFile);
  interp_cmd->add_option("--beam", in.beam, "Beam width")->check(CLI::PositiveNumber);
  interp_cmd->add_flag("--serial", in.serial, "Single-threaded kernels");

  // eval
  struct {
    std::string checkpoint, regex, test, dataset = "custom";
    double delta = 0.0;
    bool serial = false;
  } ev;
  auto* eval_cmd = app.add_subcommand("eval", "Accuracy and faithfulness as a CSV row");
  eval_cmd->add_option("--regex", ev.regex, "Interpreted SOIRE")->required();
  eval_cmd->add_option("--test", ev.test, "Test dataset")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--checkpoint", ev.checkpoint, "Checkpoint; enables network metrics")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--dataset-id", ev.dataset, "First CSV column");
  eval_cmd->add_option("--delta", ev.delta, "Noise level reported in the row");
  eval_cmd->add_flag("--serial", ev.serial, "Single-threaded kernels");

  // pipeline
  ExperimentConfig ex;
  std::string regex, out;
  int fixture = 0;
  std::string fixtures = std::string(SOIRE_DATA_DIR) + "/fixtures.tsv";
  std::size_t train_size = 250, val_size = 50, test_size = 250;
  bool serial = false, final_only = false;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Sweep noise levels and learning rates");
  auto* regex_opt = pipe_cmd->add_option("--regex", regex, "Target SOIRE, prefix or infix");
  pipe_cmd->add_option("--fixture", fixture, "Fixture id instead of --regex")->excludes(regex_opt);
  pipe_cmd->add_option("--fixtures", fixtures, "Fixture file");
  pipe_cmd->add_option("--alphabet", ex.alphabet, "Symbols; empty uses the target's own");
  pipe_cmd->add_option("--deltas", ex.deltas, "Noise levels")->delimiter(',');
  pipe_cmd->add_option("--lrs", ex.learning_rates, "Learning rates")->delimiter(',');
  pipe_cmd->add_option("--bound", ex.bound, "Bounded size T; 0 means 4|Σ|-2");
  pipe_cmd->add_option("--beam", ex.beam, "Beam width");
  pipe_cmd->add_option("--lambda", ex.lambda, "Regularization coefficient");
  pipe_cmd->add_option("--batch", ex.batch_size, "Batch size");
  pipe_cmd->add_option("--epochs", ex.epochs, "Epochs per run");
  pipe_cmd->add_option("--seed", ex.seed, "Data seed and first training seed");
  pipe_cmd->add_option("--restarts", ex.restarts, "Training seeds per learning rate");
  pipe_cmd->add_option("--time-limit", ex.time_limit_seconds, "Seconds per training run; 0 disables");
  pipe_cmd->add_option("--train-size", train_size, "Strings per class, training split");
  pipe_cmd->add_option("--val-size", val_size, "Strings per class, validation split");
  pipe_cmd->add_option("--test-size", test_size, "Strings per class, test split");
  pipe_cmd->add_option("--max-len", ex.max_length, "Maximum string length");
  pipe_cmd->add_flag("--final-only", final_only,
                     "Interpret only the best-validation network, not every epoch");
  pipe_cmd->add_flag("--serial", serial, "Single-threaded kernels");
  pipe_cmd->add_option("--out", out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      Alphabet sigma = pick_alphabet(gen.alphabet, gen.regex);
      Soire r = parse_regex(gen.regex, sigma);
      SplitSizes sizes{gen.train, gen.train, gen.val, gen.val, gen.test, gen.test};
      Splits s = make_dataset(r, sigma, sizes, gen.delta, gen.seed, {gen.max_len, 0.5, 200});
      save_dataset(std::filesystem::path(gen.out) / "train.tsv", s.train);
      save_dataset(std::filesystem::path(gen.out) / "valid.tsv", s.validation);
      save_dataset(std::filesystem::path(gen.out) / "test.tsv", s.test);
    } else if (*match_cmd) {
      Soire r = parse_regex(match.regex, pick_alphabet(match.alphabet, match.regex));
      std::ifstream file(match.input);
      std::string line;
      bool first = true;
      while (std::getline(file, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first && line.rfind("#alphabet=", 0) == 0) {
          first = false;
          continue;
        }
        first = false;
        // Dataset records carry a label column; match the string part.
        if (line.size() >= 2 && (line[0] == '+' || line[0] == '-') && line[1] == '\t')
          line = line.substr(2);
        std::cout << (soiretm(r, line) ? 1 : 0) << '\n';
      }
    } else if (*train_cmd) {
      tr.config.execution = execution(tr.serial);
      TrainResult res = train(load_dataset(tr.train), load_dataset(tr.valid), tr.config);
      save_checkpoint(std::filesystem::path(tr.out) / "checkpoint.txt", res.best);
      write_file(std::filesystem::path(tr.out) / "train_log.csv", log_csv(res.log));
      std::cout << "best epoch " << res.best_epoch << ", validation accuracy "
                << res.best_validation_accuracy << (res.timed_out ? " (time limit)" : "") << '\n';
    } else if (*interp_cmd) {
      Encoding theta = load_checkpoint(in.checkpoint);
      Dataset d = load_dataset(in.train);
      Interpretation result = interpret(d.samples, theta, in.beam, execution(in.serial));
      std::cout << "infix " << result.expr.to_infix() << '\n'
                << "prefix " << result.expr.to_prefix() << '\n'
                << "train_accuracy " << format_double(result.train_accuracy) << '\n';
    } else if (*eval_cmd) {
      Dataset d = load_dataset(ev.test);
      Soire r = parse_regex(ev.regex, d.alphabet);
      EvalReport report = ev.checkpoint.empty()
                              ? evaluate(r, d, execution(ev.serial))
                              : evaluate(load_checkpoint(ev.checkpoint), r, d, kDefaultThreshold,
                                         execution(ev.serial));
      std::cout << eval_csv_header() << eval_csv_row(ev.dataset, ev.delta, report);
    } else if (*pipe_cmd) {
      if (fixture) {
        ex.target = fixture_regex(fixture, fixtures);
        ex.dataset_id = std::to_string(fixture);
      } else {
        ex.target = regex;
      }
      ex.sizes = {train_size, train_size, val_size, val_size, test_size, test_size};
      ex.execution = execution(serial);
      ex.interpret_each_epoch = !final_only;
      ex.out = out;
      PipelineResult res = run_pipeline(ex, &std::cerr);
      std::cout << eval_csv_header();
      for (const RunResult& r : res.selected) std::cout << eval_csv_row(ex.dataset_id, r.delta, r.test);
      if (res.selected.size() != ex.deltas.size()) return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
