// Command-line driver over the C interface.
//
// Exit codes: 0 linearizable / clean / pass, 1 violation or counterexample,
// 2 usage, parse, bound, i/o error or an undecided result.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qlin/qlin.h"

namespace {

constexpr int exit_error = 2;

int report_error(qlin_status s) {
  std::cerr << "qlin: " << qlin_status_string(s);
  if (*qlin_last_error()) std::cerr << ": " << qlin_last_error();
  std::cerr << "\n";
  return exit_error;
}

qlin_format parse_format(const std::string& f) { return f == "lines" ? QLIN_FORMAT_LINES : QLIN_FORMAT_TEXT; }

int finish(qlin_result* r) {
  std::cout << qlin_result_report(r);
  const qlin_outcome o = qlin_result_outcome(r);
  qlin_result_free(r);
  switch (o) {
    case QLIN_LINEARIZABLE: return 0;
    case QLIN_VIOLATION: return 1;
    default: return exit_error;
  }
}

qlin_history* load(const std::string& path, int& code) {
  qlin_history* h = nullptr;
  if (qlin_status s = qlin_history_load(path.c_str(), &h, nullptr); s != QLIN_OK) {
    code = report_error(s);
    return nullptr;
  }
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linearizability checking for FIFO queue histories and exploration of an array-based queue"};
  app.require_subcommand(1);
  int code = 0;

  std::string path, format = "text";
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or lines")->check(CLI::IsMember({"text", "lines"}));
  };

  auto* check = app.add_subcommand("check", "Decide linearizability of a history file");
  bool all = false, witness = false;
  check->add_option("file", path, "History file")->required();
  check->add_flag("--all", all, "List every violation found");
  check->add_flag("--witness", witness, "Print the linearization");
  add_format(check);
  check->callback([&] {
    qlin_history* h = load(path, code);
    if (!h) return;
    unsigned flags = (all ? QLIN_CHECK_ALL : 0u) | (witness ? QLIN_CHECK_WITNESS : 0u);
    qlin_result* r = nullptr;
    qlin_status s = qlin_check(h, flags, parse_format(format), &r);
    qlin_history_free(h);
    code = s == QLIN_OK ? finish(r) : report_error(s);
  });

  auto* oracle = app.add_subcommand("oracle", "Decide linearizability by exhaustive search");
  std::size_t max_events = 12;
  oracle->add_option("file", path, "History file")->required();
  oracle->add_option("--max-events", max_events, "Refuse histories with more events")->capture_default_str();
  add_format(oracle);
  oracle->callback([&] {
    qlin_history* h = load(path, code);
    if (!h) return;
    qlin_result* r = nullptr;
    qlin_status s = qlin_oracle(h, max_events, parse_format(format), &r);
    qlin_history_free(h);
    code = s == QLIN_OK ? finish(r) : report_error(s);
  });

  auto* explore = app.add_subcommand("explore", "Check every complete history of the queue model");
  qlin_explore_params ep;
  qlin_explore_params_init(&ep);
  std::string mutant = "none";
  std::vector<std::uint64_t> values;
  bool run_oracle = false, purity = false, no_dedup = false;
  ep.capacity = 0;
  ep.loop_bound = 4;
  explore->add_option("--enq", ep.n_enq, "Enqueuing threads")->required();
  explore->add_option("--deq", ep.n_deq, "Dequeuing threads")->required();
  explore->add_option("--mutant", mutant, "none, no_swap_clear, skip_slot_zero, nonatomic_enq or tombstone_swap")
      ->capture_default_str();
  explore->add_option("--capacity", ep.capacity, "Array slots (default: max(4, enqueuers))");
  explore->add_option("--loop-bound", ep.loop_bound, "Scans allowed per dequeue")->capture_default_str();
  explore->add_option("--values", values, "Enqueued values, comma separated (default 1..enq)")->delimiter(',');
  explore->add_option("--max-states", ep.max_states, "Stop after this many model states");
  explore->add_flag("--oracle", run_oracle, "Also run the brute-force oracle on every complete history");
  explore->add_flag("--purity", purity, "Run every pending operation in isolation from every state");
  explore->add_flag("--no-dedup", no_dedup, "Walk every schedule instead of merging equal states");
  add_format(explore);
  explore->callback([&] {
    ep.mutant = mutant.c_str();
    ep.values = values.empty() ? nullptr : values.data();
    ep.n_values = values.size();
    ep.run_oracle = run_oracle;
    ep.check_purity = purity;
    ep.dedup = !no_dedup;
    qlin_result* r = nullptr;
    qlin_status s = qlin_explore(&ep, parse_format(format), &r);
    code = s == QLIN_OK ? finish(r) : report_error(s);
  });

  auto* divergence = app.add_subcommand("divergence", "Bounded non-termination harnesses");
  qlin_divergence_params dp;
  qlin_divergence_params_init(&dp);
  std::string harness;
  dp.loop_bound = 4;
  divergence->add_option("harness", harness, "vrepet or vord")->required()->check(CLI::IsMember({"vrepet", "vord"}));
  divergence->add_option("--v", dp.v, "vrepet: value of the single enqueue")->capture_default_str();
  divergence->add_option("--m", dp.m, "vrepet: threads running deq(v)")->capture_default_str();
  divergence->add_option("--k", dp.k, "Choice threads")->capture_default_str();
  divergence->add_option("--v1", dp.v1, "vord: first enqueued value")->capture_default_str();
  divergence->add_option("--v2", dp.v2, "vord: value the target dequeue waits for")->capture_default_str();
  divergence->add_option("--mutant", mutant, "Model mutant")->capture_default_str();
  divergence->add_option("--capacity", dp.capacity, "Array slots (default: one per enqueuing thread)");
  divergence->add_option("--loop-bound", dp.loop_bound, "Scans allowed per dequeue")->capture_default_str();
  divergence->add_option("--max-states", dp.max_states, "Stop after this many model states per program");
  add_format(divergence);
  divergence->callback([&] {
    dp.harness = harness.c_str();
    dp.mutant = mutant.c_str();
    qlin_result* r = nullptr;
    qlin_status s = qlin_divergence(&dp, parse_format(format), &r);
    code = s == QLIN_OK ? finish(r) : report_error(s);
  });

  auto* gen = app.add_subcommand("gen", "Print a random complete history with distinct enqueued values");
  std::uint64_t seed = 0;
  std::size_t n_enq = 3, n_deq = 3;
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--enq", n_enq, "Enqueue events")->capture_default_str();
  gen->add_option("--deq", n_deq, "Dequeue events")->capture_default_str();
  gen->callback([&] {
    char* text = nullptr;
    if (qlin_status s = qlin_generate(seed, n_enq, n_deq, &text); s != QLIN_OK) {
      code = report_error(s);
      return;
    }
    std::cout << text;
    qlin_string_free(text);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_error;
  }
  return code;
}
