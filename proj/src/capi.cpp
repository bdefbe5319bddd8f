#include "qlin/qlin.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "qlin/aspect_checker.hpp"
#include "qlin/explorer.hpp"
#include "qlin/generate.hpp"
#include "qlin/history.hpp"

struct qlin_history {
  qlin::History h;
};

struct qlin_result {
  qlin_outcome outcome = QLIN_INDETERMINATE;
  std::string report;
  std::vector<std::string> violations;
  std::optional<std::string> witness;
};

namespace {

using namespace qlin;

thread_local std::string last_error;

qlin_status fail(qlin_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, translating exceptions into status codes.
template <typename F>
qlin_status guarded(F&& f) {
  try {
    last_error.clear();
    return f();
  } catch (const ParseError& e) {
    return fail(QLIN_ERR_PARSE, "line " + std::to_string(e.line()) + ": " + e.reason());
  } catch (const BoundExceeded& e) {
    return fail(QLIN_ERR_BOUND, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(QLIN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(QLIN_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QLIN_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QLIN_ERR_INTERNAL, e.what());
  }
}

std::string describe(const Violation& v) {
  std::ostringstream out;
  out << to_string(kind_of(v));
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, VFresh>) {
          out << " d=" << x.deq;
          if (x.enq) out << " e=" << *x.enq;
        } else if constexpr (std::is_same_v<T, VRepet>) {
          out << " d=" << x.first << " d'=" << x.second;
        } else if constexpr (std::is_same_v<T, VOrd>) {
          out << " e1=" << x.e1 << " e2=" << x.e2 << " d2=" << x.d2;
          if (x.d1) out << " d1=" << *x.d1;
        } else {
          out << " d=" << x.deq << " alive=";
          for (std::size_t i = 0; i < x.alive_per_split.size(); ++i) out << (i ? "," : "") << x.alive_per_split[i];
        }
      },
      v);
  return out.str();
}

std::string indent(const std::string& text, const char* prefix) {
  std::string out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out += prefix + line + "\n";
  return out;
}

std::string schedule_text(const explore::Schedule& s) {
  std::string out;
  for (const auto& [thread, label] : s) out += thread + ":" + label + "\n";
  return out;
}

explore::Config build_config(const qlin_explore_params& p) {
  std::vector<std::uint64_t> values;
  if (p.values) values.assign(p.values, p.values + p.n_values);
  explore::Config cfg = explore::make_config(p.n_enq, p.n_deq, std::move(values));
  if (p.capacity) cfg.capacity = p.capacity;
  else cfg.capacity = std::max(cfg.capacity, p.n_enq);
  if (p.loop_bound) cfg.loop_bound = p.loop_bound;
  if (p.mutant) {
    auto m = hw::parse_mutant(p.mutant);
    if (!m) throw std::invalid_argument(std::string("unknown mutant '") + p.mutant + "'");
    cfg.mutant = *m;
  }
  explore::validate(cfg);
  return cfg;
}

qlin_result* check_report(const History& h, const Verdict& v, bool witness, qlin_format format) {
  auto r = std::make_unique<qlin_result>();
  for (const auto& x : v.violations) r->violations.push_back(to_line(x));
  if (v.witness) r->witness = serialize(v.witness->to_history());
  std::string& out = r->report;
  const bool lines = format == QLIN_FORMAT_LINES;
  switch (v.outcome) {
    case Outcome::linearizable:
      r->outcome = QLIN_LINEARIZABLE;
      out = lines ? "LINEARIZABLE\n" : "linearizable\n";
      if (witness && r->witness) {
        if (lines) {
          out += *r->witness;
        } else {
          if (v.completion && !(*v.completion == h)) out += "completion:\n" + indent(serialize(*v.completion), "  ");
          out += "witness:\n" + indent(*r->witness, "  ");
        }
      }
      break;
    case Outcome::violation:
      r->outcome = QLIN_VIOLATION;
      if (lines) {
        for (const auto& l : r->violations) out += l + "\n";
      } else {
        for (const auto& x : v.violations) out += "violation " + describe(x) + "\n";
        if (v.completion && !(*v.completion == h)) out += "in completion:\n" + indent(serialize(*v.completion), "  ");
      }
      break;
    case Outcome::indeterminate:
      r->outcome = QLIN_INDETERMINATE;
      out = (lines ? "INDETERMINATE " : "indeterminate: ") + v.reason + "\n";
      break;
  }
  return r.release();
}

std::string explore_report(const explore::Config& cfg, const explore::Report& rep, qlin_format format) {
  const bool lines = format == QLIN_FORMAT_LINES;
  std::ostringstream out;
  if (lines) {
    out << explore::summary_line(rep) << "\n";
    for (const auto& f : rep.findings) {
      out << "# schedule\n" << schedule_text(f.schedule) << "# history\n" << serialize(f.history);
      for (const auto& v : f.violations) out << to_line(v) << "\n";
      if (f.oracle_linearizable) out << (*f.oracle_linearizable ? "ORACLE linearizable\n" : "ORACLE not_linearizable\n");
    }
    for (const auto& p : rep.purity_violations)
      out << "PURITY " << p.thread << "\n# schedule\n" << schedule_text(p.schedule);
    for (const auto& i : rep.invariant_failures) out << "INVARIANT " << i << "\n";
    return out.str();
  }
  const auto& t = rep.traces;
  out << "threads:";
  for (const auto& th : cfg.threads) out << " " << th.name << "=" << hw::to_string(th.op);
  out << "\nmutant " << hw::to_string(cfg.mutant) << ", capacity " << cfg.capacity << ", loop bound " << cfg.loop_bound
      << "\n";
  out << "traces: " << explore::to_string(t.total()) << " (complete " << explore::to_string(t.complete)
      << ", bound hit " << explore::to_string(t.bound_hit) << ", blocked " << explore::to_string(t.blocked)
      << ", overflow " << explore::to_string(t.overflow) << ")\n";
  out << "model states: " << rep.states << "\n";
  out << "distinct complete histories: " << rep.histories << "\n";
  if (rep.oracle_checked)
    out << "oracle: " << rep.oracle_checked << " checked, " << rep.oracle_disagreements << " disagreements\n";
  if (rep.purity_checks)
    out << "purity: " << rep.purity_checks << " isolation runs, " << rep.purity_violations.size() << " violations\n";
  if (rep.partial) out << "stopped at the state cap; coverage is partial\n";
  std::size_t n = 0;
  for (const auto& f : rep.findings) {
    out << "\nviolating history " << ++n << ":\n";
    for (const auto& v : f.violations) out << "  violation " << describe(v) << "\n";
    if (f.oracle_linearizable) out << "  oracle: " << (*f.oracle_linearizable ? "linearizable" : "not linearizable") << "\n";
    out << "  schedule:\n" << indent(schedule_text(f.schedule), "    ");
    out << "  history:\n" << indent(serialize(f.history), "    ");
  }
  for (const auto& p : rep.purity_violations)
    out << "\nthread " << p.thread << " changes shared state in isolation after:\n"
        << indent(schedule_text(p.schedule), "    ");
  for (const auto& i : rep.invariant_failures) out << "\ninvariant broken: " << i << "\n";
  if (rep.clean() && !rep.partial) out << "no violations\n";
  return out.str();
}

std::string divergence_report(std::string_view harness, const explore::DivergenceReport& rep, qlin_format format) {
  std::ostringstream out;
  if (format == QLIN_FORMAT_LINES) {
    out << explore::summary_line(harness, rep) << "\n";
    if (rep.counterexample) {
      out << "# threads\n";
      for (const auto& t : rep.counterexample_threads) out << "# " << t.name << " " << hw::to_string(t.op) << "\n";
      out << "# schedule\n" << schedule_text(*rep.counterexample) << "# history\n"
          << serialize(*rep.counterexample_history);
    }
    return out.str();
  }
  out << harness << ": " << (rep.pass ? "pass" : "fail") << "\n";
  out << "programs: " << rep.programs << ", model states: " << rep.states << "\n";
  out << "traces: " << explore::to_string(rep.traces.total()) << " (complete "
      << explore::to_string(rep.traces.complete) << ", bound hit " << explore::to_string(rep.traces.bound_hit)
      << ", blocked " << explore::to_string(rep.traces.blocked) << ", overflow "
      << explore::to_string(rep.traces.overflow) << ")\n";
  out << "most target dequeues finished on one path: " << rep.max_terminated << "\n";
  if (rep.invariant_states)
    out << "slot invariant: checked in " << rep.invariant_states << " states, " << rep.invariant_failures
        << " failures\n";
  if (rep.partial) out << "stopped at the state cap; coverage is partial\n";
  if (rep.counterexample) {
    out << "\ncounterexample threads:\n";
    for (const auto& t : rep.counterexample_threads) out << "  " << t.name << " " << hw::to_string(t.op) << "\n";
    out << "schedule:\n" << indent(schedule_text(*rep.counterexample), "  ");
    out << "history:\n" << indent(serialize(*rep.counterexample_history), "  ");
  } else if (rep.traces.bound_hit) {
    out << "termination is only excluded within the loop bound\n";
  }
  return out.str();
}

}  // namespace

extern "C" {

const char* qlin_status_string(qlin_status s) {
  switch (s) {
    case QLIN_OK: return "ok";
    case QLIN_ERR_PARSE: return "parse error";
    case QLIN_ERR_IO: return "i/o error";
    case QLIN_ERR_BOUND: return "bound exceeded";
    case QLIN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QLIN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qlin_last_error(void) { return last_error.c_str(); }

void qlin_string_free(char* s) { std::free(s); }

qlin_status qlin_history_parse(const char* text, size_t len, qlin_history** out, size_t* line) {
  if (!out || (!text && len)) return fail(QLIN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (line) *line = 0;
  return guarded([&] {
    auto h = std::make_unique<qlin_history>();
    try {
      h->h = parse_history(std::string_view(text ? text : "", len));
    } catch (const ParseError& e) {
      if (line) *line = e.line();
      throw;
    }
    *out = h.release();
    return QLIN_OK;
  });
}

qlin_status qlin_history_load(const char* path, qlin_history** out, size_t* line) {
  if (!path || !out) return fail(QLIN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (line) *line = 0;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(QLIN_ERR_IO, std::string("cannot open ") + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return fail(QLIN_ERR_IO, std::string("cannot read ") + path);
  const std::string text = buf.str();
  return qlin_history_parse(text.data(), text.size(), out, line);
}

void qlin_history_free(qlin_history* h) { delete h; }

qlin_status qlin_history_serialize(const qlin_history* h, char** out) {
  if (!h || !out) return fail(QLIN_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(serialize(h->h));
    return *out ? QLIN_OK : fail(QLIN_ERR_INTERNAL, "out of memory");
  });
}

size_t qlin_history_event_count(const qlin_history* h) { return h ? h->h.events().size() : 0; }

int qlin_history_is_complete(const qlin_history* h) { return h && h->h.is_complete() ? 1 : 0; }

qlin_outcome qlin_result_outcome(const qlin_result* r) { return r ? r->outcome : QLIN_INDETERMINATE; }

const char* qlin_result_report(const qlin_result* r) { return r ? r->report.c_str() : ""; }

size_t qlin_result_violation_count(const qlin_result* r) { return r ? r->violations.size() : 0; }

const char* qlin_result_violation(const qlin_result* r, size_t i) {
  return r && i < r->violations.size() ? r->violations[i].c_str() : nullptr;
}

const char* qlin_result_witness(const qlin_result* r) { return r && r->witness ? r->witness->c_str() : nullptr; }

void qlin_result_free(qlin_result* r) { delete r; }

qlin_status qlin_check(const qlin_history* h, unsigned flags, qlin_format format, qlin_result** out) {
  if (!h || !out) return fail(QLIN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    CheckOptions options;
    options.all_violations = flags & QLIN_CHECK_ALL;
    *out = check_report(h->h, check_linearizable(h->h, options), flags & QLIN_CHECK_WITNESS, format);
    return QLIN_OK;
  });
}

qlin_status qlin_oracle(const qlin_history* h, size_t max_events, qlin_format format, qlin_result** out) {
  if (!h || !out) return fail(QLIN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const OracleResult o = brute_force_check(h->h, max_events);
    auto r = std::make_unique<qlin_result>();
    const bool lines = format == QLIN_FORMAT_LINES;
    if (o.linearizable) {
      r->outcome = QLIN_LINEARIZABLE;
      r->witness = serialize(o.witness->to_history());
      r->report = lines ? "LINEARIZABLE\n" + *r->witness : "linearizable\nwitness:\n" + indent(*r->witness, "  ");
    } else {
      r->outcome = QLIN_VIOLATION;
      r->report = lines ? "NOT_LINEARIZABLE\n" : "violation: no completion has a legal precedence-respecting order\n";
    }
    *out = r.release();
    return QLIN_OK;
  });
}

void qlin_explore_params_init(qlin_explore_params* p) {
  if (!p) return;
  *p = qlin_explore_params{};
  p->dedup = 1;
}

qlin_status qlin_explore(const qlin_explore_params* p, qlin_format format, qlin_result** out) {
  if (!p || !out) return fail(QLIN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const explore::Config cfg = build_config(*p);
    explore::ExploreOptions options;
    options.dedup = p->dedup;
    options.run_oracle = p->run_oracle;
    options.check_purity = p->check_purity;
    if (p->max_states) options.max_states = p->max_states;
    const explore::Report rep = explore::check_configuration(cfg, options);
    auto r = std::make_unique<qlin_result>();
    for (const auto& f : rep.findings)
      for (const auto& v : f.violations) r->violations.push_back(to_line(v));
    r->outcome = !rep.clean() ? QLIN_VIOLATION : rep.partial ? QLIN_INDETERMINATE : QLIN_LINEARIZABLE;
    r->report = explore_report(cfg, rep, format);
    *out = r.release();
    return QLIN_OK;
  });
}

void qlin_divergence_params_init(qlin_divergence_params* p) {
  if (!p) return;
  *p = qlin_divergence_params{};
  p->harness = "vrepet";
  p->v = 7;
  p->m = 2;
  p->v1 = 1;
  p->v2 = 2;
}

qlin_status qlin_divergence(const qlin_divergence_params* p, qlin_format format, qlin_result** out) {
  if (!p || !out || !p->harness) return fail(QLIN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    explore::DivergenceOptions options;
    if (p->loop_bound) options.loop_bound = p->loop_bound;
    options.capacity = p->capacity;
    if (p->max_states) options.max_states = p->max_states;
    if (p->mutant) {
      auto m = hw::parse_mutant(p->mutant);
      if (!m) throw std::invalid_argument(std::string("unknown mutant '") + p->mutant + "'");
      options.mutant = *m;
    }
    const std::string harness = p->harness;
    explore::DivergenceReport rep;
    if (harness == "vrepet") rep = explore::divergence_check_vrepet(p->v, p->m, p->k, options);
    else if (harness == "vord") rep = explore::divergence_check_vord(p->k, options, p->v1, p->v2);
    else throw std::invalid_argument("unknown harness '" + harness + "'");
    auto r = std::make_unique<qlin_result>();
    r->outcome = !rep.pass ? QLIN_VIOLATION : rep.partial ? QLIN_INDETERMINATE : QLIN_LINEARIZABLE;
    r->report = divergence_report(harness, rep, format);
    *out = r.release();
    return QLIN_OK;
  });
}

qlin_status qlin_generate(uint64_t seed, size_t n_enq, size_t n_deq, char** out) {
  if (!out) return fail(QLIN_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = dup(serialize(generate_history(seed, n_enq, n_deq)));
    return *out ? QLIN_OK : fail(QLIN_ERR_INTERNAL, "out of memory");
  });
}

}  // extern "C"
