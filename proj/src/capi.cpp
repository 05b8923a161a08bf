// C ABI wrapper around the core library. Exceptions stop here: every entry
// point funnels through guard(), which turns snc::error codes into statuses
// and stashes the message for snc_last_error. Handles own their wrapped
// value; JSON strings are malloc'd so plain C callers can free them.

#define SNC_API __attribute__((visibility("default")))
#include "snc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <nlohmann/json.hpp>

#include "compiler.hpp"
#include "errors.hpp"
#include "harness.hpp"
#include "lattice.hpp"
#include "resource.hpp"

using json = nlohmann::json;

struct snc_patch {
  snc::Patch value;
};
struct snc_circuit {
  snc::Circuit value;
};
struct snc_schedule {
  snc::Schedule value;
};

namespace {

thread_local std::string g_last_error;

snc_status to_status(snc::errc code) {
  switch (code) {
    case snc::errc::invalid_argument: return SNC_ERR_INVALID_ARGUMENT;
    case snc::errc::range: return SNC_ERR_RANGE;
    case snc::errc::resource_limit: return SNC_ERR_RESOURCE_LIMIT;
    case snc::errc::parse: return SNC_ERR_PARSE;
    case snc::errc::capacity: return SNC_ERR_CAPACITY;
    case snc::errc::impossible_outcome: return SNC_ERR_IMPOSSIBLE_OUTCOME;
    case snc::errc::verification: return SNC_ERR_VERIFICATION;
    case snc::errc::internal: return SNC_ERR_INTERNAL;
  }
  return SNC_ERR_INTERNAL;
}

template <class F>
snc_status guard(F&& body) {
  try {
    return body();
  } catch (const snc::error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SNC_ERR_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SNC_ERR_INTERNAL;
  }
}

snc_status fail_null(const char* what) {
  g_last_error = std::string(what) + " must not be null";
  return SNC_ERR_INVALID_ARGUMENT;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

snc_status emit(const json& payload, int indent, char** out) {
  *out = dup_string(payload.dump(indent < 0 ? -1 : indent));
  return SNC_OK;
}

snc::CouplingMode parse_mode(const char* mode) {
  std::string m = mode;
  if (m == "live") return snc::CouplingMode::live;
  if (m == "precoupled") return snc::CouplingMode::precoupled;
  snc::fail(snc::errc::invalid_argument, "coupling mode must be 'live' or 'precoupled', got '" + m + "'");
}

json run_result_json(const snc::RunResult& rr) {
  json classes = json::array();
  for (const snc::BranchClass& cls : rr.classes) {
    json frames = json::array();
    for (const snc::PauliFrame& f : cls.frames)
      frames.push_back({{"v", f.v}, {"r", f.r}, {"enc", f.enc}});
    json outcomes = json::object();
    for (auto [site, m] : cls.outcomes) outcomes[std::to_string(site)] = m;
    classes.push_back({{"probability", cls.probability},
                       {"multiplicity", cls.multiplicity},
                       {"decoded", cls.decoded},
                       {"frames", std::move(frames)},
                       {"outcomes", std::move(outcomes)}});
  }
  return {{"wires", rr.wires},
          {"distribution", rr.distribution},
          {"total_probability", rr.total_probability},
          {"branches", rr.branches},
          {"class_count", rr.classes.size()},
          {"classes", std::move(classes)}};
}

} // namespace

extern "C" {

const char* snc_version(void) { return "1.0.0"; }

const char* snc_status_name(snc_status status) {
  switch (status) {
    case SNC_OK: return "ok";
    case SNC_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case SNC_ERR_RANGE: return "range";
    case SNC_ERR_RESOURCE_LIMIT: return "resource-limit";
    case SNC_ERR_PARSE: return "parse";
    case SNC_ERR_CAPACITY: return "capacity";
    case SNC_ERR_IMPOSSIBLE_OUTCOME: return "impossible-outcome";
    case SNC_ERR_VERIFICATION: return "verification";
    case SNC_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* snc_last_error(void) { return g_last_error.c_str(); }

void snc_string_free(char* str) { std::free(str); }

snc_status snc_patch_create(int rows, int cols, snc_patch** out) {
  if (!out) return fail_null("out");
  return guard([&] {
    *out = new snc_patch{snc::Patch(rows, cols)};
    return SNC_OK;
  });
}

void snc_patch_free(snc_patch* patch) { delete patch; }

snc_status snc_patch_stats(const snc_patch* patch, int* vertices, int* edges, int* sites,
                           int* wires, int* gate_cells, int* cycle_rank) {
  if (!patch) return fail_null("patch");
  const snc::Patch& p = patch->value;
  if (vertices) *vertices = p.vertex_count();
  if (edges) *edges = p.edge_count();
  if (sites) *sites = p.site_count();
  if (wires) *wires = p.wire_count();
  if (gate_cells) *gate_cells = p.gate_cells_per_wire();
  if (cycle_rank) *cycle_rank = p.cycle_rank();
  return SNC_OK;
}

snc_status snc_patch_describe_json(const snc_patch* patch, int indent, char** out) {
  if (!patch) return fail_null("patch");
  if (!out) return fail_null("out");
  return guard([&] { return emit(json::parse(patch->value.describe_json()), indent, out); });
}

snc_status snc_resource_report_json(const snc_patch* patch, int qubit_cap, int indent,
                                    char** out) {
  if (!patch) return fail_null("patch");
  if (!out) return fail_null("out");
  return guard([&] {
    const snc::Patch& p = patch->value;
    int cap = qubit_cap > 0 ? qubit_cap : snc::Statevector::default_cap;
    snc::Statevector state = snc::ground_state(p, cap);
    snc::EnergyReport energy = snc::energy_report(p, state);
    double min_term = 1.0, max_term = 1.0;
    for (const auto* terms : {&energy.plaquette_terms, &energy.vertex_terms, &energy.edge_terms})
      for (double t : *terms) {
        min_term = std::min(min_term, t);
        max_term = std::max(max_term, t);
      }
    // amplitude profile: every entry should sit on 0 or +-1/sqrt(loop_configs)
    double mag = 1.0 / std::sqrt(double(std::uint64_t{1} << p.cycle_rank()));
    std::uint64_t nonzero = 0;
    double set_deviation = 0.0;
    for (std::uint64_t idx = 0; idx < state.dim(); ++idx) {
      snc::cx a = state.amp(idx);
      double dev = std::min({std::abs(a), std::abs(a - mag), std::abs(a + mag)});
      set_deviation = std::max(set_deviation, dev);
      if (std::abs(a) > mag / 2) ++nonzero;
    }
    json payload = {{"rows", p.rows()},
                    {"cols", p.cols()},
                    {"sites", p.site_count()},
                    {"cycle_rank", p.cycle_rank()},
                    {"loop_configs", std::uint64_t{1} << p.cycle_rank()},
                    {"energy",
                     {{"total", energy.total},
                      {"expected_total",
                       -double(p.plaquette_count() + p.vertex_count() + p.edge_count())},
                      {"min_term", min_term},
                      {"max_term", max_term}}},
                    {"amplitudes",
                     {{"nonzero", nonzero},
                      {"magnitude", mag},
                      {"max_set_deviation", set_deviation}}}};
    return emit(payload, indent, out);
  });
}

snc_status snc_circuit_parse(const char* text, snc_circuit** out) {
  if (!text) return fail_null("text");
  if (!out) return fail_null("out");
  return guard([&] {
    *out = new snc_circuit{snc::parse_circuit(text)};
    return SNC_OK;
  });
}

void snc_circuit_free(snc_circuit* circuit) { delete circuit; }

snc_status snc_circuit_wires(const snc_circuit* circuit, int* out) {
  if (!circuit) return fail_null("circuit");
  if (!out) return fail_null("out");
  *out = circuit->value.wires;
  return SNC_OK;
}

snc_status snc_circuit_gate_count(const snc_circuit* circuit, int* out) {
  if (!circuit) return fail_null("circuit");
  if (!out) return fail_null("out");
  *out = static_cast<int>(circuit->value.gates.size());
  return SNC_OK;
}

snc_status snc_circuit_text(const snc_circuit* circuit, char** out) {
  if (!circuit) return fail_null("circuit");
  if (!out) return fail_null("out");
  return guard([&] {
    *out = dup_string(circuit->value.to_text());
    return SNC_OK;
  });
}

snc_status snc_ideal_distribution_json(const snc_circuit* circuit, int indent, char** out) {
  if (!circuit) return fail_null("circuit");
  if (!out) return fail_null("out");
  return guard([&] {
    json payload = {{"wires", circuit->value.wires},
                    {"distribution", snc::ideal_distribution(circuit->value)}};
    return emit(payload, indent, out);
  });
}

snc_status snc_compile(const snc_patch* patch, const snc_circuit* circuit, const char* mode,
                       snc_schedule** out) {
  if (!patch) return fail_null("patch");
  if (!circuit) return fail_null("circuit");
  if (!mode) return fail_null("mode");
  if (!out) return fail_null("out");
  return guard([&] {
    snc::Schedule s = snc::compile_circuit(patch->value, circuit->value, parse_mode(mode));
    *out = new snc_schedule{std::move(s)};
    return SNC_OK;
  });
}

void snc_schedule_free(snc_schedule* schedule) { delete schedule; }

snc_status snc_schedule_json(const snc_schedule* schedule, int indent, char** out) {
  if (!schedule) return fail_null("schedule");
  if (!out) return fail_null("out");
  return guard([&] { return emit(json::parse(schedule->value.to_json()), indent, out); });
}

snc_status snc_run_exhaustive_json(const snc_patch* patch, const snc_schedule* schedule,
                                   int indent, char** out) {
  if (!patch) return fail_null("patch");
  if (!schedule) return fail_null("schedule");
  if (!out) return fail_null("out");
  return guard([&] {
    snc::RunResult rr = snc::run_exhaustive(patch->value, schedule->value);
    return emit(run_result_json(rr), indent, out);
  });
}

snc_status snc_run_sampled_json(const snc_patch* patch, const snc_schedule* schedule, long shots,
                                unsigned long long seed, int indent, char** out) {
  if (!patch) return fail_null("patch");
  if (!schedule) return fail_null("schedule");
  if (!out) return fail_null("out");
  return guard([&] {
    snc::SampleResult sr = snc::run_sampled(patch->value, schedule->value, shots, seed);
    json payload = {
        {"wires", sr.wires}, {"shots", sr.shots}, {"seed", seed}, {"counts", sr.counts}};
    return emit(payload, indent, out);
  });
}

snc_status snc_check_against_ideal_json(const snc_patch* patch, const snc_circuit* circuit,
                                        const char* mode, int indent, char** out) {
  if (!patch) return fail_null("patch");
  if (!circuit) return fail_null("circuit");
  if (!mode) return fail_null("mode");
  if (!out) return fail_null("out");
  return guard([&] {
    snc::AgreementReport rep =
        snc::check_against_ideal(patch->value, circuit->value, parse_mode(mode));
    json payload = {{"mode", mode},
                    {"tvd", rep.tvd},
                    {"total_probability", rep.total_probability},
                    {"classes", rep.classes},
                    {"branches", rep.branches},
                    {"engine", rep.engine},
                    {"ideal", rep.ideal}};
    return emit(payload, indent, out);
  });
}

} // extern "C"
