// Command line front end. Talks to the library exclusively through the C
// API so the snc.h surface stays honest: anything the CLI can do, a plain C
// caller can do too.
//
// Exit codes: 0 success, 1 failed verification or a broken run, 2 usage,
// parse and capacity problems.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <snc.h>

using json = nlohmann::json;

namespace {

struct PatchDeleter {
  void operator()(snc_patch* p) const { snc_patch_free(p); }
};
struct CircuitDeleter {
  void operator()(snc_circuit* c) const { snc_circuit_free(c); }
};
struct ScheduleDeleter {
  void operator()(snc_schedule* s) const { snc_schedule_free(s); }
};
using PatchPtr = std::unique_ptr<snc_patch, PatchDeleter>;
using CircuitPtr = std::unique_ptr<snc_circuit, CircuitDeleter>;
using SchedulePtr = std::unique_ptr<snc_schedule, ScheduleDeleter>;

// a malloc'd string from the library, freed on scope exit
struct Owned {
  char* ptr = nullptr;
  ~Owned() { snc_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

int exit_code(snc_status status) {
  switch (status) {
    case SNC_OK: return 0;
    case SNC_ERR_VERIFICATION:
    case SNC_ERR_IMPOSSIBLE_OUTCOME:
    case SNC_ERR_INTERNAL: return 1;
    default: return 2;
  }
}

int report_failure(snc_status status) {
  std::cerr << "error (" << snc_status_name(status) << "): " << snc_last_error() << "\n";
  return exit_code(status);
}

bool parse_patch_spec(const std::string& spec, int& rows, int& cols) {
  char extra = 0;
  return std::sscanf(spec.c_str(), "%dx%d%c", &rows, &cols, &extra) == 2 && rows > 0 && cols > 0;
}

// "-" reads stdin so circuits can be piped in
bool read_source(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream in(path);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return 0;
  }
  std::ofstream out(out_path);
  out << text << "\n";
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  return 0;
}

std::string bits_label(int value, int wires) {
  std::string s(std::max(wires, 1), '0');
  for (int w = 0; w < wires; ++w)
    if (value >> w & 1) s[s.size() - 1 - w] = '1'; // wire 0 rightmost
  return s;
}

struct CommonArgs {
  std::string patch_spec;
  std::string circuit_path;
  std::string mode = "live";
  std::string out_path;
  bool as_json = false;
  int indent = 2;
};

int make_patch(const CommonArgs& args, PatchPtr& patch) {
  int rows = 0, cols = 0;
  if (!parse_patch_spec(args.patch_spec, rows, cols)) {
    std::cerr << "error: --patch wants ROWSxCOLS, e.g. 5x4, got '" << args.patch_spec << "'\n";
    return 2;
  }
  snc_patch* raw = nullptr;
  snc_status st = snc_patch_create(rows, cols, &raw);
  if (st != SNC_OK) return report_failure(st);
  patch.reset(raw);
  return 0;
}

int load_circuit(const CommonArgs& args, CircuitPtr& circuit) {
  std::string text;
  if (!read_source(args.circuit_path, text)) {
    std::cerr << "error: cannot read " << args.circuit_path << "\n";
    return 2;
  }
  snc_circuit* raw = nullptr;
  snc_status st = snc_circuit_parse(text.c_str(), &raw);
  if (st != SNC_OK) return report_failure(st);
  circuit.reset(raw);
  return 0;
}

int compile_schedule(const CommonArgs& args, const PatchPtr& patch, const CircuitPtr& circuit,
                     SchedulePtr& schedule) {
  snc_schedule* raw = nullptr;
  snc_status st = snc_compile(patch.get(), circuit.get(), args.mode.c_str(), &raw);
  if (st != SNC_OK) return report_failure(st);
  schedule.reset(raw);
  return 0;
}

int cmd_describe(const CommonArgs& args) {
  PatchPtr patch;
  if (int rc = make_patch(args, patch)) return rc;
  if (args.as_json) {
    Owned payload;
    snc_status st = snc_patch_describe_json(patch.get(), args.indent, &payload.ptr);
    if (st != SNC_OK) return report_failure(st);
    return write_output(payload.str(), args.out_path);
  }
  int vertices = 0, edges = 0, sites = 0, wires = 0, cells = 0, rank = 0;
  snc_patch_stats(patch.get(), &vertices, &edges, &sites, &wires, &cells, &rank);
  std::ostringstream line;
  line << "patch " << args.patch_spec << ": " << vertices << " vertices, " << edges << " edges, "
       << sites << " qubits, " << wires << " wires x " << cells << " gate cells, cycle rank "
       << rank;
  return write_output(line.str(), args.out_path);
}

int cmd_resource(const CommonArgs& args, int cap) {
  PatchPtr patch;
  if (int rc = make_patch(args, patch)) return rc;
  Owned payload;
  snc_status st = snc_resource_report_json(patch.get(), cap, args.indent, &payload.ptr);
  if (st != SNC_OK) return report_failure(st);
  if (args.as_json) return write_output(payload.str(), args.out_path);
  json r = json::parse(payload.str());
  std::ostringstream line;
  line << "ground state on " << r["sites"] << " qubits: " << r["loop_configs"]
       << " loop configurations, energy " << r["energy"]["total"].get<double>() << " (expected "
       << r["energy"]["expected_total"].get<double>() << "), terms in ["
       << r["energy"]["min_term"].get<double>() << ", " << r["energy"]["max_term"].get<double>()
       << "], amplitude set deviation " << r["amplitudes"]["max_set_deviation"].get<double>();
  return write_output(line.str(), args.out_path);
}

int cmd_inspect(const CommonArgs& args) {
  CircuitPtr circuit;
  if (int rc = load_circuit(args, circuit)) return rc;
  int wires = 0, gates = 0;
  snc_circuit_wires(circuit.get(), &wires);
  snc_circuit_gate_count(circuit.get(), &gates);
  Owned text;
  snc_status st = snc_circuit_text(circuit.get(), &text.ptr);
  if (st != SNC_OK) return report_failure(st);
  if (args.as_json) {
    json payload = {{"wires", wires}, {"gates", gates}, {"text", text.str()}};
    return write_output(payload.dump(args.indent), args.out_path);
  }
  std::ostringstream out;
  out << "wires " << wires << ", gates " << gates << ", canonical form:\n" << text.str();
  std::string s = out.str();
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return write_output(s, args.out_path);
}

int cmd_compile(const CommonArgs& args) {
  PatchPtr patch;
  CircuitPtr circuit;
  SchedulePtr schedule;
  if (int rc = make_patch(args, patch)) return rc;
  if (int rc = load_circuit(args, circuit)) return rc;
  if (int rc = compile_schedule(args, patch, circuit, schedule)) return rc;
  Owned payload;
  snc_status st = snc_schedule_json(schedule.get(), args.indent, &payload.ptr);
  if (st != SNC_OK) return report_failure(st);
  return write_output(payload.str(), args.out_path);
}

int cmd_run(const CommonArgs& args, long shots, unsigned long long seed, bool exhaustive) {
  PatchPtr patch;
  CircuitPtr circuit;
  SchedulePtr schedule;
  if (int rc = make_patch(args, patch)) return rc;
  if (int rc = load_circuit(args, circuit)) return rc;
  if (int rc = compile_schedule(args, patch, circuit, schedule)) return rc;

  Owned payload;
  snc_status st = exhaustive
                      ? snc_run_exhaustive_json(patch.get(), schedule.get(), args.indent,
                                                &payload.ptr)
                      : snc_run_sampled_json(patch.get(), schedule.get(), shots, seed,
                                             args.indent, &payload.ptr);
  if (st != SNC_OK) return report_failure(st);
  if (args.as_json) return write_output(payload.str(), args.out_path);

  json r = json::parse(payload.str());
  int wires = r["wires"].get<int>();
  std::ostringstream out;
  if (exhaustive) {
    out << "exhaustive run, " << r["class_count"] << " outcome classes, " << std::scientific
        << r["branches"].get<double>() << std::defaultfloat << " branches\n";
    const auto& dist = r["distribution"];
    for (size_t i = 0; i < dist.size(); ++i)
      out << bits_label(int(i), wires) << " " << dist[i].get<double>() << "\n";
  } else {
    out << "sampled " << shots << " shots, seed " << seed << "\n";
    const auto& counts = r["counts"];
    for (size_t i = 0; i < counts.size(); ++i)
      out << bits_label(int(i), wires) << " " << counts[i].get<long>() << "\n";
  }
  std::string s = out.str();
  s.pop_back();
  return write_output(s, args.out_path);
}

int cmd_verify(const CommonArgs& args, double tol) {
  PatchPtr patch;
  CircuitPtr circuit;
  if (int rc = make_patch(args, patch)) return rc;
  if (int rc = load_circuit(args, circuit)) return rc;
  Owned payload;
  snc_status st = snc_check_against_ideal_json(patch.get(), circuit.get(), args.mode.c_str(),
                                               args.indent, &payload.ptr);
  if (st != SNC_OK) return report_failure(st);
  json r = json::parse(payload.str());
  double tvd = r["tvd"].get<double>();
  double total = r["total_probability"].get<double>();
  bool ok = tvd <= tol && std::abs(total - 1.0) <= tol;
  if (args.as_json) {
    r["tolerance"] = tol;
    r["pass"] = ok;
    write_output(r.dump(args.indent), args.out_path);
  } else {
    std::ostringstream line;
    line << "mode " << args.mode << ": tvd " << tvd << " (tolerance " << tol << "), total "
         << total << ", classes " << r["classes"].get<long>() << " -> "
         << (ok ? "pass" : "FAIL");
    write_output(line.str(), args.out_path);
  }
  return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"string-net correlation-space simulator and compiler"};
  app.set_version_flag("--version", snc_version());
  app.require_subcommand(1);

  CommonArgs args;
  long shots = 0;
  unsigned long long seed = 1;
  bool exhaustive = false;
  double tol = 1e-10;
  int cap = 0;

  auto add_patch = [&](CLI::App* cmd) {
    cmd->add_option("--patch", args.patch_spec, "patch size ROWSxCOLS")->required();
  };
  auto add_circuit = [&](CLI::App* cmd) {
    cmd->add_option("--circuit", args.circuit_path, "circuit file, - for stdin")->required();
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", args.as_json, "emit JSON instead of plain text");
    cmd->add_option("--indent", args.indent, "JSON indent, negative for compact");
    cmd->add_option("--out", args.out_path, "write to a file instead of stdout");
  };
  auto add_mode = [&](CLI::App* cmd) {
    cmd->add_option("--mode", args.mode, "coupling mode: live or precoupled")
        ->check(CLI::IsMember({"live", "precoupled"}));
  };

  CLI::App* describe = app.add_subcommand("describe", "lattice geometry of a patch");
  add_patch(describe);
  add_common(describe);

  CLI::App* resource = app.add_subcommand("resource", "ground state diagnostics (small patches)");
  add_patch(resource);
  add_common(resource);
  resource->add_option("--cap", cap, "statevector qubit cap override");

  CLI::App* inspect = app.add_subcommand("inspect", "parse a circuit and print it back");
  add_circuit(inspect);
  add_common(inspect);

  CLI::App* compile = app.add_subcommand("compile", "lay a circuit onto a patch");
  add_patch(compile);
  add_circuit(compile);
  add_mode(compile);
  add_common(compile);

  CLI::App* run = app.add_subcommand("run", "execute a compiled schedule");
  add_patch(run);
  add_circuit(run);
  add_mode(run);
  add_common(run);
  run->add_option("--shots", shots, "number of samples")->check(CLI::Range(1, 1000000000));
  run->add_option("--seed", seed, "sampling seed");
  run->add_flag("--exhaustive", exhaustive, "sum every branch instead of sampling");

  CLI::App* verify = app.add_subcommand("verify", "compare against the dense reference");
  add_patch(verify);
  add_circuit(verify);
  add_mode(verify);
  add_common(verify);
  verify->add_option("--tol", tol, "acceptance threshold on the TVD");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (run->parsed() && !exhaustive && shots <= 0) {
    std::cerr << "error: run needs --shots N (N >= 1) or --exhaustive\n";
    return 2;
  }

  if (describe->parsed()) return cmd_describe(args);
  if (resource->parsed()) return cmd_resource(args, cap);
  if (inspect->parsed()) return cmd_inspect(args);
  if (compile->parsed()) return cmd_compile(args);
  if (run->parsed()) return cmd_run(args, shots, seed, exhaustive);
  if (verify->parsed()) return cmd_verify(args, tol);
  return 2;
}
