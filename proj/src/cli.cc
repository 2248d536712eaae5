// Copyright 2026 The stoqnp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stoqnp/cli.h"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "stoqnp/circuit2ham.h"
#include "stoqnp/errors.h"
#include "stoqnp/expansion_lab.h"
#include "stoqnp/serialize.h"
#include "stoqnp/spectral_oracle.h"
#include "stoqnp/stoq_decompose.h"
#include "stoqnp/verifiers.h"
#include "stoqnp/walk_graph.h"

namespace stoqnp {

namespace {

constexpr const char *kVersion = "0.1.0";

struct Globals {
  unsigned threads = 1;
  std::uint64_t seed = 0;
  double tol = tol::kEigenZero;
};

Json tolerance_table(const Globals &g) {
  return Json{{"eigen_zero", g.tol},
              {"degenerate_factor", tol::kDegenerateFactor},
              {"residual", tol::kResidual},
              {"zero_energy", tol::kZeroEnergy},
              {"dense_iterative_agreement", tol::kDenseIterativeAgreement},
              {"amplitude_tie", tol::kAmplitudeTie}};
}

struct Emitter {
  std::ostream &out;
  std::string command;
  std::vector<std::string> args;
  const Globals &globals;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  void emit(Json result) const {
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    Json manifest{{"tool", "stoqnp"},
                  {"version", kVersion},
                  {"command", command},
                  {"arguments", args},
                  {"seed", globals.seed},
                  {"threads", globals.threads},
                  {"tolerances", tolerance_table(globals)},
                  {"wall_time_seconds", wall}};
    out << Json{{"manifest", manifest}, {"result", std::move(result)}}.dump(2) << "\n";
  }
};

Json strings_json(const std::vector<DitString> &v, unsigned q) {
  Json a = Json::array();
  for (const auto &s : v) {
    a.push_back(string_to_json(s, q));
  }
  return a;
}

Json layer_json(const Layer &l) {
  return Json(l.terms);
}

OracleMethod parse_method(const std::string &m) {
  if (m == "dense") {
    return OracleMethod::kDense;
  }
  if (m == "iterative") {
    return OracleMethod::kIterative;
  }
  return OracleMethod::kAuto;
}

void write_or_print(const Json &doc, const std::string &path, std::ostream &out) {
  if (path.empty()) {
    out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(path);
  if (!f) {
    throw ParseError("cannot write '" + path + "'");
  }
  f << doc.dump(2) << "\n";
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Uniform stoquastic Hamiltonians: validation, walks, verifiers, expansion and oracles"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--threads", g.threads, "worker threads for trial loops")->envname("STOQNP_THREADS");
  app.add_option("--seed", g.seed, "base seed for randomised commands")->envname("STOQNP_SEED");
  app.add_option("--tol", g.tol, "eigenvalue / amplitude tolerance")->envname("STOQNP_TOL");

  std::string file, start, witness, mode = "np", what = "energy", method = "auto", target, output;
  std::optional<std::size_t> term;
  std::optional<std::uint64_t> radius, max_layers;
  std::optional<std::string> epsilon;
  std::uint64_t steps = 0, trials = 1;
  std::size_t cap = tol::kDefaultStateCap;
  bool trace = false, pinned = false, reduce = false;

  auto *validate = app.add_subcommand("validate", "check an instance file and report violations");
  validate->add_option("file", file)->required();

  auto *decompose = app.add_subcommand("decompose", "groundspace classes of each term");
  decompose->add_option("file", file)->required();
  decompose->add_option("--term", term);

  auto *walk = app.add_subcommand("walk", "seeded random walks from a start string");
  walk->add_option("file", file)->required();
  walk->add_option("--start", start)->required();
  walk->add_option("--steps", steps, "steps per walk (default 64 n m)");
  walk->add_option("--trials", trials);

  auto *bfs = app.add_subcommand("bfs", "shortest path to a bad string");
  bfs->add_option("file", file)->required();
  bfs->add_option("--start", start)->required();
  bfs->add_option("--radius", radius)->required();
  bfs->add_option("--cap", cap, "maximum strings visited");

  auto *verify = app.add_subcommand("verify", "run a verifier on a witness");
  verify->add_option("file", file)->required();
  verify->add_option("--mode", mode)->check(CLI::IsMember({"np", "ma", "pinned", "commuting", "negligible"}));
  verify->add_option("--witness", witness);
  verify->add_option("--epsilon", epsilon);
  verify->add_option("--radius", radius);
  verify->add_option("--steps", steps);
  verify->add_option("--trials", trials);
  verify->add_option("--cap", cap);

  auto *expand = app.add_subcommand("expand", "frustrated layers from a start string");
  expand->add_option("file", file)->required();
  expand->add_option("--start", start)->required();
  expand->add_option("--epsilon", epsilon)->required();
  expand->add_option("--max-layers", max_layers);
  expand->add_flag("--trace", trace, "include every intermediate support");

  auto *oracle = app.add_subcommand("oracle", "exact ground truth at desk scale");
  oracle->add_option("file", file)->required();
  oracle->add_option("--what", what)->check(CLI::IsMember({"energy", "ff", "minunsat", "witness"}));
  oracle->add_option("--method", method)->check(CLI::IsMember({"auto", "dense", "iterative"}));

  auto *compile_cmd = app.add_subcommand("compile", "circuit to Hamiltonian");
  compile_cmd->add_option("file", file)->required();
  compile_cmd->add_option("-o,--output", output);
  compile_cmd->add_flag("--pinned", pinned);
  compile_cmd->add_flag("--degree-reduce", reduce);

  auto *convert = app.add_subcommand("convert", "convert between Hamiltonian and set-constraint form");
  convert->add_option("file", file)->required();
  convert->add_option("--to", target)->required()->check(CLI::IsMember({"setcsp", "hamiltonian"}));
  convert->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    out << app.help();
    return kExitAccept;
  } catch (const CLI::ParseError &e) {
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  CLI::App *sub = app.get_subcommands().front();
  Emitter em{out, sub->get_name(), {}, g};
  for (int i = 1; i < argc; i++) {
    em.args.emplace_back(argv[i]);
  }

  try {
    if (sub == validate) {
      LoadResult r = load_instance(read_json_file(file), g.tol);
      em.emit(report_to_json(r.report));
      return r.report.ok() ? kExitAccept : kExitReject;
    }
    if (sub == compile_cmd) {
      ReversibleCircuit c = parse_circuit(read_json_file(file));
      if (reduce) {
        c = degree_reduce(c);
      }
      HamiltonianInstance h = compile(c, CompileOptions{pinned});
      Json doc = instance_to_json(h);
      if (!output.empty()) {
        write_or_print(doc, output, out);
      }
      LoadResult check = load_instance(doc, g.tol);
      Json result{{"num_dits", h.n()},  {"num_terms", h.m()},
                  {"locality", h.k()},  {"degree", h.d()},
                  {"output_file", output}, {"validation", report_to_json(check.report)}};
      if (reduce) {
        result["circuit"] = circuit_to_json(c);
      }
      if (output.empty()) {
        result["instance"] = doc;
      }
      em.emit(result);
      return kExitAccept;
    }
    if (sub == convert) {
      Json doc = read_json_file(file);
      Json converted;
      if (target == "setcsp") {
        HamiltonianInstance h = parse_instance(doc.dump(), g.tol);
        converted = setcsp_to_json(to_setcsp(h));
      } else {
        SetCSPInstance c = doc.contains("constraints") ? parse_setcsp(doc)
                                                       : to_setcsp(parse_instance(doc.dump(), g.tol));
        converted = instance_to_json(from_setcsp(c, g.tol));
      }
      write_or_print(converted, output, out);
      return kExitAccept;
    }

    HamiltonianInstance h = read_instance_file(file, g.tol);
    const unsigned q = h.q();

    if (sub == decompose) {
      Json terms = Json::array();
      for (std::size_t i = 0; i < h.m(); i++) {
        if (term && *term != i) {
          continue;
        }
        const Term &t = h.term(i);
        Json jt{{"term", i},
                {"qudits", t.qudits()},
                {"form", t.form() == TermForm::kSets ? "sets" : "matrix"},
                {"shift", t.shift()},
                {"uniform", t.uniform()},
                {"classes", Json::array()}};
        for (const auto &cls : t.classes()) {
          jt["classes"].push_back(strings_json(cls, q));
        }
        if (!t.uniform()) {
          jt["reason"] = t.nonuniform_reason();
          Json states = Json::array();
          for (const auto &s : t.groundspace_states()) {
            states.push_back(std::vector<double>(s.data(), s.data() + s.size()));
          }
          jt["states"] = states;
        }
        terms.push_back(jt);
      }
      if (term && terms.empty()) {
        throw std::invalid_argument("term index out of range");
      }
      em.emit(Json{{"terms", terms}});
      return kExitAccept;
    }
    if (sub == walk) {
      VerifierConfig cfg;
      cfg.steps = steps;
      cfg.trials = trials;
      cfg.seed = g.seed;
      cfg.threads = g.threads;
      MaStatistics s = ma_verify(h, DitString::parse(start, q), cfg);
      Json result{{"accept_rate", s.accept_rate}, {"accepts", s.accepts}, {"trials", s.trials}, {"steps", s.steps}};
      result["sample_reject_path"] = s.sample_reject ? to_json(*s.sample_reject, q) : Json(nullptr);
      if (s.sample_reject_trial) {
        result["sample_reject_trial"] = *s.sample_reject_trial;
      }
      em.emit(result);
      return kExitAccept;
    }
    if (sub == bfs) {
      auto p = bfs_to_bad(DitString::parse(start, q), h, *radius, cap);
      em.emit(Json{{"found", p.has_value()}, {"radius", *radius}, {"path", p ? to_json(*p, q) : Json(nullptr)}});
      return p ? kExitReject : kExitAccept;
    }
    if (sub == verify) {
      VerifierConfig cfg;
      if (epsilon) {
        cfg.epsilon = parse_rational(*epsilon);
      }
      cfg.radius = radius;
      cfg.steps = steps;
      cfg.trials = trials;
      cfg.seed = g.seed;
      cfg.threads = g.threads;
      cfg.state_cap = cap;
      cfg.tol = g.tol;
      if (mode != "pinned" && witness.empty()) {
        throw std::invalid_argument("--witness is required for mode " + mode);
      }
      Json result{{"mode", mode}};
      Outcome outcome;
      if (mode == "ma") {
        MaStatistics s = ma_verify(h, DitString::parse(witness, q), cfg);
        result["accept_rate"] = s.accept_rate;
        result["accepts"] = s.accepts;
        result["trials"] = s.trials;
        result["steps"] = s.steps;
        result["sample_reject_path"] = s.sample_reject ? to_json(*s.sample_reject, q) : Json(nullptr);
        outcome = s.accepts == s.trials ? Outcome::kAccept : Outcome::kReject;
        result["outcome"] = outcome == Outcome::kAccept ? "accept" : "reject";
      } else {
        WalkVerdict v;
        if (mode == "np") {
          result["radius"] = resolve_radius(h, cfg);
          v = np_verify(h, DitString::parse(witness, q), cfg);
        } else if (mode == "negligible") {
          if (!radius) {
            throw std::invalid_argument("--radius is required for mode negligible");
          }
          result["radius"] = *radius;
          v = negligible_verify(h, DitString::parse(witness, q), *radius, cfg);
        } else if (mode == "pinned") {
          result["radius"] = resolve_radius(h, cfg);
          v = pinned_verify(h, cfg);
        } else {
          v = commuting_verify(h, DitString::parse(witness, q), cfg);
        }
        outcome = v.outcome;
        result["verdict"] = to_json(v, q);
        result["outcome"] = outcome == Outcome::kAccept ? "accept" : "reject";
      }
      em.emit(result);
      return outcome == Outcome::kAccept ? kExitAccept : kExitReject;
    }
    if (sub == expand) {
      Rational eps = parse_rational(*epsilon);
      DitString x = DitString::parse(start, q);
      LayersRun run = layers_to_bad(x, h, eps, max_layers);
      Json layers = Json::array();
      for (std::size_t l = 0; l < run.layers.size(); l++) {
        Json jl{{"terms", layer_json(run.layers[l])},
                {"support_size", run.supports[l + 1].size()},
                {"growth", to_string(run.growth[l])}};
        if (trace) {
          jl["support"] = strings_json(run.supports[l + 1].strings(), q);
        }
        layers.push_back(jl);
      }
      Json result{{"epsilon", to_string(eps)},
                  {"found", run.found},
                  {"exhausted", run.exhausted},
                  {"layers", layers},
                  {"layer_bound", theoretical_radius(eps, h.k(), h.d(), q).layers}};
      if (run.found) {
        result["bad_string"] = string_to_json(*run.bad_string, q);
        result["apex"] = *run.apex;
        LightCone cone = lightcone(run.layers, *run.apex, h);
        Json cone_layers = Json::array();
        for (const auto &l : cone.layers) {
          cone_layers.push_back(layer_json(l));
        }
        result["lightcone"] = Json{{"layers", cone_layers}, {"qudit_sets", cone.qudit_sets}};
        result["path"] = to_json(reconstruct_path(x, cone, h), q);
      }
      em.emit(result);
      return kExitAccept;
    }
    if (sub == oracle) {
      Json result{{"what", what}};
      if (what == "energy") {
        GroundReport r = ground_energy(h, parse_method(method));
        result["lambda_min"] = r.lambda_min;
        result["method"] = to_string(r.method);
        result["residual"] = r.residual;
        result["frustration_free"] = r.lambda_min <= tol::kZeroEnergy;
      } else if (what == "ff") {
        FrustrationFreeCertificate c = exact_frustration_free(h);
        result["frustration_free"] = c.frustration_free;
        result["components"] = c.components;
        if (c.frustration_free) {
          result["component"] = strings_json(c.component, q);
          result["component_energy"] = to_string(c.component_energy);
        }
      } else if (what == "minunsat") {
        MinUnsat mu = min_unsat_over_subsets(to_setcsp(h));
        result["min_unsat"] = to_string(mu.value);
        result["argmin"] = strings_json(mu.argmin, q);
      } else {
        result["witness"] = string_to_json(witness_from_groundstate(h, parse_method(method)), q);
      }
      em.emit(result);
      return kExitAccept;
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace stoqnp
