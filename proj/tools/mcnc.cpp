// Copyright 2026 The mcnc Authors.
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

// mcnc command line: builds instances and codes, verifies witnesses, measures
// flow and cut values. Talks to the library only through mcnc.h.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mcnc/mcnc.h"

namespace {

// Exit codes.
constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Failure {
  int code;
};

int exit_code(mcnc_status s) {
  switch (s) {
    case MCNC_OK:
      return kOk;
    case MCNC_CHECK_FAILED:
      return kCheckFailed;
    case MCNC_INVALID_INPUT:
      return kUsage;
    case MCNC_BUDGET_EXCEEDED:
      return kBudget;
    case MCNC_INTERNAL:
      return 4;
  }
  return 4;
}

// Throws Failure for statuses that carry no result.
void expect(mcnc_status s) {
  if (s == MCNC_OK || s == MCNC_CHECK_FAILED) return;
  std::cerr << "error: " << mcnc_last_error() << "\n";
  throw Failure{exit_code(s)};
}

class OwnedString {
 public:
  OwnedString() = default;
  OwnedString(const OwnedString&) = delete;
  OwnedString& operator=(const OwnedString&) = delete;
  ~OwnedString() { mcnc_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }

 private:
  char* p_ = nullptr;
};

struct InstanceHandle {
  mcnc_instance* p = nullptr;
  ~InstanceHandle() { mcnc_instance_free(p); }
};

struct BundleHandle {
  mcnc_bundle* p = nullptr;
  ~BundleHandle() { mcnc_bundle_free(p); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw Failure{kUsage};
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Writes through a temporary file in the target directory, then renames.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out.flush()) {
      std::cerr << "error: cannot write " << path << "\n";
      throw Failure{kUsage};
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    std::cerr << "error: cannot write " << path << "\n";
    throw Failure{kUsage};
  }
}

void load_instance(const std::string& path, InstanceHandle& h) { expect(mcnc_instance_from_json(read_file(path).c_str(), &h.p)); }

void load_bundle(const std::string& path, const mcnc_instance* inst, BundleHandle& h) {
  expect(mcnc_bundle_from_json(read_file(path).c_str(), inst, &h.p));
}

bool is_bundle_file(const std::string& text) {
  // A bundle carries a "code" member; instances never do.
  return text.find("\"code\"") != std::string::npos;
}

struct ModeFlags {
  std::string mode = "auto";
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  std::size_t exhaustive_limit = 22;
  bool skip_bruteforce = false;
  std::size_t bruteforce_limit = 22;
  std::size_t max_paths = 50000;
  CLI::Option* seed_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--mode", mode, "certifiability check: auto, exhaustive or sampled")
        ->check(CLI::IsMember({"auto", "exhaustive", "sampled"}));
    app->add_option("--samples", samples, "random multicuts in sampled mode");
    seed_opt = app->add_option("--seed", seed, "seed for sampled mode (required there)");
    app->add_option("--exhaustive-limit", exhaustive_limit, "largest |V| checked exhaustively in auto mode");
    app->add_flag("--skip-bruteforce", skip_bruteforce, "skip the brute-force minimum multicut");
    app->add_option("--bruteforce-limit", bruteforce_limit, "largest |V| for the brute-force cut");
    app->add_option("--max-paths", max_paths, "path budget of the flow LP");
  }

  mcnc_options options() const {
    mcnc_options o = mcnc_default_options();
    o.mode = mode == "exhaustive" ? MCNC_MODE_EXHAUSTIVE : mode == "sampled" ? MCNC_MODE_SAMPLED : MCNC_MODE_AUTO;
    if (o.mode == MCNC_MODE_SAMPLED && seed_opt->count() == 0) {
      std::cerr << "error: --mode sampled needs --seed\n";
      throw Failure{kUsage};
    }
    o.samples = samples;
    if (seed_opt->count()) {
      o.seed = seed;
      o.has_seed = 1;
    }
    o.exhaustive_limit = exhaustive_limit;
    o.skip_bruteforce = skip_bruteforce ? 1 : 0;
    o.bruteforce_limit = bruteforce_limit;
    o.max_paths = max_paths;
    return o;
  }
};

int finish(mcnc_status s, const std::string& json_text, const std::string& output) {
  write_output(output, json_text);
  if (s == MCNC_CHECK_FAILED) std::cerr << "check failed: " << mcnc_last_error() << "\n";
  return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Node-capacitated multicut instances, linear network codes and rank certificates."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mcnc_version()));

  std::string a_path, b_path, output;
  std::size_t n = 0, k = 0;

  auto* validate = app.add_subcommand("validate", "parse an instance and print its summary");
  validate->add_option("instance", a_path)->required();

  auto* product = app.add_subcommand("product", "strong product of two instances or two bundles");
  std::string left_name, right_name;
  product->add_option("a", a_path)->required();
  product->add_option("b", b_path)->required();
  product->add_option("-o,--output", output, "output file (stdout when omitted)");
  product->add_option("--left-name", left_name, "provenance name of the first factor");
  product->add_option("--right-name", right_name, "provenance name of the second factor");

  auto* mincut = app.add_subcommand("mincut", "brute-force minimum multicut");
  std::size_t max_vertices = 22;
  mincut->add_option("instance", a_path)->required();
  mincut->add_option("--max-vertices", max_vertices, "refuse instances with more vertices");
  mincut->add_option("-o,--output", output);

  auto* minimal = app.add_subcommand("minimal-cuts", "all inclusion-minimal multicuts");
  minimal->add_option("instance", a_path)->required();
  minimal->add_option("-o,--output", output);

  auto* flow = app.add_subcommand("flow", "exact maximum multicommodity flow");
  std::size_t max_len = 0, max_paths = 50000;
  flow->add_option("instance", a_path)->required();
  flow->add_option("--max-len", max_len, "longest path in vertices (default |V|, exact)");
  flow->add_option("--max-paths", max_paths, "path budget");
  flow->add_option("-o,--output", output);

  auto* path_code = app.add_subcommand("path-code", "disjoint-path code from routed paths");
  std::uint32_t modulus = 2;
  path_code->add_option("instance", a_path)->required();
  path_code->add_option("paths", b_path, "JSON list of {commodity, vertices}")->required();
  path_code->add_option("--field", modulus, "prime field modulus");
  path_code->add_option("-o,--output", output);

  ModeFlags check_flags;
  auto* check = app.add_subcommand("check-code", "verify a bundle's code and witnesses");
  check->add_option("instance", a_path)->required();
  check->add_option("bundle", b_path)->required();
  check->add_option("-o,--output", output);
  check_flags.attach(check);

  auto* simulate = app.add_subcommand("simulate", "run the code on random messages");
  std::size_t trials = 100;
  std::uint64_t sim_seed = 0;
  simulate->add_option("instance", a_path)->required();
  simulate->add_option("bundle", b_path)->required();
  simulate->add_option("--trials", trials);
  simulate->add_option("--seed", sim_seed)->required();
  simulate->add_option("-o,--output", output);

  ModeFlags saks_flags;
  std::string format = "table";
  auto* saks = app.add_subcommand("saks", "verify the k-fold product of P_n");
  saks->add_option("n", n)->required();
  saks->add_option("k", k)->required();
  saks->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
  saks->add_option("-o,--output", output, "also write the JSON report here");
  saks_flags.attach(saks);

  ModeFlags cor2_flags;
  auto* cor2 = app.add_subcommand("corollary2", "verify the k-fold product of a disjoint-path code");
  cor2->add_option("instance", a_path)->required();
  cor2->add_option("paths", b_path)->required();
  cor2->add_option("k", k)->required();
  cor2->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
  cor2->add_option("-o,--output", output, "also write the JSON report here");
  cor2_flags.attach(cor2);

  ModeFlags report_flags;
  auto* report = app.add_subcommand("report", "flow value, coding rate, rho, |f(T)| and brute-force cut");
  report->add_option("instance", a_path)->required();
  report->add_option("bundle", b_path)->required();
  report->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
  report->add_option("-o,--output", output, "also write the JSON report here");
  report_flags.attach(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    OwnedString out, table;
    if (*validate) {
      InstanceHandle inst;
      load_instance(a_path, inst);
      expect(mcnc_instance_summary(inst.p, out.out()));
      std::cout << out.str();
      return kOk;
    }
    if (*product) {
      const std::string a_text = read_file(a_path), b_text = read_file(b_path);
      if (is_bundle_file(a_text) != is_bundle_file(b_text)) {
        std::cerr << "error: product needs two instances or two bundles\n";
        return kUsage;
      }
      if (is_bundle_file(a_text)) {
        BundleHandle a, b, p;
        expect(mcnc_bundle_from_json(a_text.c_str(), nullptr, &a.p));
        expect(mcnc_bundle_from_json(b_text.c_str(), nullptr, &b.p));
        const std::string ln = left_name.empty() ? a_path : left_name;
        const std::string rn = right_name.empty() ? b_path : right_name;
        expect(mcnc_bundle_product(a.p, b.p, ln.c_str(), rn.c_str(), &p.p));
        expect(mcnc_bundle_to_json(p.p, 1, out.out()));
      } else {
        InstanceHandle a, b, p;
        expect(mcnc_instance_from_json(a_text.c_str(), &a.p));
        expect(mcnc_instance_from_json(b_text.c_str(), &b.p));
        expect(mcnc_instance_product(a.p, b.p, &p.p));
        expect(mcnc_instance_to_json(p.p, out.out()));
      }
      write_output(output, out.str());
      return kOk;
    }
    if (*mincut) {
      InstanceHandle inst;
      load_instance(a_path, inst);
      expect(mcnc_min_multicut(inst.p, max_vertices, out.out()));
      write_output(output, out.str());
      return kOk;
    }
    if (*minimal) {
      InstanceHandle inst;
      load_instance(a_path, inst);
      expect(mcnc_minimal_multicuts(inst.p, out.out()));
      write_output(output, out.str());
      return kOk;
    }
    if (*flow) {
      InstanceHandle inst;
      load_instance(a_path, inst);
      expect(mcnc_flow(inst.p, max_len, max_paths, out.out()));
      write_output(output, out.str());
      return kOk;
    }
    if (*path_code) {
      InstanceHandle inst;
      BundleHandle b;
      load_instance(a_path, inst);
      expect(mcnc_path_code(inst.p, read_file(b_path).c_str(), modulus, &b.p));
      expect(mcnc_bundle_to_json(b.p, 1, out.out()));
      write_output(output, out.str());
      return kOk;
    }
    if (*check) {
      const mcnc_options o = check_flags.options();
      InstanceHandle inst;
      BundleHandle b;
      load_instance(a_path, inst);
      load_bundle(b_path, inst.p, b);
      const mcnc_status s = mcnc_check_code(b.p, &o, out.out());
      expect(s);
      return finish(s, out.str(), output);
    }
    if (*simulate) {
      InstanceHandle inst;
      BundleHandle b;
      load_instance(a_path, inst);
      load_bundle(b_path, inst.p, b);
      const mcnc_status s = mcnc_simulate(b.p, trials, sim_seed, out.out());
      expect(s);
      return finish(s, out.str(), output);
    }
    auto emit_report = [&](mcnc_status s) {
      expect(s);
      if (format == "json") {
        std::cout << out.str();
      } else {
        std::cout << table.str();
      }
      if (!output.empty()) write_output(output, out.str());
      if (s == MCNC_CHECK_FAILED) std::cerr << "check failed: " << mcnc_last_error() << "\n";
      return exit_code(s);
    };
    if (*saks) {
      const mcnc_options o = saks_flags.options();
      return emit_report(mcnc_saks(n, k, &o, out.out(), table.out()));
    }
    if (*cor2) {
      const mcnc_options o = cor2_flags.options();
      InstanceHandle inst;
      load_instance(a_path, inst);
      return emit_report(mcnc_corollary2(inst.p, read_file(b_path).c_str(), k, &o, out.out(), table.out()));
    }
    if (*report) {
      const mcnc_options o = report_flags.options();
      InstanceHandle inst;
      BundleHandle b;
      load_instance(a_path, inst);
      load_bundle(b_path, inst.p, b);
      return emit_report(mcnc_report(b.p, &o, out.out(), table.out()));
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
