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

#include "mcnc/mcnc.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>

#include "mcnc/error.hpp"
#include "mcnc/json_io.hpp"
#include "mcnc/random.hpp"

struct mcnc_instance {
  mcnc::Instance value;
};

struct mcnc_bundle {
  std::shared_ptr<const mcnc::Bundle> value;
};

namespace {

using mcnc::json::json;

thread_local std::string g_last_error;

template <typename F>
mcnc_status guard(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const mcnc::Error& e) {
    g_last_error = e.what();
    switch (e.kind()) {
      case mcnc::ErrorKind::InvalidInput:
        return MCNC_INVALID_INPUT;
      case mcnc::ErrorKind::BudgetExceeded:
        return MCNC_BUDGET_EXCEEDED;
      case mcnc::ErrorKind::Internal:
        return MCNC_INTERNAL;
    }
    return MCNC_INTERNAL;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return MCNC_INVALID_INPUT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MCNC_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MCNC_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = copy_string(s);
}

template <typename T>
void require(const T* p, const char* what) {
  if (!p) mcnc::fail_input(std::string(what) + " is null");
}

mcnc::SaksOptions saks_options(const mcnc_options* o) {
  mcnc::SaksOptions s;
  if (!o) return s;
  if (o->mode == MCNC_MODE_SAMPLED && !o->has_seed) mcnc::fail_input("sampled mode needs an explicit seed");
  if (o->mode == MCNC_MODE_EXHAUSTIVE) s.force_mode = mcnc::CertifyMode::Kind::Exhaustive;
  if (o->mode == MCNC_MODE_SAMPLED) s.force_mode = mcnc::CertifyMode::Kind::Sampled;
  s.samples = o->samples;
  s.seed = o->seed;
  s.exhaustive_limit = o->exhaustive_limit;
  s.skip_bruteforce = o->skip_bruteforce != 0;
  s.bruteforce_limit = o->bruteforce_limit;
  s.max_paths = o->max_paths;
  s.simulation_trials = o->simulation_trials;
  return s;
}

std::vector<mcnc::RoutedPath> parse_paths(const mcnc::Instance& inst, const char* text) {
  require(text, "paths");
  const json j = mcnc::json::parse(text);
  if (!j.is_array()) mcnc::fail_input("paths must be an array");
  std::vector<mcnc::RoutedPath> out;
  for (const auto& p : j) {
    if (!p.is_object() || !p.contains("commodity") || !p.contains("vertices"))
      mcnc::fail_input("each path needs \"commodity\" and \"vertices\"");
    mcnc::RoutedPath r;
    const auto& c = p.at("commodity");
    if (c.is_number_unsigned()) {
      r.commodity = c.get<std::size_t>();
    } else if (c.is_string()) {
      bool found = false;
      for (std::size_t i = 0; i < inst.commodity_count() && !found; ++i)
        if (inst.commodities()[i].source == c.get<std::string>()) {
          r.commodity = i;
          found = true;
        }
      if (!found) mcnc::fail_input("unknown commodity " + c.get<std::string>());
    } else {
      mcnc::fail_input("commodity must be an index or a source id");
    }
    if (!p.at("vertices").is_array()) mcnc::fail_input("path vertices must be an array");
    for (const auto& v : p.at("vertices")) r.vertices.push_back(inst.require_index(mcnc::json::label_from_json(v)));
    out.push_back(std::move(r));
  }
  return out;
}

mcnc::CertifyMode certify_mode(const mcnc::Instance& inst, const mcnc_options& o) {
  bool exhaustive = o.mode == MCNC_MODE_EXHAUSTIVE ||
                    (o.mode == MCNC_MODE_AUTO && inst.vertex_count() <= o.exhaustive_limit);
  if (o.mode == MCNC_MODE_SAMPLED && !o.has_seed) mcnc::fail_input("sampled mode needs an explicit seed");
  return exhaustive ? mcnc::CertifyMode::exhaustive() : mcnc::CertifyMode::sampled(o.samples, o.seed);
}

json check(const std::string& name, const std::optional<mcnc::CheckFailure>& failure, const std::string& ok_detail) {
  json out = {{"name", name}, {"ok", !failure}};
  if (failure) {
    out["clause"] = failure->clause;
    out["subject"] = failure->subject;
    out["detail"] = failure->detail;
  } else {
    out["detail"] = ok_detail;
  }
  return out;
}

}  // namespace

extern "C" {

mcnc_options mcnc_default_options(void) {
  mcnc_options o;
  o.mode = MCNC_MODE_AUTO;
  o.samples = 200;
  o.seed = 1;
  o.has_seed = 0;
  o.exhaustive_limit = 22;
  o.skip_bruteforce = 0;
  o.bruteforce_limit = 22;
  o.max_paths = 50000;
  o.simulation_trials = 8;
  return o;
}

const char* mcnc_last_error(void) { return g_last_error.c_str(); }
void mcnc_string_free(char* s) { std::free(s); }
const char* mcnc_version(void) { return "1.0.0"; }

mcnc_status mcnc_instance_from_json(const char* text, mcnc_instance** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    auto inst = mcnc::json::instance_from_json(mcnc::json::parse(text));
    *out = new mcnc_instance{std::move(inst)};
    return MCNC_OK;
  });
}

mcnc_status mcnc_instance_to_json(const mcnc_instance* inst, char** out) {
  return guard([&] {
    require(inst, "instance");
    put(out, mcnc::json::dump(mcnc::json::instance_to_json(inst->value)));
    return MCNC_OK;
  });
}

void mcnc_instance_free(mcnc_instance* inst) { delete inst; }

size_t mcnc_instance_vertex_count(const mcnc_instance* inst) { return inst ? inst->value.vertex_count() : 0; }

mcnc_status mcnc_instance_summary(const mcnc_instance* inst, char** out) {
  return guard([&] {
    require(inst, "instance");
    const auto& v = inst->value;
    json commodities = json::array();
    for (const auto& c : v.commodities())
      commodities.push_back({{"source", c.source},
                             {"sink", c.sink},
                             {"f(source)", mcnc::json::vertex_set_to_json(v, v.attach(c.source))},
                             {"f(sink)", mcnc::json::vertex_set_to_json(v, v.attach(c.sink))}});
    json j = {{"vertices", v.vertex_count()},
              {"edges", v.edges().size()},
              {"commodities", std::move(commodities)},
              {"|f(S)|", v.source_attach_union().size()},
              {"|f(T)|", v.sink_attach_union().size()}};
    put(out, mcnc::json::dump(j));
    return MCNC_OK;
  });
}

mcnc_status mcnc_path_instance(size_t n, mcnc_instance** out) {
  return guard([&] {
    require(out, "out");
    *out = new mcnc_instance{mcnc::path_instance(n)};
    return MCNC_OK;
  });
}

mcnc_status mcnc_instance_product(const mcnc_instance* a, const mcnc_instance* b, mcnc_instance** out) {
  return guard([&] {
    require(a, "left instance");
    require(b, "right instance");
    require(out, "out");
    const std::size_t size = a->value.vertex_count() * b->value.vertex_count();
    if (size > mcnc::kConstructionBudget)
      mcnc::fail_budget("product of " + std::to_string(size) + " vertices exceeds the construction budget");
    *out = new mcnc_instance{mcnc::strong_product(a->value, b->value)};
    return MCNC_OK;
  });
}

mcnc_status mcnc_bundle_from_json(const char* text, const mcnc_instance* inst, mcnc_bundle** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    std::optional<mcnc::Instance> given;
    if (inst) given = inst->value;
    auto b = mcnc::json::bundle_from_json(mcnc::json::parse(text), given);
    *out = new mcnc_bundle{std::make_shared<const mcnc::Bundle>(std::move(b))};
    return MCNC_OK;
  });
}

mcnc_status mcnc_bundle_to_json(const mcnc_bundle* bundle, int with_instance, char** out) {
  return guard([&] {
    require(bundle, "bundle");
    put(out, mcnc::json::dump(mcnc::json::bundle_to_json(*bundle->value, with_instance != 0)));
    return MCNC_OK;
  });
}

void mcnc_bundle_free(mcnc_bundle* bundle) { delete bundle; }

mcnc_status mcnc_bundle_instance(const mcnc_bundle* bundle, mcnc_instance** out) {
  return guard([&] {
    require(bundle, "bundle");
    require(out, "out");
    *out = new mcnc_instance{bundle->value->instance};
    return MCNC_OK;
  });
}

mcnc_status mcnc_path_code(const mcnc_instance* inst, const char* paths_json, uint32_t modulus, mcnc_bundle** out) {
  return guard([&] {
    require(inst, "instance");
    require(out, "out");
    auto paths = parse_paths(inst->value, paths_json);
    auto b = mcnc::disjoint_path_code(inst->value, paths, mcnc::PrimeField(modulus));
    *out = new mcnc_bundle{std::make_shared<const mcnc::Bundle>(std::move(b))};
    return MCNC_OK;
  });
}

mcnc_status mcnc_bundle_product(const mcnc_bundle* a, const mcnc_bundle* b, const char* left_name,
                                const char* right_name, mcnc_bundle** out) {
  return guard([&] {
    require(a, "left bundle");
    require(b, "right bundle");
    require(out, "out");
    const std::size_t size = a->value->instance.vertex_count() * b->value->instance.vertex_count();
    if (size > mcnc::kConstructionBudget)
      mcnc::fail_budget("product of " + std::to_string(size) + " vertices exceeds the construction budget");
    auto p = mcnc::product_bundle(a->value, b->value, left_name ? left_name : "left",
                                  right_name ? right_name : "right");
    *out = new mcnc_bundle{std::make_shared<const mcnc::Bundle>(std::move(p))};
    return MCNC_OK;
  });
}

mcnc_status mcnc_saks_bundle(size_t n, size_t k, mcnc_bundle** out) {
  return guard([&] {
    require(out, "out");
    *out = new mcnc_bundle{std::make_shared<const mcnc::Bundle>(mcnc::saks_bundle(n, k))};
    return MCNC_OK;
  });
}

mcnc_status mcnc_min_multicut(const mcnc_instance* inst, size_t max_vertices, char** out) {
  return guard([&] {
    require(inst, "instance");
    auto cut = mcnc::min_multicut(inst->value, max_vertices);
    put(out, mcnc::json::dump(mcnc::json::mincut_to_json(inst->value, cut)));
    return MCNC_OK;
  });
}

mcnc_status mcnc_minimal_multicuts(const mcnc_instance* inst, char** out) {
  return guard([&] {
    require(inst, "instance");
    auto cuts = mcnc::minimal_multicuts(inst->value);
    json list = json::array();
    for (const auto& c : cuts) list.push_back(mcnc::json::vertex_set_to_json(inst->value, c));
    put(out, mcnc::json::dump({{"count", cuts.size()}, {"cuts", std::move(list)}}));
    return MCNC_OK;
  });
}

mcnc_status mcnc_flow(const mcnc_instance* inst, size_t max_len, size_t max_paths, char** out) {
  return guard([&] {
    require(inst, "instance");
    auto flow = mcnc::max_multicommodity_flow(inst->value, {max_len, max_paths});
    put(out, mcnc::json::dump(mcnc::json::flow_to_json(inst->value, flow)));
    return MCNC_OK;
  });
}

mcnc_status mcnc_check_code(const mcnc_bundle* bundle, const mcnc_options* options, char** out) {
  return guard([&] {
    require(bundle, "bundle");
    const mcnc_options o = options ? *options : mcnc_default_options();
    const auto& b = *bundle->value;
    const auto& inst = b.instance;
    json checks = json::array();

    auto validity = mcnc::check_valid(inst, b.code);
    checks.push_back(check("validity", validity.failure, "encoding vector found at every vertex"));
    if (!b.encoders.empty())
      checks.push_back(check("encoder witness", mcnc::verify_encoders(inst, b.code, b.encoders), "supplied a_v hold"));
    if (b.decodability) {
      checks.push_back(check("decoder witness", mcnc::verify_decoders(inst, b.code, *b.decodability),
                             "rate " + std::to_string(b.decodability->rate)));
      auto solved = mcnc::check_decodable(inst, b.code, b.decodability->fixed);
      checks.push_back(check("decodability", solved.failure, "decoder solved for every message outside D"));
    }
    json cert = nullptr;
    if (b.certifiability) {
      auto mode = certify_mode(inst, o);
      auto rep = mcnc::check_certifiable(inst, b.code, *b.certifiability, mode);
      checks.push_back(check("certifiability", rep.failure, "rho " + std::to_string(rep.bound)));
      cert = {{"rho", rep.bound},
              {"exhaustive", rep.exhaustive},
              {"search_nodes", rep.search_nodes},
              {"seed", rep.exhaustive ? json(nullptr) : json(mode.seed)}};
      if (rep.violating_cut) {
        cert["violating_cut"] = mcnc::json::vertex_set_to_json(inst, *rep.violating_cut);
        cert["violating_rank"] = rep.violating_rank;
      }
    }
    bool ok = true;
    for (const auto& c : checks) {
      if (!ok || c.at("ok").get<bool>()) continue;
      ok = false;
      g_last_error = c.at("name").get<std::string>() + ": " + c.at("clause").get<std::string>() + " violated at " +
                     c.at("subject").get<std::string>() + ": " + c.at("detail").get<std::string>();
    }
    put(out, mcnc::json::dump({{"ok", ok}, {"checks", std::move(checks)}, {"certifiability", std::move(cert)}}));
    return ok ? MCNC_OK : MCNC_CHECK_FAILED;
  });
}

mcnc_status mcnc_simulate(const mcnc_bundle* bundle, size_t trials, uint64_t seed, char** out) {
  return guard([&] {
    require(bundle, "bundle");
    const auto& b = *bundle->value;
    if (!b.decodability) mcnc::fail_input("simulation needs a decodability witness");
    std::vector<mcnc::RowVector> encoders = b.encoders;
    if (encoders.empty()) {
      auto v = mcnc::check_valid(b.instance, b.code);
      if (!v.ok) {
        g_last_error = v.failure->to_string();
        put(out, mcnc::json::dump({{"ok", false}, {"failure", mcnc::json::failure_to_json(*v.failure)}}));
        return MCNC_CHECK_FAILED;
      }
      encoders = v.encoders;
    }
    mcnc::Rng rng(seed);
    std::size_t passed = 0;
    json failures = json::array();
    for (std::size_t t = 0; t < trials; ++t) {
      mcnc::RowVector msg(b.code.message_count());
      for (auto& x : msg) x = static_cast<mcnc::Residue>(rng.below(b.code.field().modulus()));
      auto rep = mcnc::simulate(b.instance, b.code, encoders, *b.decodability, msg);
      if (rep.ok) {
        ++passed;
        continue;
      }
      json bad = {{"trial", t}, {"messages", msg}};
      for (const auto& n : rep.nodes)
        if (!n.ok) {
          bad["node"] = mcnc::json::label_to_json(b.instance.vertex(n.vertex));
          break;
        }
      for (const auto& m : rep.messages)
        if (!m.ok) {
          bad["message"] = b.code.messages()[m.column].to_string();
          break;
        }
      failures.push_back(std::move(bad));
    }
    const bool ok = passed == trials;
    if (!ok) g_last_error = std::to_string(trials - passed) + " of " + std::to_string(trials) + " trials failed";
    put(out, mcnc::json::dump(
                 {{"ok", ok}, {"trials", trials}, {"seed", seed}, {"passed", passed}, {"failures", failures}}));
    return ok ? MCNC_OK : MCNC_CHECK_FAILED;
  });
}

static mcnc_status report_status(const mcnc::SaksReport& rep) {
  if (const auto* bad = rep.first_failure()) {
    g_last_error = bad->name + ": " + bad->detail;
    return MCNC_CHECK_FAILED;
  }
  return MCNC_OK;
}

mcnc_status mcnc_saks(size_t n, size_t k, const mcnc_options* options, char** out, char** table) {
  return guard([&] {
    auto rep = mcnc::verify_corollary1(n, k, saks_options(options));
    put(out, mcnc::json::dump(mcnc::json::saks_report_to_json(rep)));
    put(table, mcnc::format_report_table({rep}));
    return report_status(rep);
  });
}

mcnc_status mcnc_corollary2(const mcnc_instance* inst, const char* paths_json, size_t k,
                            const mcnc_options* options, char** out, char** table) {
  return guard([&] {
    require(inst, "instance");
    auto paths = parse_paths(inst->value, paths_json);
    auto rep = mcnc::verify_corollary2(inst->value, paths, k, saks_options(options));
    put(out, mcnc::json::dump(mcnc::json::saks_report_to_json(rep)));
    put(table, mcnc::format_report_table({rep}));
    return report_status(rep);
  });
}

mcnc_status mcnc_report(const mcnc_bundle* bundle, const mcnc_options* options, char** out, char** table) {
  return guard([&] {
    require(bundle, "bundle");
    const mcnc_options o = options ? *options : mcnc_default_options();
    const auto& b = *bundle->value;
    const auto& inst = b.instance;
    json j;
    std::vector<std::pair<std::string, std::string>> rows;
    bool consistent = true;

    const auto sinks = inst.sink_attach_union();
    const bool sinks_cut = mcnc::is_multicut(inst, sinks);
    j["upper_bound_cut"] = {{"size", sinks.size()}, {"is_multicut", sinks_cut}};
    rows.emplace_back("|f(T)|", std::to_string(sinks.size()) + (sinks_cut ? "" : " (not a multicut)"));

    std::optional<std::size_t> rate, rho, brute;
    if (b.decodability) rate = b.decodability->rate;
    if (b.certifiability) rho = b.certifiability->bound;
    j["coding_rate"] = rate ? json(*rate) : json(nullptr);
    j["rho"] = rho ? json(*rho) : json(nullptr);
    rows.emplace_back("coding rate", rate ? std::to_string(*rate) : "-");
    rows.emplace_back("rho", rho ? std::to_string(*rho) : "-");

    if (!o.skip_bruteforce && inst.vertex_count() <= o.bruteforce_limit) {
      brute = mcnc::min_multicut(inst, o.bruteforce_limit).size;
      j["brute_force_cut"] = *brute;
      rows.emplace_back("brute-force cut", std::to_string(*brute));
    } else {
      j["brute_force_cut"] = nullptr;
      rows.emplace_back("brute-force cut", "-");
    }

    try {
      auto flow = mcnc::max_multicommodity_flow(inst, {0, o.max_paths});
      j["flow_value"] = mcnc::format_rational(flow.value);
      rows.emplace_back("flow", mcnc::format_rational(flow.value));
      if (sinks_cut && flow.value > mcnc::Rational(sinks.size())) consistent = false;
    } catch (const mcnc::Error& e) {
      if (e.kind() != mcnc::ErrorKind::BudgetExceeded) throw;
      j["flow_value"] = "not computed";
      rows.emplace_back("flow", "not computed");
    }

    if (b.provenance && b.certifiability && sinks_cut) {
      auto cert = mcnc::build_b_certificate(b, sinks);
      j["b_certificate"] = {{"rank", cert.rank}, {"diagonal_rank_sum", cert.diagonal_rank_sum}, {"ok", cert.ok()}};
      rows.emplace_back("B rank on f(T)", std::to_string(cert.rank) + (cert.ok() ? "" : " (certificate failed)"));
      consistent = consistent && cert.ok();
    }
    if (rho && sinks_cut && *rho > sinks.size()) consistent = false;
    if (rho && brute && *rho > *brute) consistent = false;
    if (brute && sinks_cut && *brute > sinks.size()) consistent = false;
    j["consistent"] = consistent;
    if (!consistent) g_last_error = "report: bounds are inconsistent (see JSON)";

    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    std::ostringstream t;
    for (const auto& [k, v] : rows) t << k << std::string(width - k.size() + 2, ' ') << v << "\n";
    put(out, mcnc::json::dump(j));
    put(table, t.str());
    return consistent ? MCNC_OK : MCNC_CHECK_FAILED;
  });
}

}  // extern "C"
