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

#include "mcnc/json_io.hpp"

#include <algorithm>

#include "mcnc/error.hpp"

namespace mcnc::json {

namespace {

const json& field_of(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) fail_input(std::string(what) + ": missing \"" + key + "\"");
  return j.at(key);
}

std::size_t natural(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) fail_input(std::string(what) + ": expected a natural number");
  return j.get<std::size_t>();
}

const std::string& text(const json& j, const char* what) {
  if (!j.is_string()) fail_input(std::string(what) + ": expected a string");
  return j.get_ref<const std::string&>();
}

const json& array(const json& j, const char* what) {
  if (!j.is_array()) fail_input(std::string(what) + ": expected an array");
  return j;
}

json vector_to_json(const RowVector& v) { return json(v); }

RowVector vector_from_json(const json& j, std::size_t length, const PrimeField& field, const char* what) {
  array(j, what);
  if (j.size() != length) fail_input(std::string(what) + ": vector has the wrong length");
  RowVector out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail_input(std::string(what) + ": vector entries must be integers");
    const auto value = x.get<std::int64_t>();
    if (value < 0 || value >= static_cast<std::int64_t>(field.modulus()))
      fail_input(std::string(what) + ": entry " + std::to_string(value) + " is not a residue mod " +
                 std::to_string(field.modulus()));
    out.push_back(static_cast<Residue>(value));
  }
  return out;
}

json message_to_json(const MessageId& m) { return json::array({m.source, m.index}); }

MessageId message_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) fail_input("message id must be [source, j]");
  const auto index = natural(j[1], "message index");
  if (index == 0) fail_input("message index must be at least 1");
  return {text(j[0], "message source"), static_cast<std::uint32_t>(index)};
}

std::size_t column_of(const LinearCode& code, const json& j) {
  auto m = message_from_json(j);
  auto c = code.message_index(m);
  if (!c) fail_input("unknown message " + m.to_string());
  return *c;
}

std::size_t vertex_of(const Instance& inst, const json& j) { return inst.require_index(label_from_json(j)); }

bool same_instance(const Instance& a, const Instance& b) {
  if (a.vertices() != b.vertices() || a.edges() != b.edges()) return false;
  if (a.commodity_count() != b.commodity_count()) return false;
  for (std::size_t i = 0; i < a.commodity_count(); ++i)
    if (a.commodities()[i].source != b.commodities()[i].source || a.commodities()[i].sink != b.commodities()[i].sink)
      return false;
  return a.attach_labels() == b.attach_labels();
}

}  // namespace

json label_to_json(const Label& label) {
  switch (label.kind()) {
    case Label::Kind::Text:
      return label.text();
    case Label::Kind::Number:
      return label.number();
    case Label::Kind::Tuple: {
      json out = json::array();
      for (const auto& item : label.items()) out.push_back(label_to_json(item));
      return out;
    }
  }
  fail_internal("label_to_json: unknown label kind");
}

Label label_from_json(const json& j) {
  if (j.is_string()) return Label(j.get<std::string>());
  if (j.is_number_integer()) return Label(j.get<std::int64_t>());
  if (j.is_array()) {
    if (j.empty()) fail_input("tuple labels must be nonempty");
    std::vector<Label> items;
    for (const auto& x : j) items.push_back(label_from_json(x));
    return Label::tuple(std::move(items));
  }
  fail_input("labels must be strings, integers or arrays: " + j.dump());
}

json instance_to_json(const Instance& inst) {
  json out;
  json vertices = json::array();
  for (const auto& v : inst.vertices()) vertices.push_back(label_to_json(v));
  json edges = json::array();
  for (const auto& [a, b] : inst.edges())
    edges.push_back(json::array({label_to_json(inst.vertex(a)), label_to_json(inst.vertex(b))}));
  json commodities = json::array();
  for (const auto& c : inst.commodities()) commodities.push_back({{"source", c.source}, {"sink", c.sink}});
  json attach = json::object();
  for (const auto& [id, set] : inst.attach_labels()) {
    json members = json::array();
    for (const auto& v : set) members.push_back(label_to_json(v));
    attach[id] = std::move(members);
  }
  out["vertices"] = std::move(vertices);
  out["edges"] = std::move(edges);
  out["commodities"] = std::move(commodities);
  out["attach"] = std::move(attach);
  return out;
}

Instance instance_from_json(const json& j) {
  std::vector<Label> vertices;
  for (const auto& v : array(field_of(j, "vertices", "instance"), "vertices")) vertices.push_back(label_from_json(v));
  std::vector<std::pair<Label, Label>> edges;
  for (const auto& e : array(field_of(j, "edges", "instance"), "edges")) {
    if (!e.is_array() || e.size() != 2) fail_input("edges must be pairs");
    edges.emplace_back(label_from_json(e[0]), label_from_json(e[1]));
  }
  std::vector<Commodity> commodities;
  for (const auto& c : array(field_of(j, "commodities", "instance"), "commodities"))
    commodities.push_back({text(field_of(c, "source", "commodity"), "source"),
                           text(field_of(c, "sink", "commodity"), "sink")});
  const auto& attach_json = field_of(j, "attach", "instance");
  if (!attach_json.is_object()) fail_input("attach must be an object");
  std::map<std::string, std::vector<Label>> attach;
  for (const auto& [id, members] : attach_json.items()) {
    auto& out = attach[id];
    for (const auto& v : array(members, "attach set")) out.push_back(label_from_json(v));
  }
  return Instance(std::move(vertices), std::move(edges), std::move(commodities), std::move(attach));
}

json code_to_json(const Instance& inst, const LinearCode& code) {
  json out;
  out["field"] = code.field().modulus();
  out["rates"] = code.rates();
  json ordering = json::array();
  for (auto v : code.ordering()) ordering.push_back(label_to_json(inst.vertex(v)));
  out["ordering"] = std::move(ordering);
  json rows = json::array();
  for (const auto& v : inst.vertices()) rows.push_back(label_to_json(v));
  json cols = json::array();
  for (const auto& m : code.messages()) cols.push_back(message_to_json(m));
  json entries = json::array();
  for (std::size_t r = 0; r < code.matrix().rows(); ++r) {
    auto row = code.matrix().row(r);
    entries.push_back(json(std::vector<Residue>(row.begin(), row.end())));
  }
  out["matrix"] = {{"rows", std::move(rows)}, {"cols", std::move(cols)}, {"entries", std::move(entries)}};
  return out;
}

LinearCode code_from_json(const Instance& inst, const json& j) {
  const auto q = natural(field_of(j, "field", "code"), "field");
  if (q > 0xffffffffULL) fail_input("field modulus too large");
  PrimeField field(static_cast<std::uint32_t>(q));

  std::map<std::string, std::uint32_t> rates;
  const auto& rates_json = field_of(j, "rates", "code");
  if (!rates_json.is_object()) fail_input("rates must be an object");
  for (const auto& [s, r] : rates_json.items()) rates[s] = static_cast<std::uint32_t>(natural(r, "rate"));

  std::vector<std::size_t> ordering;
  for (const auto& v : array(field_of(j, "ordering", "code"), "ordering")) ordering.push_back(vertex_of(inst, v));

  const auto& mj = field_of(j, "matrix", "code");
  std::vector<MessageId> messages;
  for (const auto& c : array(field_of(mj, "cols", "matrix"), "cols")) messages.push_back(message_from_json(c));
  const auto& rows = array(field_of(mj, "rows", "matrix"), "rows");
  const auto& entries = array(field_of(mj, "entries", "matrix"), "entries");
  if (rows.size() != inst.vertex_count() || entries.size() != rows.size())
    fail_input("matrix must have one row per vertex");
  FieldMatrix matrix(field, inst.vertex_count(), messages.size());
  std::vector<std::uint8_t> seen(inst.vertex_count(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto v = vertex_of(inst, rows[r]);
    if (seen[v]) fail_input("matrix rows repeat a vertex");
    seen[v] = 1;
    const auto row = vector_from_json(entries[r], messages.size(), field, "matrix row");
    for (std::size_t c = 0; c < row.size(); ++c) matrix.set(v, c, row[c]);
  }
  return LinearCode(inst, field, std::move(rates), std::move(ordering), std::move(matrix), std::move(messages));
}

json witness_to_json(const Bundle& bundle) {
  const auto& inst = bundle.instance;
  const auto& code = bundle.code;
  json out = json::object();
  auto encoders_json = [&](const std::vector<RowVector>& enc) {
    json list = json::array();
    for (std::size_t v = 0; v < enc.size(); ++v)
      list.push_back({{"vertex", label_to_json(inst.vertex(v))}, {"vector", vector_to_json(enc[v])}});
    return list;
  };
  if (!bundle.encoders.empty()) out["encoders"] = encoders_json(bundle.encoders);
  if (bundle.decodability) {
    const auto& d = *bundle.decodability;
    json fixed = json::array();
    for (auto c : d.fixed) fixed.push_back(message_to_json(code.messages()[c]));
    json decoders = json::array();
    for (const auto& [c, vec] : d.decoders)
      decoders.push_back({{"message", message_to_json(code.messages()[c])}, {"vector", vector_to_json(vec)}});
    out["D"] = std::move(fixed);
    out["rate"] = d.rate;
    out["decoders"] = std::move(decoders);
  }
  if (bundle.certifiability) {
    const auto& c = *bundle.certifiability;
    json cliques = json::array();
    for (std::size_t v = 0; v < c.cliques.size(); ++v) {
      json members = json::array();
      for (auto w : c.cliques[v]) members.push_back(label_to_json(inst.vertex(w)));
      cliques.push_back({{"vertex", label_to_json(inst.vertex(v))}, {"members", std::move(members)}});
    }
    out["cliques"] = std::move(cliques);
    if (c.encoders != bundle.encoders) out["clique_encoders"] = encoders_json(c.encoders);
    out["rho"] = c.bound;
  }
  return out;
}

json bundle_to_json(const Bundle& bundle, bool with_instance) {
  json out;
  if (with_instance) out["instance"] = instance_to_json(bundle.instance);
  out["code"] = code_to_json(bundle.instance, bundle.code);
  out["witness"] = witness_to_json(bundle);
  if (bundle.provenance && bundle.provenance->left && bundle.provenance->right) {
    const auto& p = *bundle.provenance;
    out["provenance"] = {{"left", p.left_name},
                         {"right", p.right_name},
                         {"left_bundle", bundle_to_json(*p.left, true)},
                         {"right_bundle", bundle_to_json(*p.right, true)}};
  }
  return out;
}

Bundle bundle_from_json(const json& j, const std::optional<Instance>& inst) {
  if (!j.is_object()) fail_input("bundle must be an object");
  std::optional<Instance> embedded;
  if (j.contains("instance")) embedded = instance_from_json(j.at("instance"));
  if (!inst && !embedded) fail_input("bundle has no instance and none was supplied");
  if (inst && embedded && !same_instance(*inst, *embedded))
    fail_input("bundle's embedded instance differs from the supplied instance");
  Bundle b;
  b.instance = inst ? *inst : *embedded;
  b.code = code_from_json(b.instance, field_of(j, "code", "bundle"));
  const std::size_t n = b.instance.vertex_count();
  const auto& field = b.code.field();

  const json empty = json::object();
  const json& w = j.contains("witness") ? j.at("witness") : empty;
  if (!w.is_object()) fail_input("witness must be an object");
  auto read_encoders = [&](const json& list) {
    std::vector<RowVector> enc(n);
    std::vector<std::uint8_t> seen(n, 0);
    for (const auto& e : array(list, "encoders")) {
      const auto v = vertex_of(b.instance, field_of(e, "vertex", "encoder"));
      if (seen[v]) fail_input("encoder listed twice for a vertex");
      seen[v] = 1;
      enc[v] = vector_from_json(field_of(e, "vector", "encoder"), n, field, "encoder");
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) fail_input("encoders must cover every vertex");
    return enc;
  };
  if (w.contains("encoders")) b.encoders = read_encoders(w.at("encoders"));

  if (w.contains("D")) {
    DecodabilityWitness d;
    for (const auto& m : array(w.at("D"), "D")) d.fixed.push_back(column_of(b.code, m));
    std::sort(d.fixed.begin(), d.fixed.end());
    if (std::adjacent_find(d.fixed.begin(), d.fixed.end()) != d.fixed.end()) fail_input("D repeats a message");
    if (w.contains("decoders"))
      for (const auto& e : array(w.at("decoders"), "decoders")) {
        const auto c = column_of(b.code, field_of(e, "message", "decoder"));
        if (!d.decoders.emplace(c, vector_from_json(field_of(e, "vector", "decoder"), n, field, "decoder")).second)
          fail_input("decoder listed twice for a message");
      }
    d.rate = b.code.message_count() - d.fixed.size();
    if (w.contains("rate") && natural(w.at("rate"), "rate") != d.rate)
      fail_input("witness rate disagrees with |M| - |D|");
    b.decodability = std::move(d);
  }

  if (w.contains("rho")) {
    CertifiabilityWitness c;
    c.bound = natural(w.at("rho"), "rho");
    c.cliques.assign(n, {});
    std::vector<std::uint8_t> seen(n, 0);
    for (const auto& e : array(field_of(w, "cliques", "witness"), "cliques")) {
      const auto v = vertex_of(b.instance, field_of(e, "vertex", "clique"));
      if (seen[v]) fail_input("clique listed twice for a vertex");
      seen[v] = 1;
      for (const auto& m : array(field_of(e, "members", "clique"), "members"))
        c.cliques[v].push_back(vertex_of(b.instance, m));
      std::sort(c.cliques[v].begin(), c.cliques[v].end());
      c.cliques[v].erase(std::unique(c.cliques[v].begin(), c.cliques[v].end()), c.cliques[v].end());
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) fail_input("cliques must cover every vertex");
    c.encoders = w.contains("clique_encoders") ? read_encoders(w.at("clique_encoders")) : b.encoders;
    b.certifiability = std::move(c);
  }

  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    if (p.contains("left_bundle") && p.contains("right_bundle")) {
      auto left = std::make_shared<const Bundle>(bundle_from_json(p.at("left_bundle")));
      auto right = std::make_shared<const Bundle>(bundle_from_json(p.at("right_bundle")));
      const auto lay = product_layout(*left, *right);
      if (lay.n1 * lay.n2 != n || lay.n1 * lay.m2 + lay.m1 * lay.n2 != b.code.message_count())
        fail_input("provenance factors do not match the product's dimensions");
      b.provenance = std::make_shared<const Provenance>(
          Provenance{left, right, p.value("left", std::string("left")), p.value("right", std::string("right"))});
    }
  }
  return b;
}

json vertex_set_to_json(const Instance& inst, const VertexSet& set) {
  json out = json::array();
  for (auto v : set) out.push_back(label_to_json(inst.vertex(v)));
  return out;
}

json flow_to_json(const Instance& inst, const FlowResult& flow) {
  json paths = json::array();
  for (std::size_t i = 0; i < flow.paths.size(); ++i) {
    const auto& p = flow.paths[i];
    paths.push_back({{"commodity", p.commodity},
                     {"source", inst.commodities()[p.commodity].source},
                     {"vertices", vertex_set_to_json(inst, p.vertices)},
                     {"flow", format_rational(flow.flows[i])}});
  }
  return {{"value", format_rational(flow.value)}, {"exact", flow.exact}, {"variables", flow.variables},
          {"paths", std::move(paths)}};
}

json mincut_to_json(const Instance& inst, const MinCutResult& cut) {
  return {{"size", cut.size}, {"witness", vertex_set_to_json(inst, cut.witness)}};
}

json failure_to_json(const CheckFailure& failure) {
  return {{"clause", failure.clause}, {"subject", failure.subject}, {"detail", failure.detail}};
}

json saks_report_to_json(const SaksReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  json out = {{"n", r.n},
              {"k", r.k},
              {"r", r.r},
              {"vertices", r.vertices},
              {"predicted", r.predicted},
              {"coding_rate", r.coding_rate},
              {"rho", r.rho},
              {"upper_bound_cut", {{"size", r.upper_bound_cut.size()}, {"vertex_indices", r.upper_bound_cut}}},
              {"brute_force_cut", r.brute_force_cut ? json(*r.brute_force_cut) : json(nullptr)},
              {"flow_value", r.flow_value ? json(format_rational(*r.flow_value)) : json("not computed")},
              {"flow_exact", r.flow_exact},
              {"factor_order", r.factor_order},
              {"certifiability", {{"exhaustive", r.certify_exhaustive}, {"search_nodes", r.certify_nodes}}},
              {"checks", std::move(checks)},
              {"ok", r.ok()}};
  if (!r.flow_note.empty()) out["flow_note"] = r.flow_note;
  return out;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail_input(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mcnc::json
