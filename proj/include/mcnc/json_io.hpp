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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcnc/code.hpp"
#include "mcnc/flow.hpp"
#include "mcnc/product.hpp"
#include "mcnc/saks.hpp"

namespace mcnc::json {

using nlohmann::json;

// Labels: text as a string, numbers as integers, tuples as nested arrays.
json label_to_json(const Label& label);
Label label_from_json(const json& j);

// {"vertices", "edges", "commodities": [{"source", "sink"}], "attach": {id: [...]}}
json instance_to_json(const Instance& inst);
Instance instance_from_json(const json& j);

// {"field", "rates", "ordering", "matrix": {"rows", "cols": [[s, j]], "entries"}}
json code_to_json(const Instance& inst, const LinearCode& code);
LinearCode code_from_json(const Instance& inst, const json& j);

// {"encoders": [{"vertex", "vector"}], "D": [[s, j]], "rate", "decoders": [{"message", "vector"}],
//  "cliques": [{"vertex", "members"}], "clique_encoders"?, "rho"}
json witness_to_json(const Bundle& bundle);

// {"instance", "code", "witness", "provenance"?}. Provenance embeds both
// factor bundles so product certificates can be rebuilt after loading.
json bundle_to_json(const Bundle& bundle, bool with_instance = true);
/// Reads a bundle against `inst`, or against the embedded instance when
/// `inst` is empty. An embedded instance must agree with `inst`.
Bundle bundle_from_json(const json& j, const std::optional<Instance>& inst = std::nullopt);

json vertex_set_to_json(const Instance& inst, const VertexSet& set);
json flow_to_json(const Instance& inst, const FlowResult& flow);
json mincut_to_json(const Instance& inst, const MinCutResult& cut);
json saks_report_to_json(const SaksReport& report);
json failure_to_json(const CheckFailure& failure);

/// Parses text, mapping syntax errors to InvalidInput.
json parse(const std::string& text);
/// Two-space indentation with a trailing newline.
std::string dump(const json& j);

}  // namespace mcnc::json
