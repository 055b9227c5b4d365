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

#include <cstdint>
#include <string>
#include <vector>

namespace mcnc {

/// Identifier for vertices and matrix rows/columns: a string, an integer,
/// or a tuple of labels. Product vertices are tuples.
class Label {
 public:
  enum class Kind { Text, Number, Tuple };

  Label() = default;
  Label(const char* text) : kind_(Kind::Text), text_(text) {}  // NOLINT
  Label(std::string text) : kind_(Kind::Text), text_(std::move(text)) {}  // NOLINT
  Label(std::int64_t number) : kind_(Kind::Number), number_(number) {}  // NOLINT
  Label(int number) : Label(static_cast<std::int64_t>(number)) {}  // NOLINT

  static Label tuple(std::vector<Label> items);

  Kind kind() const { return kind_; }
  bool is_tuple() const { return kind_ == Kind::Tuple; }
  const std::string& text() const { return text_; }
  std::int64_t number() const { return number_; }
  const std::vector<Label>& items() const { return items_; }

  /// Compact human form: `p1`, `3`, `(p1,p2)`.
  std::string to_string() const;

  friend bool operator==(const Label& a, const Label& b);
  friend bool operator<(const Label& a, const Label& b);
  friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }

 private:
  Kind kind_ = Kind::Text;
  std::string text_;
  std::int64_t number_ = 0;
  std::vector<Label> items_;
};

/// Label of the pair (a, b) in a product. A tuple on the left is flattened,
/// so k-fold left-folded products carry k-tuples.
Label product_label(const Label& a, const Label& b);

}  // namespace mcnc
