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

#include "mcnc/label.hpp"

namespace mcnc {

Label Label::tuple(std::vector<Label> items) {
  Label l;
  l.kind_ = Kind::Tuple;
  l.items_ = std::move(items);
  return l;
}

std::string Label::to_string() const {
  switch (kind_) {
    case Kind::Text:
      return text_;
    case Kind::Number:
      return std::to_string(number_);
    case Kind::Tuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) out += ',';
        out += items_[i].to_string();
      }
      return out + ")";
    }
  }
  return {};
}

bool operator==(const Label& a, const Label& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Label::Kind::Text:
      return a.text_ == b.text_;
    case Label::Kind::Number:
      return a.number_ == b.number_;
    case Label::Kind::Tuple:
      return a.items_ == b.items_;
  }
  return false;
}

bool operator<(const Label& a, const Label& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  switch (a.kind_) {
    case Label::Kind::Text:
      return a.text_ < b.text_;
    case Label::Kind::Number:
      return a.number_ < b.number_;
    case Label::Kind::Tuple:
      return a.items_ < b.items_;
  }
  return false;
}

Label product_label(const Label& a, const Label& b) {
  std::vector<Label> items;
  if (a.is_tuple()) {
    items = a.items();
  } else {
    items.push_back(a);
  }
  items.push_back(b);
  return Label::tuple(std::move(items));
}

}  // namespace mcnc
