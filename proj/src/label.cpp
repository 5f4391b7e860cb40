#include "lcl/label.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcl {

Label Label::base(const std::string& symbol) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Base;
  n->text = symbol;
  return Label(std::move(n));
}

Label Label::ball(const std::string& text) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Ball;
  n->text = text;
  return Label(std::move(n));
}

Label Label::set(std::vector<Label> elements, const Alphabet* base_order) {
  LabelOrder ord{base_order};
  std::sort(elements.begin(), elements.end(), ord);
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Set;
  std::string t = "{";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) t += ",";
    t += elements[i].text();
  }
  t += "}";
  n->text = std::move(t);
  n->elements = std::move(elements);
  return Label(std::move(n));
}

Alphabet::Alphabet(std::vector<Label> labels) : labels_(std::move(labels)) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!rank_.emplace(labels_[i].text(), static_cast<int>(i)).second)
      throw std::invalid_argument("duplicate label in alphabet: " + labels_[i].text());
  }
}

bool Alphabet::operator==(const Alphabet& o) const {
  if (labels_.size() != o.labels_.size()) return false;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] != o.labels_[i]) return false;
  return true;
}

bool LabelOrder::less(const Label& a, const Label& b) const {
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind());
  switch (a.kind()) {
    case Label::Kind::Base: {
      if (base) {
        int ra = base->rank_of(a), rb = base->rank_of(b);
        if (ra >= 0 && rb >= 0) return ra < rb;
        if (ra >= 0 || rb >= 0) return ra >= 0;  // declared before undeclared
      }
      return a.text() < b.text();
    }
    case Label::Kind::Ball:
      return a.text() < b.text();
    case Label::Kind::Set: {
      if (a.elements().size() != b.elements().size())
        return a.elements().size() < b.elements().size();
      return a.text() < b.text();
    }
  }
  return false;
}

void sort_labels(std::vector<Label>& labels, const LabelOrder& ord) {
  std::sort(labels.begin(), labels.end(), ord);
}

std::string render_labels(const std::vector<Label>& labels, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += sep;
    out += labels[i].text();
  }
  return out;
}

}  // namespace lcl
